//! Props freely generated by a simplicial set of operations, and their maps
//! into a fixed prop.

use std::sync::Arc;

use grprop::free::{compare_homs, materialize_gnm, HomBounds};
use grprop::graphs::Scheme;
use grprop::properads::GrProp;
use grprop::ssets::FinSimplicialSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let target = Arc::new(GrProp::endomorphism(Scheme::Properad, vec![2])?);
    for (name, x) in [("empty", FinSimplicialSet::empty()), ("point", FinSimplicialSet::point()), ("two points", FinSimplicialSet::boundary(1))] {
        for (n, m) in [(1, 1), (2, 1)] {
            let g = materialize_gnm(n, m, x.clone(), Scheme::Properad, 1, 2)?;
            let r = compare_homs(&g, &target, HomBounds::default())?;
            println!("({n},{m}) on {name}: {} morphisms, {} generator images, bijective {}", r.homs, r.direct, r.bijective);
        }
    }
    Ok(())
}
