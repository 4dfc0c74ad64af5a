//! Builds small props and checks their composition laws.

use grprop::graphs::Scheme;
use grprop::properads::{check_axioms, pi0_category, AxiomBounds, GrProp};
use grprop::ssets::FinSimplicialSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let props = [
        GrProp::terminal(Scheme::Properad, 2, false)?,
        GrProp::endomorphism(Scheme::Dioperad, vec![2])?,
        GrProp::monoid(Scheme::Properad, FinSimplicialSet::simplex(1), false)?,
    ];
    for p in &props {
        let r = check_axioms(p, &AxiomBounds::default());
        let cat = pi0_category(p)?;
        println!(
            "{} ({}): {} violations over {} checks; component category has {} objects",
            p.name(),
            p.scheme(),
            r.violation_count,
            r.checks.values().sum::<usize>(),
            cat.object_count()
        );
    }
    Ok(())
}
