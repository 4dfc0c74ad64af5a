//! The truncated left adjoint along an inclusion of pasting schemes, split
//! into strata by reduced Betti number.

use grprop::free::{beta_decomposition_check, left_adjoint_truncated, unit_map, FreeBounds, SchemePair};
use grprop::graphs::{ArityBound, Biprofile, Color, Scheme};
use grprop::properads::GrProp;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = GrProp::endomorphism(Scheme::Properad, vec![2])?;
    let bp = Biprofile::unary(Color(0));
    let bounds = FreeBounds::new(2, ArityBound::new(1, 1));
    for pair in [SchemePair::DI_TO_C, SchemePair::C_TO_PROP] {
        let fe = left_adjoint_truncated(&p, pair, &bp, bounds)?;
        let check = beta_decomposition_check(&p, pair, &bp, bounds)?;
        let unit = unit_map(&p, pair, &bp, bounds)?;
        println!(
            "{pair}: {} decorated graphs in {} classes, strata {:?}, bottom stratum {} classes for {} simplices, unit injective {}",
            fe.elements.len(),
            fe.class_count(),
            fe.strata(),
            check.stratum_classes,
            check.entry_size,
            unit.injective
        );
    }
    Ok(())
}
