//! Lifting against `K` after forgetting to unary entries, compared with
//! lifting against the free map on `K`.
//!
//! The forgetful side is the coproduct of all unary entries, with `f`
//! sending the summand `(a;b)` into `(f a; f b)`. The free side builds
//! `𝒢_{1,1}[K]` and enumerates its morphisms into the fixtures.

use std::collections::HashSet;

use serde::Serialize;

use super::boxslash::{boxslash, BoxBounds, BoxVerdict};
use super::{Flag, LiftingError};
use crate::free::{generated_map, homs_from_generated, materialize_gnm, HomBounds};
use crate::graphs::{Biprofile, Color};
use crate::properads::{GrProp, PropMorphism};
use crate::ssets::{CellId, FinSimplicialSet, SSetMap, Simplex};

#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionReport {
    /// The forgetful image of `f` lifts against `K`.
    pub forgetful: Flag,
    /// `f` lifts against the free map on `K`.
    pub free: Flag,
    pub free_squares: usize,
    pub agree: bool,
}

/// Coproduct of the unary entries with the first cell of each summand per
/// dimension.
fn unary_sum(p: &GrProp) -> Result<(FinSimplicialSet, Vec<(Biprofile, Vec<usize>)>), LiftingError> {
    let cs: Vec<Color> = p.colors().iter().collect();
    let mut sum = FinSimplicialSet::empty();
    let mut offsets = Vec::new();
    for &a in &cs {
        for &b in &cs {
            let bp = Biprofile::new(vec![a], vec![b]);
            let e = p.entry(&bp)?;
            let dims = sum.dimension().max(e.dimension()).map_or(1, |d| d + 1);
            offsets.push((bp, (0..dims).map(|d| sum.count(d)).collect()));
            sum = sum.coproduct(&e).0;
        }
    }
    Ok((sum, offsets))
}

/// The map of unary-entry coproducts induced by `f`.
pub fn forgetful_map(f: &PropMorphism) -> Result<SSetMap, LiftingError> {
    let (dom, dom_offsets) = unary_sum(f.dom())?;
    let (cod, cod_offsets) = unary_sum(f.cod())?;
    let mut images: Vec<Vec<Simplex>> = vec![Vec::new(); dom.dimension().map_or(1, |d| d + 1)];
    for (bp, _) in &dom_offsets {
        let target = f.map_biprofile(bp);
        let shift = &cod_offsets.iter().find(|(b, _)| *b == target).expect("unary biprofile").1;
        let m = f.entry_map(bp)?;
        for c in m.dom().cells() {
            let s = m.image(c);
            let cell = CellId { dim: s.cell.dim, index: s.cell.index + shift.get(s.cell.dim).copied().unwrap_or(0) };
            images[c.dim].push(Simplex { cell, degeneracy: s.degeneracy.clone() });
        }
    }
    Ok(SSetMap::new(dom, cod, images)?)
}

/// Identifies a morphism out of a free prop by its color map and all its
/// nonempty entry maps.
fn key(m: &PropMorphism) -> Result<(Vec<Color>, Vec<(Biprofile, Vec<Vec<Simplex>>)>), LiftingError> {
    let mut entries = Vec::new();
    for bp in m.dom().biprofiles() {
        if !m.dom().entry(&bp)?.is_empty() {
            entries.push((bp.clone(), m.entry_map(&bp)?.images().to_vec()));
        }
    }
    Ok((m.color_map().to_vec(), entries))
}

/// Compares the two lifting problems for `f` and a map `k` of connected
/// simplicial sets.
pub fn adjunction_check(
    f: &PropMorphism,
    k: &SSetMap,
    boxes: BoxBounds,
    homs: HomBounds,
) -> Result<AdjunctionReport, LiftingError> {
    let forgetful = match boxslash(k, &forgetful_map(f)?, boxes) {
        BoxVerdict::Yes { .. } => Flag::Yes,
        BoxVerdict::No { .. } => Flag::No,
        BoxVerdict::BoundExhausted { .. } => Flag::Unknown,
    };
    let scheme = f.dom().scheme();
    let dim = k.cod().dimension().unwrap_or(0);
    let source = materialize_gnm(1, 1, k.dom().clone(), scheme, dim, 2)?;
    let target = materialize_gnm(1, 1, k.cod().clone(), scheme, dim, 2)?;
    let free_k = generated_map(&source, &target, k)?;
    let (p, q) = (f.dom_arc(), f.cod_arc());
    let (tops, _) = homs_from_generated(&source, p, homs)?;
    let (bottoms, _) = homs_from_generated(&target, q, homs)?;
    let (lifts, _) = homs_from_generated(&target, p, homs)?;
    let mut solved = HashSet::new();
    for l in &lifts {
        solved.insert((key(&free_k.then(l)?)?, key(&l.then(f)?)?));
    }
    let mut tops_by_image = Vec::new();
    for t in &tops {
        tops_by_image.push((key(t)?, key(&t.then(f)?)?));
    }
    let mut free = Flag::Yes;
    let mut free_squares = 0;
    'outer: for b in &bottoms {
        let kb = key(b)?;
        let along = key(&free_k.then(b)?)?;
        for (kt, image) in &tops_by_image {
            if *image != along {
                continue;
            }
            free_squares += 1;
            if !solved.contains(&(kt.clone(), kb.clone())) {
                free = Flag::No;
                break 'outer;
            }
        }
    }
    Ok(AdjunctionReport { forgetful, free, free_squares, agree: forgetful == free })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::horn_inclusion;
    use crate::graphs::Scheme;
    use crate::properads::EntryMaps;
    use std::sync::Arc;

    #[test]
    fn forgetful_map_of_a_collapse() {
        let two = Arc::new(GrProp::terminal(Scheme::Properad, 2, false).unwrap());
        let one = Arc::new(GrProp::terminal(Scheme::Properad, 1, false).unwrap());
        let f = PropMorphism::new("collapse", two, one, vec![Color(0), Color(0)], EntryMaps::Identity).unwrap();
        let u = forgetful_map(&f).unwrap();
        assert_eq!(u.dom().vertex_count(), 4);
        assert_eq!(u.cod().vertex_count(), 1);
    }

    #[test]
    fn identity_agrees() {
        let p = Arc::new(GrProp::endomorphism(Scheme::Properad, vec![2]).unwrap());
        let r = adjunction_check(&PropMorphism::identity(p), &horn_inclusion(0, 2).unwrap(), BoxBounds::default(), HomBounds::default())
            .unwrap();
        assert!(r.agree && r.free.is_yes() && r.free_squares > 0);
    }
}
