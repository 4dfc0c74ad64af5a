//! Right lifting of prop morphisms against generating families, decided
//! entry by entry.
//!
//! A square from `𝒢_{n,m}[S] -> 𝒢_{n,m}[T]` to `f: P -> Q` is a biprofile
//! `bp` of `P` of shape `(n, m)` together with a square from `S -> T` to the
//! entry map `f_bp`, and lifts correspond. The free props are never built.

use serde::{Deserialize, Serialize};

use super::boxslash::{boxslash, BoxBounds, BoxVerdict};
use super::{Flag, LiftingError, Square};
use crate::free::{GeneratorFamily, GeneratorKind};
use crate::graphs::{Biprofile, Color};
use crate::properads::PropMorphism;
use crate::ssets::{is_kan_fibration, is_trivial_fibration, weak_equivalence_verdict, LiftVerdict, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct LiftBounds {
    /// Largest simplex dimension among the generators.
    pub p_max: usize,
    pub max_maps: usize,
}

impl Default for LiftBounds {
    fn default() -> Self {
        LiftBounds { p_max: 2, max_maps: BoxBounds::default().max_maps }
    }
}

impl LiftBounds {
    fn boxes(&self) -> BoxBounds {
        BoxBounds { max_maps: self.max_maps }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RlpFailure {
    pub generator: String,
    pub bp: Option<Biprofile>,
    pub square: Option<Square>,
    /// A color of the codomain missed by the color map.
    pub missed_color: Option<Color>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RlpVerdict {
    pub verdict: Flag,
    pub generators: usize,
    pub squares: usize,
    pub failure: Option<RlpFailure>,
    /// Generator and biprofile of every check that ran out of bounds.
    pub exhausted: Vec<(String, Option<Biprofile>)>,
}

/// Whether `f` has the right lifting property against every generator.
pub fn rlp_generators(f: &PropMorphism, family: &GeneratorFamily, bounds: LiftBounds) -> Result<RlpVerdict, LiftingError> {
    let mut out = RlpVerdict { verdict: Flag::Yes, generators: family.len(), squares: 0, failure: None, exhausted: Vec::new() };
    let profiles = f.dom().biprofiles();
    for g in family.iter() {
        if g.kind == GeneratorKind::C2 {
            let hit: Vec<Color> = f.color_map().to_vec();
            if let Some(c) = f.cod().colors().iter().find(|c| !hit.contains(c)) {
                out.verdict = Flag::No;
                out.failure = Some(RlpFailure { generator: g.to_string(), bp: None, square: None, missed_color: Some(c) });
                return Ok(out);
            }
            continue;
        }
        let i = g.map.as_ref().expect("only the unit inclusion has no map");
        for bp in profiles.iter().filter(|bp| bp.arity() == g.shape) {
            let m = f.entry_map(bp)?;
            match boxslash(i, &m, bounds.boxes()) {
                BoxVerdict::Yes { squares } => out.squares += squares,
                BoxVerdict::No { witness } => {
                    out.verdict = Flag::No;
                    out.failure =
                        Some(RlpFailure { generator: g.to_string(), bp: Some(bp.clone()), square: Some(*witness), missed_color: None });
                    return Ok(out);
                }
                BoxVerdict::BoundExhausted { .. } => {
                    out.verdict = Flag::Unknown;
                    out.exhausted.push((g.to_string(), Some(bp.clone())));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryFibration {
    pub verdict: Flag,
    /// First entry with a verdict other than Yes.
    pub bp: Option<Biprofile>,
}

/// Every entry map is a Kan fibration, or with `trivial` a trivial
/// fibration, against simplices of dimension at most `p_max`.
pub fn entrywise_fibration(f: &PropMorphism, p_max: usize, trivial: bool) -> Result<EntryFibration, LiftingError> {
    let mut out = EntryFibration { verdict: Flag::Yes, bp: None };
    for bp in f.dom().biprofiles() {
        let m = f.entry_map(&bp)?;
        let v = if trivial { is_trivial_fibration(&m, p_max) } else { is_kan_fibration(&m, p_max) };
        let flag = match v {
            LiftVerdict::Yes { .. } => continue,
            LiftVerdict::No { .. } => Flag::No,
            LiftVerdict::BoundExhausted { .. } => Flag::Unknown,
        };
        if out.bp.is_none() || flag == Flag::No && out.verdict != Flag::No {
            out.bp = Some(bp.clone());
        }
        out.verdict = out.verdict.and(flag);
        if flag == Flag::No {
            break;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalLiftingReport {
    /// Lifting against the boundary inclusions.
    pub boundaries: Flag,
    /// Every entry map a weak equivalence.
    pub local: Flag,
    /// Lifting against the horn inclusions.
    pub horns: Flag,
    pub decisive: bool,
    pub contradiction: bool,
}

impl LocalLiftingReport {
    pub fn holds(&self) -> bool {
        !self.contradiction
    }
}

/// Compares lifting against boundaries with being entrywise a weak
/// equivalence and lifting against horns.
pub fn local_lifting_equivalence(f: &PropMorphism, bounds: LiftBounds) -> Result<LocalLiftingReport, LiftingError> {
    let arity = f.dom().arity();
    let boundaries = rlp_generators(f, &GeneratorFamily::boundaries(arity, bounds.p_max)?, bounds)?.verdict;
    let horns = rlp_generators(f, &GeneratorFamily::horns(arity, bounds.p_max)?, bounds)?.verdict;
    let local = entrywise_weq(f)?;
    let rhs = local.and(horns);
    let decisive = boundaries != Flag::Unknown && rhs != Flag::Unknown;
    Ok(LocalLiftingReport {
        boundaries,
        local,
        horns,
        decisive,
        contradiction: decisive && boundaries != rhs,
    })
}

pub(crate) fn entrywise_weq(f: &PropMorphism) -> Result<Flag, LiftingError> {
    let mut flags = Vec::new();
    for bp in f.dom().biprofiles() {
        flags.push(match weak_equivalence_verdict(&*f.entry_map(&bp)?) {
            Verdict::Yes(_) => Flag::Yes,
            Verdict::No(_) => return Ok(Flag::No),
            Verdict::Unknown => Flag::Unknown,
        });
    }
    Ok(Flag::all(flags))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::graphs::Scheme;
    use crate::properads::{EntryMaps, GrProp};
    use crate::ssets::{FinSimplicialSet, SSetMap};

    fn monoid(a: FinSimplicialSet) -> Arc<GrProp> {
        Arc::new(GrProp::monoid(Scheme::Properad, a, false).unwrap())
    }

    #[test]
    fn identities_lift_against_everything() {
        let f = PropMorphism::identity(monoid(FinSimplicialSet::simplex(1)));
        let b = LiftBounds::default();
        assert!(rlp_generators(&f, &GeneratorFamily::horns(2, 2).unwrap(), b).unwrap().verdict.is_yes());
        assert!(rlp_generators(&f, &GeneratorFamily::boundaries(2, 2).unwrap(), b).unwrap().verdict.is_yes());
        assert!(local_lifting_equivalence(&f, b).unwrap().decisive);
    }

    #[test]
    fn a_horn_entry_fails_with_its_biprofile() {
        let horn = FinSimplicialSet::horn(0, 2).unwrap();
        let full = FinSimplicialSet::simplex(2);
        let phi = SSetMap::extend_vertex_map(horn.clone(), full.clone(), &[0, 1, 2]).unwrap();
        let f = PropMorphism::new("horn", monoid(horn), monoid(full), vec![Color(0)], EntryMaps::Monoid(phi)).unwrap();
        let v = rlp_generators(&f, &GeneratorFamily::horns(2, 2).unwrap(), LiftBounds::default()).unwrap();
        assert_eq!(v.verdict, Flag::No);
        assert_eq!(v.failure.unwrap().bp, Some(Biprofile::unary(Color(0))));
        assert_eq!(entrywise_fibration(&f, 2, false).unwrap().verdict, Flag::No);
    }

    #[test]
    fn unit_inclusion_asks_for_surjective_colors() {
        let one = Arc::new(GrProp::terminal(Scheme::Properad, 1, false).unwrap());
        let two = Arc::new(GrProp::terminal(Scheme::Properad, 2, false).unwrap());
        let f = PropMorphism::new("first", one, two, vec![Color(0)], EntryMaps::Identity).unwrap();
        let v = rlp_generators(&f, &GeneratorFamily::category_cofibrations(0).unwrap(), LiftBounds::default()).unwrap();
        assert_eq!(v.failure.unwrap().missed_color, Some(Color(1)));
    }
}
