//! The four flags of a morphism and the two-out-of-three check.
//!
//! `W1`: every entry map is a weak equivalence. `W2`: the functor on
//! component categories is an equivalence. `F1`: every entry map is a Kan
//! fibration. `F2`: that functor is an isofibration.

use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use super::rlp::{entrywise_weq, LiftBounds};
use super::{Flag, LiftingError};
use crate::graphs::{Biprofile, Color};
use crate::properads::{
    induced_functor, is_cat_equivalence, is_isofibration, pi0_category, postcompose, precompose, FiniteFunctor, GrProp,
    PropMorphism,
};
use crate::ssets::{is_kan_fibration, weak_equivalence_verdict, CellId, LiftVerdict, SSetMap, Simplex, Verdict};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub flag: Flag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    fn yes() -> Self {
        Check { flag: Flag::Yes, witness: None }
    }

    fn with(flag: Flag, witness: Value) -> Self {
        Check { flag, witness: Some(witness) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub struct Classification {
    pub w1: Check,
    pub w2: Check,
    pub f1: Check,
    pub f2: Check,
}

impl Classification {
    pub fn weak_equivalence(&self) -> Flag {
        self.w1.flag.and(self.w2.flag)
    }

    pub fn fibration(&self) -> Flag {
        self.f1.flag.and(self.f2.flag)
    }

    pub fn has_no(&self) -> bool {
        [&self.w1, &self.w2, &self.f1, &self.f2].iter().any(|c| c.flag.is_no())
    }

    pub fn all_yes(&self) -> bool {
        [&self.w1, &self.w2, &self.f1, &self.f2].iter().all(|c| c.flag.is_yes())
    }
}

pub fn classify_morphism(f: &PropMorphism, bounds: LiftBounds) -> Result<Classification, LiftingError> {
    let profiles = f.dom().biprofiles();
    let mut w1 = Check::yes();
    for bp in &profiles {
        match weak_equivalence_verdict(&*f.entry_map(bp)?) {
            Verdict::Yes(_) => {}
            Verdict::No(reason) => {
                w1 = Check::with(Flag::No, json!({ "biprofile": bp.to_string(), "reason": reason }));
                break;
            }
            Verdict::Unknown => {
                if w1.flag.is_yes() {
                    w1 = Check::with(Flag::Unknown, json!({ "biprofile": bp.to_string() }));
                }
            }
        }
    }
    let mut f1 = Check::yes();
    for bp in &profiles {
        match is_kan_fibration(&*f.entry_map(bp)?, bounds.p_max) {
            LiftVerdict::Yes { .. } => {}
            LiftVerdict::No { witness } => {
                f1 = Check::with(Flag::No, json!({ "biprofile": bp.to_string(), "horn": witness }));
                break;
            }
            LiftVerdict::BoundExhausted { reached } => {
                if f1.flag.is_yes() {
                    f1 = Check::with(Flag::Unknown, json!({ "biprofile": bp.to_string(), "reached": reached }));
                }
            }
        }
    }
    let (w2, f2) = match induced_functor(f) {
        Ok(functor) => (
            match is_cat_equivalence(&functor) {
                Ok(()) => Check::yes(),
                Err(e) => Check::with(Flag::No, json!(e)),
            },
            match is_isofibration(&functor) {
                Ok(()) => Check::yes(),
                Err(e) => Check::with(Flag::No, json!(e)),
            },
        ),
        Err(e) => {
            let w = json!({ "error": e.to_string() });
            (Check::with(Flag::Unknown, w.clone()), Check::with(Flag::Unknown, w))
        }
    };
    Ok(Classification { w1, w2, f1, f2 })
}

/// One entry `b` of the middle prop, moved by composing with isomorphisms
/// onto the image `g(a)` of an entry of the first prop:
///
/// ```text
///   Q(b)    --f-->  R(f b)
///    | φ              | ψ
///   Q(g a)  --f-->  R(f g a)
/// ```
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonSquare {
    pub middle: Biprofile,
    pub first: Biprofile,
    pub commutes: bool,
    /// Weak-equivalence verdicts of `φ`, `ψ`, `g_a` and `(f g)_a`.
    pub sides: [Flag; 4],
    /// What the square forces on `f_b`.
    pub derived: Flag,
    pub actual: Flag,
}

impl ComparisonSquare {
    pub fn contradicts(&self) -> bool {
        self.derived.is_yes() && self.actual.is_no()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoOfThreeReport {
    pub first: Classification,
    pub composite: Classification,
    pub second: Classification,
    /// The first map and the composite satisfy the hypothesis.
    pub premise: Flag,
    /// The second map satisfies the conclusion.
    pub conclusion: Flag,
    pub squares: Vec<ComparisonSquare>,
}

impl TwoOfThreeReport {
    pub fn inconclusive(&self) -> bool {
        self.premise == Flag::Unknown || self.premise.is_yes() && self.conclusion == Flag::Unknown
    }

    pub fn holds(&self) -> bool {
        !(self.premise.is_yes() && self.conclusion.is_no()) && !self.squares.iter().any(ComparisonSquare::contradicts)
    }
}

fn composable(g: &PropMorphism, f: &PropMorphism) -> Result<PropMorphism, LiftingError> {
    if !Arc::ptr_eq(g.cod_arc(), f.dom_arc()) && g.cod().name() != f.dom().name() {
        return Err(LiftingError::NotComposable(format!("{} then {}", g.name(), f.name())));
    }
    Ok(g.then(f)?)
}

/// With `g` and `f ∘ g` weak equivalences, `f` must be one. Entries of the
/// middle prop are compared with entries in the image of `g` through
/// explicit comparison squares.
pub fn two_of_three_check(g: &PropMorphism, f: &PropMorphism, bounds: LiftBounds) -> Result<TwoOfThreeReport, LiftingError> {
    let fg = composable(g, f)?;
    let first = classify_morphism(g, bounds)?;
    let composite = classify_morphism(&fg, bounds)?;
    let second = classify_morphism(f, bounds)?;
    let premise = first.weak_equivalence().and(composite.weak_equivalence());
    let conclusion = second.weak_equivalence();
    let squares = match induced_functor(g) {
        Ok(functor) => comparison_squares(g, f, &fg, &functor)?,
        Err(_) => Vec::new(),
    };
    Ok(TwoOfThreeReport { first, composite, second, premise, conclusion, squares })
}

/// The same statement with entrywise weak equivalence alone.
pub fn local_only_two_of_three(g: &PropMorphism, f: &PropMorphism) -> Result<TwoOfThreeReport, LiftingError> {
    let fg = composable(g, f)?;
    let bounds = LiftBounds::default();
    let first = classify_morphism(g, bounds)?;
    let composite = classify_morphism(&fg, bounds)?;
    let second = classify_morphism(f, bounds)?;
    let premise = entrywise_weq(g)?.and(entrywise_weq(&fg)?);
    let conclusion = entrywise_weq(f)?;
    Ok(TwoOfThreeReport { first, composite, second, premise, conclusion, squares: Vec::new() })
}

/// An isomorphism `g(a) -> y` in the middle prop's component category for
/// every color `y`, as vertices of the unary entries in both directions.
struct Transport {
    source: Color,
    forward: Simplex,
    backward: Simplex,
}

fn transports(q: &GrProp, functor: &FiniteFunctor, first_colors: &[Color]) -> Result<Vec<Option<Transport>>, LiftingError> {
    let cat = pi0_category(q)?;
    let cs: Vec<Color> = q.colors().iter().collect();
    let rep = |a: usize, b: usize, component: usize| -> Result<Simplex, LiftingError> {
        let e = q.entry(&Biprofile::new(vec![cs[a]], vec![cs[b]]))?;
        let v = e.pi0().vertex_class.iter().position(|&k| k == component).expect("components have vertices");
        Ok(Simplex::nondegenerate(CellId { dim: 0, index: v }))
    };
    let mut out = Vec::with_capacity(cs.len());
    for y in 0..cs.len() {
        let mut found = None;
        'search: for (a, &image) in functor.objects.iter().enumerate() {
            for h in cat.hom(image, y) {
                if let Some(inv) = cat.inverse(h) {
                    found = Some(Transport {
                        source: first_colors[a],
                        forward: rep(image, y, h.index)?,
                        backward: rep(y, image, inv.index)?,
                    });
                    break 'search;
                }
            }
        }
        out.push(found);
    }
    Ok(out)
}

/// Moves an entry of `p` along unary elements: `ins[i]` (in `(x_i; b_i)`)
/// is plugged into input `i` and output `j` is fed into `outs[j]`.
fn conjugate(
    p: &GrProp,
    bp: &Biprofile,
    ins: &[(Biprofile, Simplex)],
    outs: &[(Biprofile, Simplex)],
) -> Result<(SSetMap, Biprofile), LiftingError> {
    let mut current = bp.clone();
    let mut map = SSetMap::identity(p.entry(bp)?);
    for (i, (profile, a)) in ins.iter().enumerate() {
        let step = precompose(p, &current, i, profile, a)?;
        current.inputs[i] = profile.inputs[0];
        map = map.then(&step);
    }
    for (j, (profile, a)) in outs.iter().enumerate() {
        let step = postcompose(p, &current, j, profile, a)?;
        current.outputs[j] = profile.outputs[0];
        map = map.then(&step);
    }
    Ok((map, current))
}

fn weq_flag(m: &SSetMap) -> Flag {
    match weak_equivalence_verdict(m) {
        Verdict::Yes(_) => Flag::Yes,
        Verdict::No(_) => Flag::No,
        Verdict::Unknown => Flag::Unknown,
    }
}

fn comparison_squares(
    g: &PropMorphism,
    f: &PropMorphism,
    fg: &PropMorphism,
    functor: &FiniteFunctor,
) -> Result<Vec<ComparisonSquare>, LiftingError> {
    let q = f.dom();
    let r = f.cod();
    let first_colors: Vec<Color> = g.dom().colors().iter().collect();
    let qcs: Vec<Color> = q.colors().iter().collect();
    let along = transports(q, functor, &first_colors)?;
    let index = |c: Color| qcs.iter().position(|&d| d == c).expect("color of the middle prop");
    let mut out = Vec::new();
    'profiles: for b in q.biprofiles() {
        let mut q_ins = Vec::new();
        let mut r_ins = Vec::new();
        let mut first = b.clone();
        for (i, &y) in b.inputs.iter().enumerate() {
            let Some(t) = &along[index(y)] else { continue 'profiles };
            let profile = Biprofile::new(vec![g.map_color(t.source)], vec![y]);
            r_ins.push((f.map_biprofile(&profile), f.entry_map(&profile)?.apply(&t.forward)));
            q_ins.push((profile, t.forward.clone()));
            first.inputs[i] = t.source;
        }
        let mut q_outs = Vec::new();
        let mut r_outs = Vec::new();
        for (j, &y) in b.outputs.iter().enumerate() {
            let Some(t) = &along[index(y)] else { continue 'profiles };
            let profile = Biprofile::new(vec![y], vec![g.map_color(t.source)]);
            r_outs.push((f.map_biprofile(&profile), f.entry_map(&profile)?.apply(&t.backward)));
            q_outs.push((profile, t.backward.clone()));
            first.outputs[j] = t.source;
        }
        let (phi, moved) = conjugate(q, &b, &q_ins, &q_outs)?;
        let (psi, r_moved) = conjugate(r, &f.map_biprofile(&b), &r_ins, &r_outs)?;
        debug_assert_eq!(moved, g.map_biprofile(&first));
        debug_assert_eq!(r_moved, f.map_biprofile(&moved));
        let f_b = f.entry_map(&b)?;
        let f_moved = f.entry_map(&moved)?;
        let commutes = f_b.then(&psi).images() == phi.then(&f_moved).images();
        let sides = [weq_flag(&phi), weq_flag(&psi), weq_flag(&*g.entry_map(&first)?), weq_flag(&*fg.entry_map(&first)?)];
        let derived = if commutes && sides.iter().all(|s| s.is_yes()) { Flag::Yes } else { Flag::Unknown };
        out.push(ComparisonSquare { middle: b.clone(), first, commutes, sides, derived, actual: weq_flag(&f_b) });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Scheme;
    use crate::properads::EntryMaps;

    #[test]
    fn identity_is_all_yes() {
        let p = Arc::new(GrProp::endomorphism(Scheme::Properad, vec![2]).unwrap());
        let c = classify_morphism(&PropMorphism::identity(p), LiftBounds::default()).unwrap();
        assert!(c.all_yes());
    }

    #[test]
    fn identities_pass_two_out_of_three() {
        let p = Arc::new(GrProp::terminal(Scheme::Properad, 2, false).unwrap());
        let id = PropMorphism::identity(p);
        let r = two_of_three_check(&id, &id, LiftBounds::default()).unwrap();
        assert!(r.premise.is_yes() && r.conclusion.is_yes() && r.holds());
        assert!(!r.squares.is_empty());
        assert!(r.squares.iter().all(|s| s.commutes && s.derived.is_yes()));
    }

    #[test]
    fn collapsing_two_colors_is_an_equivalence() {
        let two = Arc::new(GrProp::terminal(Scheme::Properad, 2, false).unwrap());
        let one = Arc::new(GrProp::terminal(Scheme::Properad, 1, false).unwrap());
        let f = PropMorphism::new("collapse", two, one, vec![Color(0), Color(0)], EntryMaps::Identity).unwrap();
        let c = classify_morphism(&f, LiftBounds::default()).unwrap();
        assert!(c.all_yes(), "{c:?}");
    }
}
