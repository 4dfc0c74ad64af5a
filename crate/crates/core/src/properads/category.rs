//! Finite categories, functors between them, and the component category of
//! the unary part of a prop.

use serde::Serialize;
use thiserror::Error;

use super::{GrProp, PropError, PropMorphism};
use crate::graphs::{Biprofile, Color};
use crate::ssets::{CellId, Simplex};

/// The `index`-th morphism `src -> tgt`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
    pub index: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("composition table entry out of range at {0:?} then {1:?}")]
    OutOfRange(Arrow, Arrow),
    #[error("unit law fails at {0:?}")]
    Unit(Arrow),
    #[error("associativity fails at {0:?}, {1:?}, {2:?}")]
    Associativity(Arrow, Arrow, Arrow),
    #[error("functor does not preserve {0}")]
    Functoriality(String),
}

/// A category with finitely many objects and morphisms, given by tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteCategory {
    hom: Vec<Vec<usize>>,
    identity: Vec<usize>,
    /// `table[a][b][c][f * |hom(b,c)| + g]` is the index of `g ∘ f`.
    table: Vec<Vec<Vec<Vec<usize>>>>,
}

impl FiniteCategory {
    /// Builds the tables from `compose(f, g) = g ∘ f` and checks the laws.
    pub fn new(
        hom: Vec<Vec<usize>>,
        identity: Vec<usize>,
        compose: impl Fn(Arrow, Arrow) -> usize,
    ) -> Result<Self, CategoryError> {
        let n = hom.len();
        let mut table = vec![vec![vec![Vec::new(); n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut t = Vec::with_capacity(hom[a][b] * hom[b][c]);
                    for f in 0..hom[a][b] {
                        for g in 0..hom[b][c] {
                            let (f, g) = (Arrow { src: a, tgt: b, index: f }, Arrow { src: b, tgt: c, index: g });
                            let h = compose(f, g);
                            if h >= hom[a][c] {
                                return Err(CategoryError::OutOfRange(f, g));
                            }
                            t.push(h);
                        }
                    }
                    table[a][b][c] = t;
                }
            }
        }
        let cat = FiniteCategory { hom, identity, table };
        cat.check_laws()?;
        Ok(cat)
    }

    /// `n` objects, only identities.
    pub fn discrete(n: usize) -> Self {
        let hom = (0..n).map(|a| (0..n).map(|b| usize::from(a == b)).collect()).collect();
        FiniteCategory::new(hom, vec![0; n], |_, _| 0).expect("discrete category")
    }

    /// `n` objects, exactly one morphism between any two.
    pub fn chaotic(n: usize) -> Self {
        FiniteCategory::new(vec![vec![1; n]; n], vec![0; n], |_, _| 0).expect("chaotic category")
    }

    fn check_laws(&self) -> Result<(), CategoryError> {
        for f in self.arrows() {
            let (ia, ib) = (self.identity(f.src), self.identity(f.tgt));
            if self.compose(ia, f) != f || self.compose(f, ib) != f {
                return Err(CategoryError::Unit(f));
            }
        }
        for f in self.arrows() {
            for g in self.arrows_from(f.tgt) {
                let gf = self.compose(f, g);
                for h in self.arrows_from(g.tgt) {
                    if self.compose(gf, h) != self.compose(f, self.compose(g, h)) {
                        return Err(CategoryError::Associativity(f, g, h));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.hom.len()
    }

    pub fn hom_count(&self, a: usize, b: usize) -> usize {
        self.hom[a][b]
    }

    pub fn hom(&self, a: usize, b: usize) -> impl Iterator<Item = Arrow> {
        (0..self.hom[a][b]).map(move |index| Arrow { src: a, tgt: b, index })
    }

    pub fn arrows_from(&self, a: usize) -> impl Iterator<Item = Arrow> + '_ {
        (0..self.hom.len()).flat_map(move |b| self.hom(a, b))
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        (0..self.hom.len()).flat_map(move |a| self.arrows_from(a))
    }

    pub fn identity(&self, a: usize) -> Arrow {
        Arrow { src: a, tgt: a, index: self.identity[a] }
    }

    /// `g ∘ f`.
    pub fn compose(&self, f: Arrow, g: Arrow) -> Arrow {
        assert_eq!(f.tgt, g.src, "arrows are not composable");
        let index = self.table[f.src][f.tgt][g.tgt][f.index * self.hom[g.src][g.tgt] + g.index];
        Arrow { src: f.src, tgt: g.tgt, index }
    }

    pub fn inverse(&self, f: Arrow) -> Option<Arrow> {
        self.hom(f.tgt, f.src)
            .find(|&g| self.compose(f, g) == self.identity(f.src) && self.compose(g, f) == self.identity(f.tgt))
    }

    pub fn is_iso(&self, f: Arrow) -> bool {
        self.inverse(f).is_some()
    }

    /// Every isomorphism, in arrow order.
    pub fn isos(&self) -> Vec<Arrow> {
        self.arrows().filter(|&f| self.is_iso(f)).collect()
    }
}

/// A functor between finite categories given on objects and arrows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteFunctor {
    pub dom: FiniteCategory,
    pub cod: FiniteCategory,
    pub objects: Vec<usize>,
    /// `arrows[a][b][i]` is the index of the image of `Arrow{a, b, i}`.
    pub arrows: Vec<Vec<Vec<usize>>>,
}

impl FiniteFunctor {
    pub fn new(
        dom: FiniteCategory,
        cod: FiniteCategory,
        objects: Vec<usize>,
        on_arrow: impl Fn(Arrow) -> usize,
    ) -> Result<Self, CategoryError> {
        let n = dom.object_count();
        let arrows = (0..n).map(|a| (0..n).map(|b| dom.hom(a, b).map(&on_arrow).collect()).collect()).collect();
        let f = FiniteFunctor { dom, cod, objects, arrows };
        f.check()?;
        Ok(f)
    }

    pub fn identity(c: FiniteCategory) -> Self {
        let n = c.object_count();
        FiniteFunctor::new(c.clone(), c, (0..n).collect(), |f| f.index).expect("identity functor")
    }

    pub fn apply(&self, f: Arrow) -> Arrow {
        Arrow { src: self.objects[f.src], tgt: self.objects[f.tgt], index: self.arrows[f.src][f.tgt][f.index] }
    }

    fn check(&self) -> Result<(), CategoryError> {
        if self.objects.iter().any(|&o| o >= self.cod.object_count()) {
            return Err(CategoryError::Functoriality("objects".into()));
        }
        for f in self.dom.arrows() {
            let img = self.apply(f);
            if img.index >= self.cod.hom_count(img.src, img.tgt) {
                return Err(CategoryError::Functoriality(format!("the range of {f:?}")));
            }
        }
        for a in 0..self.dom.object_count() {
            if self.apply(self.dom.identity(a)) != self.cod.identity(self.objects[a]) {
                return Err(CategoryError::Functoriality(format!("the identity of {a}")));
            }
        }
        for f in self.dom.arrows() {
            for g in self.dom.arrows_from(f.tgt) {
                if self.apply(self.dom.compose(f, g)) != self.cod.compose(self.apply(f), self.apply(g)) {
                    return Err(CategoryError::Functoriality(format!("the composite of {f:?} and {g:?}")));
                }
            }
        }
        Ok(())
    }
}

/// An isomorphism `F(e) -> b` with no isomorphic lift out of `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsofibrationFailure {
    pub object: usize,
    pub iso: Arrow,
}

/// Every isomorphism out of an image object lifts to an isomorphism.
pub fn is_isofibration(f: &FiniteFunctor) -> Result<(), IsofibrationFailure> {
    for e in 0..f.dom.object_count() {
        for h in f.cod.arrows_from(f.objects[e]).filter(|&h| f.cod.is_iso(h)) {
            let lifted = f.dom.arrows_from(e).any(|g| f.apply(g) == h && f.dom.is_iso(g));
            if !lifted {
                return Err(IsofibrationFailure { object: e, iso: h });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EquivalenceFailure {
    NotFaithful { first: Arrow, second: Arrow },
    NotFull { src: usize, tgt: usize, missed: Arrow },
    NotEssentiallySurjective { object: usize },
}

/// Fully faithful and essentially surjective.
pub fn is_cat_equivalence(f: &FiniteFunctor) -> Result<(), EquivalenceFailure> {
    let n = f.dom.object_count();
    for a in 0..n {
        for b in 0..n {
            let mut seen = vec![None; f.cod.hom_count(f.objects[a], f.objects[b])];
            for g in f.dom.hom(a, b) {
                let i = f.apply(g).index;
                if let Some(first) = seen[i] {
                    return Err(EquivalenceFailure::NotFaithful { first, second: g });
                }
                seen[i] = Some(g);
            }
            if let Some(i) = seen.iter().position(Option::is_none) {
                return Err(EquivalenceFailure::NotFull {
                    src: a,
                    tgt: b,
                    missed: Arrow { src: f.objects[a], tgt: f.objects[b], index: i },
                });
            }
        }
    }
    for y in 0..f.cod.object_count() {
        let reached = (0..n).any(|a| f.cod.hom(f.objects[a], y).any(|h| f.cod.is_iso(h)));
        if !reached {
            return Err(EquivalenceFailure::NotEssentiallySurjective { object: y });
        }
    }
    Ok(())
}

/// Components of the unary entries of `p` and a representative vertex of
/// each component, for every pair of colors.
struct UnaryComponents {
    class: Vec<Vec<Vec<usize>>>,
    reps: Vec<Vec<Vec<usize>>>,
}

fn unary_components(p: &GrProp) -> Result<UnaryComponents, PropError> {
    let cs = p.colors().as_slice();
    let n = cs.len();
    let mut class = vec![vec![Vec::new(); n]; n];
    let mut reps = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let e = p.entry(&Biprofile::new(vec![cs[a]], vec![cs[b]]))?;
            let pi = e.pi0();
            let mut r = vec![usize::MAX; pi.count];
            for (v, &k) in pi.vertex_class.iter().enumerate() {
                if r[k] == usize::MAX {
                    r[k] = v;
                }
            }
            class[a][b] = pi.vertex_class;
            reps[a][b] = r;
        }
    }
    Ok(UnaryComponents { class, reps })
}

fn vertex(i: usize) -> Simplex {
    Simplex::nondegenerate(CellId { dim: 0, index: i })
}

/// The category with the colors of `p` as objects and the components of the
/// unary entries as morphisms. Composites are computed on every pair of
/// vertices, so an ill-defined composition is reported rather than hidden.
pub fn pi0_category(p: &GrProp) -> Result<FiniteCategory, PropError> {
    let cs: Vec<Color> = p.colors().iter().collect();
    let n = cs.len();
    let comps = unary_components(p)?;
    let mut table = std::collections::HashMap::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for (x, &kx) in comps.class[a][b].iter().enumerate() {
                    for (y, &ky) in comps.class[b][c].iter().enumerate() {
                        let z = p.compose_unary(cs[a], cs[b], cs[c], &vertex(x), &vertex(y))?;
                        let kz = comps.class[a][c][z.cell.index];
                        match table.insert((a, b, c, kx, ky), kz) {
                            Some(old) if old != kz => {
                                return Err(PropError::Inconsistent(format!(
                                    "composite of components {kx} and {ky} over colors {a},{b},{c} depends on representatives"
                                )))
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
    }
    let hom = (0..n).map(|a| (0..n).map(|b| comps.reps[a][b].len()).collect()).collect();
    let identity = cs
        .iter()
        .enumerate()
        .map(|(a, &c)| p.unit(c).map(|u| comps.class[a][a][u.cell.index]))
        .collect::<Result<Vec<_>, _>>()?;
    FiniteCategory::new(hom, identity, |f, g| table[&(f.src, f.tgt, g.tgt, f.index, g.index)])
        .map_err(|e| PropError::Inconsistent(e.to_string()))
}

/// The functor induced by a morphism on component categories.
pub fn induced_functor(f: &PropMorphism) -> Result<FiniteFunctor, PropError> {
    let dom = pi0_category(f.dom())?;
    let cod = pi0_category(f.cod())?;
    let dcs: Vec<Color> = f.dom().colors().iter().collect();
    let ccs: Vec<Color> = f.cod().colors().iter().collect();
    let obj: Vec<usize> = dcs
        .iter()
        .map(|&c| ccs.iter().position(|&d| d == f.map_color(c)).expect("color map lands in the codomain"))
        .collect();
    let dcomps = unary_components(f.dom())?;
    let ccomps = unary_components(f.cod())?;
    let mut images = std::collections::HashMap::new();
    for a in 0..dcs.len() {
        for b in 0..dcs.len() {
            let m = f.entry_map(&Biprofile::new(vec![dcs[a]], vec![dcs[b]]))?;
            for (k, &x) in dcomps.reps[a][b].iter().enumerate() {
                let y = m.image(CellId { dim: 0, index: x }).cell.index;
                images.insert((a, b, k), ccomps.class[obj[a]][obj[b]][y]);
            }
        }
    }
    FiniteFunctor::new(dom, cod, obj, |g| images[&(g.src, g.tgt, g.index)])
        .map_err(|e| PropError::Inconsistent(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_into_chaotic() -> FiniteFunctor {
        FiniteFunctor::new(FiniteCategory::discrete(1), FiniteCategory::chaotic(2), vec![0], |_| 0).unwrap()
    }

    #[test]
    fn identity_functor() {
        let f = FiniteFunctor::identity(FiniteCategory::chaotic(3));
        assert!(is_isofibration(&f).is_ok());
        assert!(is_cat_equivalence(&f).is_ok());
    }

    #[test]
    fn point_into_chaotic_groupoid() {
        let f = one_into_chaotic();
        assert!(is_isofibration(&f).is_err());
        assert!(is_cat_equivalence(&f).is_ok());
    }

    #[test]
    fn collapsing_two_objects() {
        let f = FiniteFunctor::new(FiniteCategory::discrete(2), FiniteCategory::discrete(1), vec![0, 0], |_| 0).unwrap();
        assert!(is_isofibration(&f).is_ok());
        assert!(is_cat_equivalence(&f).is_err());
        let g = FiniteFunctor::new(FiniteCategory::discrete(1), FiniteCategory::discrete(2), vec![0], |_| 0).unwrap();
        assert_eq!(is_cat_equivalence(&g), Err(EquivalenceFailure::NotEssentiallySurjective { object: 1 }));
    }

    #[test]
    fn broken_tables_are_rejected() {
        // a two-element monoid where the identity is not neutral
        let r = FiniteCategory::new(vec![vec![2]], vec![0], |_, _| 1);
        assert!(matches!(r, Err(CategoryError::Unit(_))));
    }
}
