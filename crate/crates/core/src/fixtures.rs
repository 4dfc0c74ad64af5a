//! A corpus of small props and morphisms between them, and a file format
//! for morphisms.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{Biprofile, Color, Scheme};
use crate::properads::{Endomorphism, EntryMaps, GrProp, PropError, PropMorphism, PropSpec, VertexFn};
use crate::ssets::json::SSetMapJson;
use crate::ssets::{FinSimplicialSet, SSetError, SSetMap};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown fixture {0}")]
    Unknown(String),
    #[error("invalid fixture: {0}")]
    Invalid(String),
    #[error(transparent)]
    Prop(#[from] PropError),
    #[error(transparent)]
    SSet(#[from] SSetError),
}

/// How a morphism in a file acts on entries.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EntryMapSpec {
    Identity,
    ToPoint,
    FromEmpty,
    /// Every vertex to one vertex.
    Constant { vertex: usize },
    /// Between monoid props, the map on the summands.
    Monoid { map: SSetMapJson },
    /// Between endomorphism props on the same sets: `h ↦ σ h σ⁻¹`, with one
    /// permutation per color.
    Conjugation { permutations: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub name: String,
    pub dom: PropSpec,
    pub cod: PropSpec,
    /// Image of each color of the domain.
    pub color_map: Vec<u32>,
    pub maps: EntryMapSpec,
}

impl MorphismSpec {
    pub fn build(&self) -> Result<PropMorphism, FixtureError> {
        let dom = Arc::new(self.dom.build()?);
        let cod = Arc::new(self.cod.build()?);
        self.build_between(dom, cod)
    }

    pub fn build_between(&self, dom: Arc<GrProp>, cod: Arc<GrProp>) -> Result<PropMorphism, FixtureError> {
        let cm: Vec<Color> = self.color_map.iter().map(|&c| Color(c)).collect();
        let maps = match &self.maps {
            EntryMapSpec::Identity => EntryMaps::Identity,
            EntryMapSpec::ToPoint => EntryMaps::ToPoint,
            EntryMapSpec::FromEmpty => EntryMaps::FromEmpty,
            EntryMapSpec::Constant { vertex } => {
                let v = *vertex;
                EntryMaps::Vertices(VertexFn(Arc::new(move |_, _| v)))
            }
            EntryMapSpec::Monoid { map } => EntryMaps::Monoid(map.build()?),
            EntryMapSpec::Conjugation { permutations } => conjugation(&self.dom, permutations)?,
        };
        Ok(PropMorphism::new(self.name.clone(), dom, cod, cm, maps)?)
    }
}

fn conjugation(dom: &PropSpec, permutations: &[Vec<usize>]) -> Result<EntryMaps, FixtureError> {
    let crate::properads::PropShape::Endomorphism { sizes, .. } = &dom.shape else {
        return Err(FixtureError::Invalid("conjugation needs an endomorphism prop".into()));
    };
    if permutations.len() != sizes.len()
        || permutations.iter().zip(sizes).any(|(p, &n)| {
            let mut s = p.clone();
            s.sort_unstable();
            s != (0..n).collect::<Vec<_>>()
        })
    {
        return Err(FixtureError::Invalid("one permutation of each set is needed".into()));
    }
    let e = Endomorphism::new(sizes.clone());
    let sizes = sizes.clone();
    let perms = permutations.to_vec();
    let inverse: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            let mut q = vec![0; p.len()];
            for (i, &j) in p.iter().enumerate() {
                q[j] = i;
            }
            q
        })
        .collect();
    Ok(EntryMaps::Vertices(VertexFn(Arc::new(move |bp: &Biprofile, v: usize| {
        let table = e.decode(bp, v).expect("vertex of the entry");
        let ins: Vec<usize> = bp.inputs.iter().map(|c| sizes[c.0 as usize]).collect();
        let outs: Vec<usize> = bp.outputs.iter().map(|c| sizes[c.0 as usize]).collect();
        let moved: Vec<u64> = (0..table.len())
            .map(|t| {
                let tuple = digits(t, &ins);
                let back: Vec<usize> =
                    tuple.iter().zip(&bp.inputs).map(|(&x, c)| inverse[c.0 as usize][x]).collect();
                let value = digits(table[number(&back, &ins)] as usize, &outs);
                let out: Vec<usize> = value.iter().zip(&bp.outputs).map(|(&y, c)| perms[c.0 as usize][y]).collect();
                number(&out, &outs) as u64
            })
            .collect();
        e.encode(bp, &moved).expect("a function table")
    }))))
}

/// Mixed-radix digits, most significant first.
fn digits(mut x: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (d, &r) in out.iter_mut().zip(radices).rev() {
        *d = x % r;
        x /= r;
    }
    out
}

fn number(ds: &[usize], radices: &[usize]) -> usize {
    ds.iter().zip(radices).fold(0, |acc, (&d, &r)| acc * r + d)
}

/// Named props and morphisms sharing their props.
pub struct Corpus {
    pub props: BTreeMap<&'static str, Arc<GrProp>>,
    pub morphisms: Vec<PropMorphism>,
}

impl Corpus {
    pub fn prop(&self, name: &str) -> Arc<GrProp> {
        self.props.get(name).unwrap_or_else(|| panic!("no prop {name}")).clone()
    }

    pub fn morphism(&self, name: &str) -> &PropMorphism {
        self.morphisms.iter().find(|m| m.name() == name).unwrap_or_else(|| panic!("no morphism {name}"))
    }

    /// The shipped corpus: properads on at most two colors.
    pub fn standard() -> Result<Self, FixtureError> {
        let s = Scheme::Properad;
        let horn = |k| FinSimplicialSet::horn(k, 2);
        let mut props: BTreeMap<&'static str, Arc<GrProp>> = BTreeMap::new();
        let mut add = |name: &'static str, p: GrProp| {
            props.insert(name, Arc::new(p.renamed(name)));
        };
        add("T1", GrProp::terminal(s, 1, false)?);
        add("T2", GrProp::terminal(s, 2, false)?);
        add("E2", GrProp::endomorphism(s, vec![2])?);
        add("M_pt", GrProp::monoid(s, FinSimplicialSet::point(), false)?);
        add("M_d1", GrProp::monoid(s, FinSimplicialSet::simplex(1), false)?);
        add("M_d2", GrProp::monoid(s, FinSimplicialSet::simplex(2), false)?);
        add("M_h0", GrProp::monoid(s, horn(0)?, false)?);
        add("M_h1", GrProp::monoid(s, horn(1)?, false)?);
        add("M_h2", GrProp::monoid(s, horn(2)?, false)?);
        add("M_b1", GrProp::monoid(s, FinSimplicialSet::boundary(1), false)?);
        add("M_b2", GrProp::monoid(s, FinSimplicialSet::boundary(2), false)?);
        add("M_pt_s", GrProp::monoid(s, FinSimplicialSet::point(), true)?);
        add("T1_s", GrProp::terminal(s, 1, true)?);
        add("Init", GrProp::initial(s));

        let p = |n: &str| props[n].clone();
        let c = |i: u32| Color(i);
        let mut ms = Vec::new();
        for name in ["T1", "T2", "E2", "M_pt", "M_d1", "M_d2", "M_b1", "M_b2"] {
            ms.push(PropMorphism::identity(p(name)).renamed(format!("id_{name}")));
        }
        let monoid = |name: &str, from: &str, to: &str, vertices: &[usize]| -> Result<PropMorphism, FixtureError> {
            let a = monoid_summand(&props[from]);
            let b = monoid_summand(&props[to]);
            let phi = SSetMap::extend_vertex_map(a, b, vertices)?;
            Ok(PropMorphism::new(name, p(from), p(to), vec![c(0)], EntryMaps::Monoid(phi))?)
        };
        ms.push(monoid("M_h0->M_d2", "M_h0", "M_d2", &[0, 1, 2])?);
        ms.push(monoid("M_h1->M_d2", "M_h1", "M_d2", &[0, 1, 2])?);
        ms.push(monoid("M_h2->M_d2", "M_h2", "M_d2", &[0, 1, 2])?);
        ms.push(monoid("M_d1->M_pt", "M_d1", "M_pt", &[0, 0])?);
        ms.push(monoid("M_d2->M_pt", "M_d2", "M_pt", &[0, 0, 0])?);
        ms.push(monoid("M_b1->M_pt", "M_b1", "M_pt", &[0, 0])?);
        ms.push(monoid("M_b2->M_d2", "M_b2", "M_d2", &[0, 1, 2])?);
        ms.push(monoid("M_pt->M_d1", "M_pt", "M_d1", &[0])?);
        ms.push(monoid("M_b1->M_d1", "M_b1", "M_d1", &[0, 1])?);
        ms.push(PropMorphism::new("M_pt->T1", p("M_pt"), p("T1"), vec![c(0)], EntryMaps::ToPoint)?);
        ms.push(PropMorphism::new("E2->T1", p("E2"), p("T1"), vec![c(0)], EntryMaps::ToPoint)?);
        ms.push(PropMorphism::new("T2->T1", p("T2"), p("T1"), vec![c(0), c(0)], EntryMaps::Identity)?);
        ms.push(PropMorphism::new("T1->T2@0", p("T1"), p("T2"), vec![c(0)], EntryMaps::Identity)?);
        ms.push(PropMorphism::new("T1->T2@1", p("T1"), p("T2"), vec![c(1)], EntryMaps::Identity)?);
        ms.push(PropMorphism::new("T2_swap", p("T2"), p("T2"), vec![c(1), c(0)], EntryMaps::Identity)?);
        let swap = MorphismSpec {
            name: "E2_swap".into(),
            dom: props["E2"].spec().expect("built from a spec").clone(),
            cod: props["E2"].spec().expect("built from a spec").clone(),
            color_map: vec![0],
            maps: EntryMapSpec::Conjugation { permutations: vec![vec![1, 0]] },
        };
        ms.push(swap.build_between(p("E2"), p("E2"))?);
        ms.push(PropMorphism::new("Init->T1_s", p("Init"), p("T1_s"), vec![], EntryMaps::FromEmpty)?);
        ms.push(PropMorphism::new("Init->M_pt_s", p("Init"), p("M_pt_s"), vec![], EntryMaps::FromEmpty)?);
        ms.push(PropMorphism::new(
            "M_pt_s->T1_s",
            p("M_pt_s"),
            p("T1_s"),
            vec![c(0)],
            EntryMaps::Vertices(VertexFn(Arc::new(|_, _| 0))),
        )?);
        let composite = |a: &PropMorphism, b: &PropMorphism| a.then(b);
        let find = |ms: &[PropMorphism], n: &str| ms.iter().find(|m| m.name() == n).expect("listed above").clone();
        ms.push(composite(&find(&ms, "M_h1->M_d2"), &find(&ms, "M_d2->M_pt"))?);
        ms.push(composite(&find(&ms, "M_b1->M_d1"), &find(&ms, "M_d1->M_pt"))?);
        Ok(Corpus { props, morphisms: ms })
    }

    /// `g: ∅ -> P`, `f: P -> Q` with `g` and `f ∘ g` entrywise weak
    /// equivalences and `f` not.
    pub fn counterexample(&self) -> (&PropMorphism, &PropMorphism) {
        (self.morphism("Init->M_pt_s"), self.morphism("M_pt_s->T1_s"))
    }

    /// Composable pairs `(g, f)`.
    pub fn composable_pairs(&self) -> Vec<(&PropMorphism, &PropMorphism)> {
        let pairs = [
            ("id_T1", "id_T1"),
            ("id_T2", "id_T2"),
            ("id_E2", "id_E2"),
            ("id_M_d1", "M_d1->M_pt"),
            ("M_d1->M_pt", "id_M_pt"),
            ("T2->T1", "id_T1"),
            ("T1->T2@0", "T2->T1"),
            ("T1->T2@1", "T2_swap"),
            ("T2_swap", "T2_swap"),
            ("E2_swap", "E2_swap"),
            ("M_pt->M_d1", "M_d1->M_pt"),
            ("M_h0->M_d2", "M_d2->M_pt"),
            ("M_h1->M_d2", "M_d2->M_pt"),
            ("M_h2->M_d2", "M_d2->M_pt"),
            ("M_b1->M_d1", "M_d1->M_pt"),
            ("T2_swap", "T2->T1"),
            ("E2_swap", "E2->T1"),
            ("Init->M_pt_s", "M_pt_s->T1_s"),
        ];
        let mut out: Vec<(&PropMorphism, &PropMorphism)> =
            pairs.iter().map(|(g, f)| (self.morphism(g), self.morphism(f))).collect();
        out.push((self.morphism("id_M_pt"), self.morphism("M_pt->T1")));
        out
    }
}

/// The summand of the unary entry of a monoid prop.
fn monoid_summand(p: &GrProp) -> FinSimplicialSet {
    match p.spec().map(|s| &s.shape) {
        Some(crate::properads::PropShape::Monoid { a, .. }) => a.clone(),
        _ => panic!("{} is not a monoid prop", p.name()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_builds_and_checks() {
        let c = Corpus::standard().unwrap();
        assert!(c.morphisms.len() >= 20);
        for m in &c.morphisms {
            for bp in m.dom().biprofiles() {
                m.entry_map(&bp).unwrap_or_else(|e| panic!("{}: {e}", m.name()));
            }
            assert!(m.preserves_units().unwrap(), "{}", m.name());
        }
    }

    #[test]
    fn conjugation_is_an_involution() {
        let c = Corpus::standard().unwrap();
        let s = c.morphism("E2_swap");
        let twice = s.then(s).unwrap();
        for bp in s.dom().biprofiles() {
            assert!(twice.entry_map(&bp).unwrap().images() == SSetMap::identity(s.dom().entry(&bp).unwrap()).images());
        }
    }

    #[test]
    fn radix_round_trip() {
        for x in 0..24 {
            assert_eq!(number(&digits(x, &[2, 3, 4]), &[2, 3, 4]), x);
        }
    }
}
