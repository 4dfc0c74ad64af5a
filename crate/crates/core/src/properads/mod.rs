//! Generalized props enriched in finite simplicial sets.
//!
//! A [`GrProp`] has a color set, one entry per biprofile (up to an arity
//! bound) and a composition `γ_G` for every graph `G` of its scheme. The
//! composition is supplied by a [`Composer`]; whether it satisfies the unit,
//! associativity and equivariance laws is checked afterwards with
//! [`check_axioms`].

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{Biprofile, Color, ColorSet, ColoredGraph, GraphError, Scheme};
use crate::ssets::{CellId, FinSimplicialSet, SSetError, Simplex};
use crate::substitution::SubstitutionError;

mod axioms;
mod category;
mod composers;
mod morphism;

pub use axioms::{check_axioms, permuted_corolla, with_units, AxiomBounds, AxiomReport, AxiomViolation, Law};
pub use category::{
    induced_functor, is_cat_equivalence, is_isofibration, pi0_category, Arrow, CategoryError, EquivalenceFailure, FiniteCategory,
    FiniteFunctor, IsofibrationFailure,
};
pub use composers::{Endomorphism, Monoid, TableComposer, TableOverride, Terminal};
pub use morphism::{postcompose, precompose, recolor, EntryMapper, EntryMaps, PropMorphism, VertexFn};

/// Default bound on `inputs + outputs` of stored entries.
pub const DEFAULT_ARITY: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PropError {
    #[error("graph is not in the {0} scheme")]
    NotInScheme(Scheme),
    #[error("biprofile {bp} exceeds the arity bound {bound}")]
    ArityBound { bp: Biprofile, bound: usize },
    #[error("entry {bp} would have more than {bound} elements")]
    EntryTooLarge { bp: Biprofile, bound: u64 },
    #[error("color {0:?} is not in the color set")]
    UnknownColor(Color),
    #[error("decoration has {found} labels for {expected} vertices")]
    LabelCount { expected: usize, found: usize },
    #[error("vertex {vertex} is decorated by a simplex outside its entry")]
    BadLabel { vertex: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not well defined: {0}")]
    Inconsistent(String),
    #[error("morphism color map has {found} entries for {expected} colors")]
    ColorMap { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    SSet(#[from] SSetError),
    #[error(transparent)]
    Substitution(#[from] SubstitutionError),
}

/// Supplies entries, units and compositions of a generalized prop.
pub trait Composer: Send + Sync + fmt::Debug {
    fn entry(&self, bp: &Biprofile) -> Result<FinSimplicialSet, PropError>;

    /// The vertex of the `(c;c)` entry acting as identity.
    fn unit(&self, c: Color) -> Result<CellId, PropError>;

    /// `γ_G` on labels of simplicial degree `degree`, one per vertex. Inputs
    /// are already checked against the scheme and the entries.
    fn compose(&self, g: &ColoredGraph, labels: &[Simplex], degree: usize) -> Result<Simplex, PropError>;
}

/// A graph with one simplex per vertex, all of the same degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decoration {
    pub graph: ColoredGraph,
    pub labels: Vec<Simplex>,
    pub degree: usize,
}

impl Decoration {
    pub fn new(graph: ColoredGraph, labels: Vec<Simplex>, degree: usize) -> Self {
        Decoration { graph, labels, degree }
    }

    /// Decoration by vertices of the entries.
    pub fn by_vertices(graph: ColoredGraph, vertices: &[usize]) -> Self {
        let labels = vertices.iter().map(|&i| Simplex::nondegenerate(CellId { dim: 0, index: i })).collect();
        Decoration { graph, labels, degree: 0 }
    }
}

/// The totally degenerate `degree`-simplex on a vertex.
pub fn degenerate_vertex(index: usize, degree: usize) -> Simplex {
    Simplex { cell: CellId { dim: 0, index }, degeneracy: vec![0; degree + 1] }
}

type MemoKey = (ColoredGraph, Vec<Simplex>, usize);

const MEMO_CAP: usize = 1 << 20;

/// A generalized prop. Entries are computed on first use and cached, as are
/// compositions; both caches allow concurrent readers.
pub struct GrProp {
    name: String,
    scheme: Scheme,
    colors: ColorSet,
    arity: usize,
    composer: Arc<dyn Composer>,
    spec: Option<PropSpec>,
    entries: RwLock<HashMap<Biprofile, Arc<FinSimplicialSet>>>,
    memo: RwLock<HashMap<MemoKey, Simplex>>,
}

impl fmt::Debug for GrProp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GrProp")
            .field("name", &self.name)
            .field("scheme", &self.scheme)
            .field("colors", &self.colors.len())
            .field("arity", &self.arity)
            .finish()
    }
}

impl GrProp {
    pub fn new(
        name: impl Into<String>,
        scheme: Scheme,
        colors: ColorSet,
        arity: usize,
        composer: Arc<dyn Composer>,
    ) -> Self {
        GrProp {
            name: name.into(),
            scheme,
            colors,
            arity,
            composer,
            spec: None,
            entries: RwLock::default(),
            memo: RwLock::default(),
        }
    }

    fn with_spec(mut self, spec: PropSpec) -> Self {
        self.spec = Some(spec);
        self
    }

    /// Every entry a point, or empty when `support` is set and the
    /// biprofile has no inputs or no outputs.
    pub fn terminal(scheme: Scheme, colors: u32, support: bool) -> Result<Self, PropError> {
        PropSpec { name: None, arity: DEFAULT_ARITY, shape: PropShape::Terminal { scheme, colors, support } }.build()
    }

    /// Entries `(c_1..c_n; d_1..d_m)` are all functions
    /// `S_{c_1} x .. x S_{c_n} -> S_{d_1} x .. x S_{d_m}`.
    pub fn endomorphism(scheme: Scheme, sizes: Vec<usize>) -> Result<Self, PropError> {
        PropSpec { name: None, arity: DEFAULT_ARITY, shape: PropShape::Endomorphism { scheme, sizes } }.build()
    }

    /// One color; the `(c;c)` entry is a unit point plus `a`, where any two
    /// elements of `a` multiply to the base vertex of `a`.
    pub fn monoid(scheme: Scheme, a: FinSimplicialSet, support: bool) -> Result<Self, PropError> {
        PropSpec { name: None, arity: DEFAULT_ARITY, shape: PropShape::Monoid { scheme, a, support } }.build()
    }

    /// No colors; the only entry is the empty biprofile, which is empty.
    pub fn initial(scheme: Scheme) -> Self {
        GrProp::new("initial", scheme, ColorSet::default(), DEFAULT_ARITY, Arc::new(Terminal::new(0, true)))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn colors(&self) -> &ColorSet {
        &self.colors
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn composer(&self) -> &Arc<dyn Composer> {
        &self.composer
    }

    pub fn spec(&self) -> Option<&PropSpec> {
        self.spec.as_ref()
    }

    /// Every biprofile within the arity bound.
    pub fn biprofiles(&self) -> Vec<Biprofile> {
        self.colors.biprofiles(self.arity)
    }

    fn check_bp(&self, bp: &Biprofile) -> Result<(), PropError> {
        if let Some(c) = bp.colors().find(|&c| !self.colors.contains(c)) {
            return Err(PropError::UnknownColor(c));
        }
        if bp.total_arity() > self.arity {
            return Err(PropError::ArityBound { bp: bp.clone(), bound: self.arity });
        }
        Ok(())
    }

    pub fn entry(&self, bp: &Biprofile) -> Result<Arc<FinSimplicialSet>, PropError> {
        self.check_bp(bp)?;
        if let Some(e) = self.entries.read().unwrap().get(bp) {
            return Ok(e.clone());
        }
        let e = Arc::new(self.composer.entry(bp)?);
        self.entries.write().unwrap().insert(bp.clone(), e.clone());
        Ok(e)
    }

    pub fn unit(&self, c: Color) -> Result<Simplex, PropError> {
        if !self.colors.contains(c) {
            return Err(PropError::UnknownColor(c));
        }
        Ok(Simplex::nondegenerate(self.composer.unit(c)?))
    }

    pub fn check_decoration(&self, d: &Decoration) -> Result<(), PropError> {
        let g = &d.graph;
        if !self.scheme.contains(g) {
            return Err(PropError::NotInScheme(self.scheme));
        }
        self.check_bp(&g.biprofile())?;
        if d.labels.len() != g.vertex_count() {
            return Err(PropError::LabelCount { expected: g.vertex_count(), found: d.labels.len() });
        }
        for (v, x) in d.labels.iter().enumerate() {
            let e = self.entry(&g.vertex_profile(v))?;
            if x.dim() != d.degree || !e.contains(x.cell) || x.cell.dim > d.degree {
                return Err(PropError::BadLabel { vertex: v });
            }
        }
        Ok(())
    }

    /// `γ_G` of a decoration, memoized.
    pub fn gamma(&self, d: &Decoration) -> Result<Simplex, PropError> {
        let key = (d.graph.clone(), d.labels.clone(), d.degree);
        if let Some(x) = self.memo.read().unwrap().get(&key) {
            return Ok(x.clone());
        }
        let x = self.gamma_uncached(d)?;
        let mut memo = self.memo.write().unwrap();
        if memo.len() >= MEMO_CAP {
            memo.clear();
        }
        memo.insert(key, x.clone());
        Ok(x)
    }

    /// `γ_G` straight from the composer.
    pub fn gamma_uncached(&self, d: &Decoration) -> Result<Simplex, PropError> {
        self.check_decoration(d)?;
        self.composer.compose(&d.graph, &d.labels, d.degree)
    }

    /// Composite of two elements of unary entries along `a -> b -> c`:
    /// `first` in `(a;b)`, `second` in `(b;c)`.
    pub fn compose_unary(&self, a: Color, b: Color, c: Color, first: &Simplex, second: &Simplex) -> Result<Simplex, PropError> {
        let g = unary_chain(a, b, c);
        self.gamma(&Decoration::new(g, vec![first.clone(), second.clone()], first.dim()))
    }
}

/// Two `(1;1)` vertices in a row, colored `a -> b -> c`.
pub fn unary_chain(a: Color, b: Color, c: Color) -> ColoredGraph {
    crate::substitution::graft(
        &ColoredGraph::corolla(&Biprofile::new(vec![a], vec![b])),
        &ColoredGraph::corolla(&Biprofile::new(vec![b], vec![c])),
    )
    .expect("colors match")
}

/// Serializable description of a prop built from one of the standard
/// composers.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PropSpec {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default = "default_arity")]
    pub arity: usize,
    #[serde(flatten)]
    pub shape: PropShape,
}

fn default_arity() -> usize {
    DEFAULT_ARITY
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PropShape {
    Terminal {
        scheme: Scheme,
        colors: u32,
        #[serde(default)]
        support: bool,
    },
    Endomorphism {
        scheme: Scheme,
        sizes: Vec<usize>,
    },
    Monoid {
        scheme: Scheme,
        a: FinSimplicialSet,
        #[serde(default)]
        support: bool,
    },
    Initial {
        scheme: Scheme,
    },
    /// A base prop with some compositions replaced, keyed by canonical code
    /// and canonically ordered vertex labels.
    Table {
        base: Box<PropSpec>,
        overrides: Vec<TableOverride>,
    },
}

impl PropSpec {
    pub fn build(&self) -> Result<GrProp, PropError> {
        let (default_name, scheme, colors, composer): (String, Scheme, ColorSet, Arc<dyn Composer>) = match &self.shape {
            PropShape::Terminal { scheme, colors, support } => {
                if *support && *scheme == Scheme::Prop {
                    return Err(PropError::Unsupported("an empty entry at (;) is impossible in a prop".into()));
                }
                let name = format!("terminal({colors}{})", if *support { ", support" } else { "" });
                (name, *scheme, ColorSet::range(*colors), Arc::new(Terminal::new(*colors, *support)))
            }
            PropShape::Endomorphism { scheme, sizes } => (
                format!("end{sizes:?}"),
                *scheme,
                ColorSet::range(sizes.len() as u32),
                Arc::new(Endomorphism::new(sizes.clone())),
            ),
            PropShape::Monoid { scheme, a, support } => {
                if *scheme == Scheme::Prop {
                    return Err(PropError::Unsupported("monoid composition needs connected graphs".into()));
                }
                (
                    format!("monoid({} cells{})", a.total_cells(), if *support { ", support" } else { "" }),
                    *scheme,
                    ColorSet::range(1),
                    Arc::new(Monoid::new(a.clone(), *support)),
                )
            }
            PropShape::Initial { scheme } => {
                ("initial".into(), *scheme, ColorSet::default(), Arc::new(Terminal::new(0, true)))
            }
            PropShape::Table { base, overrides } => {
                let b = base.build()?;
                let name = format!("table({})", b.name());
                let composer = Arc::new(TableComposer::new(b.composer.clone(), overrides.clone()));
                (name, b.scheme, b.colors.clone(), composer)
            }
        };
        let name = self.name.clone().unwrap_or(default_name);
        Ok(GrProp::new(name, scheme, colors, self.arity, composer).with_spec(self.clone()))
    }
}

impl Serialize for GrProp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.spec {
            Some(spec) => spec.serialize(s),
            None => Err(serde::ser::Error::custom(format!("prop {} has no serializable description", self.name))),
        }
    }
}

impl<'de> Deserialize<'de> for GrProp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        PropSpec::deserialize(d)?.build().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Biprofile;

    fn c(i: u32) -> Color {
        Color(i)
    }

    #[test]
    fn corolla_composition_is_the_label() {
        let p = GrProp::endomorphism(Scheme::Prop, vec![2]).unwrap();
        let bp = Biprofile::new(vec![c(0)], vec![c(0)]);
        for x in 0..4 {
            let d = Decoration::by_vertices(ColoredGraph::corolla(&bp), &[x]);
            assert_eq!(p.gamma(&d).unwrap(), Simplex::nondegenerate(CellId { dim: 0, index: x }));
        }
    }

    #[test]
    fn scheme_is_enforced() {
        let p = GrProp::terminal(Scheme::Properad, 1, false).unwrap();
        let bp = Biprofile::new(vec![c(0)], vec![c(0)]);
        let two = ColoredGraph::corolla(&bp).disjoint_union(&ColoredGraph::corolla(&bp));
        let d = Decoration::by_vertices(two, &[0, 0]);
        assert_eq!(p.gamma(&d), Err(PropError::NotInScheme(Scheme::Properad)));
    }

    #[test]
    fn arity_bound_is_enforced() {
        let p = GrProp::terminal(Scheme::Prop, 1, false).unwrap();
        let bp = Biprofile::new(vec![c(0); 3], vec![c(0); 2]);
        assert!(matches!(p.entry(&bp), Err(PropError::ArityBound { .. })));
    }

    #[test]
    fn specs_round_trip() {
        let p = GrProp::endomorphism(Scheme::Properad, vec![2, 1]).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        let q: GrProp = serde_json::from_str(&text).unwrap();
        assert_eq!(q.name(), p.name());
        assert_eq!(q.colors(), p.colors());
    }
}
