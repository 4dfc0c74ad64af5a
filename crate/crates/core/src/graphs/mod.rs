//! Colored directed wheel-free graphs with ordered legs and ordered vertex ports.
//!
//! A [`ColoredGraph`] stores vertices as lists of edge ids in port order and
//! edges as colors. Edge ends are implicit: an edge's source is the unique
//! vertex output port listing it (if any), its target the unique vertex input
//! port listing it (if any). Edges with no source are graph inputs, edges with
//! no target are graph outputs, and the orderings of both are explicit lists.

use std::collections::BTreeSet;
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod canon;
pub mod enumerate;
pub mod iso;
pub mod json;

pub use canon::{canonical_form, canonical_labeling, CanonicalCode, Labeling};
pub use enumerate::{enumerate_graphs, ArityBound};
pub use iso::{find_all_strict_isos, find_iso, find_iso_bounded, GraphIso, IsoFlavor};

/// Default cap on vertex count for exhaustive isomorphism and canonization.
pub const DEFAULT_VERTEX_BOUND: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has {found} vertices, exceeding the bound of {bound}")]
    BoundExceeded { found: usize, bound: usize },
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("duplicate color {0} in color set")]
    DuplicateColor(Color),
    #[error("malformed canonical code")]
    MalformedCode,
    #[error("unknown edge id {0}")]
    UnknownEdge(u64),
    #[error("cannot parse biprofile `{0}`")]
    BadBiprofile(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Color(pub u32);

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Finite ordered set of pairwise distinct colors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Color>", into = "Vec<Color>")]
pub struct ColorSet(Vec<Color>);

impl ColorSet {
    pub fn new(colors: impl IntoIterator<Item = Color>) -> Result<Self, GraphError> {
        let colors: Vec<Color> = colors.into_iter().collect();
        let mut seen = BTreeSet::new();
        for &c in &colors {
            if !seen.insert(c) {
                return Err(GraphError::DuplicateColor(c));
            }
        }
        Ok(ColorSet(colors))
    }

    /// The colors `0..n`.
    pub fn range(n: u32) -> Self {
        ColorSet((0..n).map(Color).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: Color) -> bool {
        self.0.contains(&c)
    }

    pub fn iter(&self) -> impl Iterator<Item = Color> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.0
    }

    /// Every biprofile over this color set with `inputs + outputs <= max_total`,
    /// ordered by total arity, then input count, then lexicographically.
    pub fn biprofiles(&self, max_total: usize) -> Vec<Biprofile> {
        let mut out = Vec::new();
        for total in 0..=max_total {
            for n in 0..=total {
                let m = total - n;
                for ins in self.words(n) {
                    for outs in self.words(m) {
                        out.push(Biprofile::new(ins.clone(), outs));
                    }
                }
            }
        }
        out
    }

    /// All color lists of length `len`, lexicographic.
    pub fn words(&self, len: usize) -> Vec<Vec<Color>> {
        let mut acc: Vec<Vec<Color>> = vec![Vec::new()];
        for _ in 0..len {
            acc = acc
                .into_iter()
                .flat_map(|w| {
                    self.0.iter().map(move |&c| {
                        let mut w = w.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        acc
    }
}

impl TryFrom<Vec<Color>> for ColorSet {
    type Error = GraphError;
    fn try_from(v: Vec<Color>) -> Result<Self, GraphError> {
        ColorSet::new(v)
    }
}

impl From<ColorSet> for Vec<Color> {
    fn from(c: ColorSet) -> Self {
        c.0
    }
}

/// An ordered list of input colors and an ordered list of output colors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Biprofile {
    pub inputs: Vec<Color>,
    pub outputs: Vec<Color>,
}

impl Biprofile {
    pub fn new(inputs: Vec<Color>, outputs: Vec<Color>) -> Self {
        Biprofile { inputs, outputs }
    }

    /// The `(c;c)` profile.
    pub fn unary(c: Color) -> Self {
        Biprofile::new(vec![c], vec![c])
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.inputs.len(), self.outputs.len())
    }

    pub fn total_arity(&self) -> usize {
        self.inputs.len() + self.outputs.len()
    }

    pub fn colors(&self) -> impl Iterator<Item = Color> + '_ {
        self.inputs.iter().chain(self.outputs.iter()).copied()
    }

    pub fn map_colors(&self, f: impl Fn(Color) -> Color) -> Biprofile {
        Biprofile::new(
            self.inputs.iter().map(|&c| f(c)).collect(),
            self.outputs.iter().map(|&c| f(c)).collect(),
        )
    }

    /// Parses `c1,c2;d1` or `(c1,c2;d1)`.
    pub fn parse(s: &str) -> Result<Self, GraphError> {
        let bad = || GraphError::BadBiprofile(s.to_string());
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (ins, outs) = t.split_once(';').ok_or_else(bad)?;
        let list = |part: &str| -> Result<Vec<Color>, GraphError> {
            part.split(',')
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .map(|p| p.parse::<u32>().map(Color).map_err(|_| bad()))
                .collect()
        };
        Ok(Biprofile::new(list(ins)?, list(outs)?))
    }
}

impl fmt::Display for Biprofile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Color]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({};{})", join(&self.inputs), join(&self.outputs))
    }
}

/// A vertex, listing the edge attached at each input and output port.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vertex {
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub color: Color,
}

/// Where an edge end is attached: a vertex and a port index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub vertex: usize,
    pub port: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EdgeEnds {
    pub source: Option<Port>,
    pub target: Option<Port>,
}

impl EdgeEnds {
    pub fn is_internal(&self) -> bool {
        self.source.is_some() && self.target.is_some()
    }

    pub fn is_isolated(&self) -> bool {
        self.source.is_none() && self.target.is_none()
    }
}

/// Pasting scheme: the class of graphs a generalized prop composes along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// All wheel-free graphs (props).
    Prop,
    /// Connected wheel-free graphs (properads).
    Properad,
    /// Simply connected wheel-free graphs (dioperads).
    Dioperad,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Prop, Scheme::Properad, Scheme::Dioperad];

    pub fn contains(self, g: &ColoredGraph) -> bool {
        if !g.is_valid() {
            return false;
        }
        match self {
            Scheme::Prop => true,
            Scheme::Properad => g.is_connected(),
            Scheme::Dioperad => g.is_simply_connected(),
        }
    }

    /// `self` is contained in `other` as a class of graphs.
    pub fn is_subscheme_of(self, other: Scheme) -> bool {
        self >= other
    }

    pub fn parse(s: &str) -> Option<Scheme> {
        match s.to_ascii_lowercase().as_str() {
            "prop" | "gr" => Some(Scheme::Prop),
            "properad" | "gr_c" | "c" => Some(Scheme::Properad),
            "dioperad" | "gr_di" | "di" => Some(Scheme::Dioperad),
            _ => None,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Prop => "prop",
            Scheme::Properad => "properad",
            Scheme::Dioperad => "dioperad",
        })
    }
}

/// One violated [`ColoredGraph`] invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EdgeOutOfRange { edge: usize },
    SourceReused { edge: usize },
    TargetReused { edge: usize },
    InputOrdering { detail: String },
    OutputOrdering { detail: String },
    WheelPresent { vertices: Vec<usize> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ColoredGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// Graph inputs in order: the edges with no source port.
    pub inputs: Vec<usize>,
    /// Graph outputs in order: the edges with no target port.
    pub outputs: Vec<usize>,
}

impl ColoredGraph {
    /// The standard corolla: one vertex, inputs `0..n`, outputs `n..n+m`.
    pub fn corolla(bp: &Biprofile) -> Self {
        let n = bp.inputs.len();
        let edges: Vec<Edge> = bp.colors().map(|color| Edge { color }).collect();
        let inputs: Vec<usize> = (0..n).collect();
        let outputs: Vec<usize> = (n..edges.len()).collect();
        ColoredGraph {
            vertices: vec![Vertex { inputs: inputs.clone(), outputs: outputs.clone() }],
            edges,
            inputs,
            outputs,
        }
    }

    /// A single edge and no vertices; the unit for `(c;c)` substitution.
    pub fn edge(color: Color) -> Self {
        ColoredGraph { vertices: vec![], edges: vec![Edge { color }], inputs: vec![0], outputs: vec![0] }
    }

    pub fn empty() -> Self {
        ColoredGraph::default()
    }

    /// Disjoint union; inputs and outputs of `self` come first.
    pub fn disjoint_union(&self, other: &ColoredGraph) -> ColoredGraph {
        let shift = self.edges.len();
        let mut g = self.clone();
        g.edges.extend(other.edges.iter().copied());
        g.vertices.extend(other.vertices.iter().map(|v| Vertex {
            inputs: v.inputs.iter().map(|e| e + shift).collect(),
            outputs: v.outputs.iter().map(|e| e + shift).collect(),
        }));
        g.inputs.extend(other.inputs.iter().map(|e| e + shift));
        g.outputs.extend(other.outputs.iter().map(|e| e + shift));
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn biprofile(&self) -> Biprofile {
        Biprofile::new(
            self.inputs.iter().map(|&e| self.edges[e].color).collect(),
            self.outputs.iter().map(|&e| self.edges[e].color).collect(),
        )
    }

    pub fn vertex_profile(&self, v: usize) -> Biprofile {
        let vx = &self.vertices[v];
        Biprofile::new(
            vx.inputs.iter().map(|&e| self.edges[e].color).collect(),
            vx.outputs.iter().map(|&e| self.edges[e].color).collect(),
        )
    }

    /// Edge ends, assuming port edge ids are in range. Later attachments win
    /// when an end is reused; `validate` reports that case.
    pub fn edge_ends(&self) -> Vec<EdgeEnds> {
        let mut ends = vec![EdgeEnds::default(); self.edges.len()];
        for (v, vx) in self.vertices.iter().enumerate() {
            for (port, &e) in vx.inputs.iter().enumerate() {
                if let Some(end) = ends.get_mut(e) {
                    end.target = Some(Port { vertex: v, port });
                }
            }
            for (port, &e) in vx.outputs.iter().enumerate() {
                if let Some(end) = ends.get_mut(e) {
                    end.source = Some(Port { vertex: v, port });
                }
            }
        }
        ends
    }

    pub fn internal_edge_count(&self) -> usize {
        self.edge_ends().iter().filter(|e| e.is_internal()).count()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let ne = self.edges.len();
        let mut sources = vec![0usize; ne];
        let mut targets = vec![0usize; ne];
        let mut out_of_range = BTreeSet::new();
        for vx in &self.vertices {
            for &e in &vx.inputs {
                match targets.get_mut(e) {
                    Some(t) => *t += 1,
                    None => {
                        out_of_range.insert(e);
                    }
                }
            }
            for &e in &vx.outputs {
                match sources.get_mut(e) {
                    Some(s) => *s += 1,
                    None => {
                        out_of_range.insert(e);
                    }
                }
            }
        }
        for &e in self.inputs.iter().chain(self.outputs.iter()) {
            if e >= ne {
                out_of_range.insert(e);
            }
        }
        violations.extend(out_of_range.into_iter().map(|edge| Violation::EdgeOutOfRange { edge }));
        for e in 0..ne {
            if sources[e] > 1 {
                violations.push(Violation::SourceReused { edge: e });
            }
            if targets[e] > 1 {
                violations.push(Violation::TargetReused { edge: e });
            }
        }
        let expected_in: BTreeSet<usize> = (0..ne).filter(|&e| sources[e] == 0).collect();
        let expected_out: BTreeSet<usize> = (0..ne).filter(|&e| targets[e] == 0).collect();
        if let Some(detail) = ordering_problem(&self.inputs, &expected_in, "source") {
            violations.push(Violation::InputOrdering { detail });
        }
        if let Some(detail) = ordering_problem(&self.outputs, &expected_out, "target") {
            violations.push(Violation::OutputOrdering { detail });
        }
        if violations.iter().all(|v| !matches!(v, Violation::EdgeOutOfRange { .. })) {
            if let Some(cycle) = self.find_wheel() {
                violations.push(Violation::WheelPresent { vertices: cycle });
            }
        }
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Vertices left over after repeatedly removing vertices with no incoming
    /// internal edge; nonempty exactly when a directed cycle exists.
    fn find_wheel(&self) -> Option<Vec<usize>> {
        let nv = self.vertices.len();
        let ends = self.edge_ends();
        let mut indeg = vec![0usize; nv];
        let mut succ = vec![Vec::new(); nv];
        for end in &ends {
            if let (Some(s), Some(t)) = (end.source, end.target) {
                indeg[t.vertex] += 1;
                succ[s.vertex].push(t.vertex);
            }
        }
        let mut stack: Vec<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
        let mut removed = vec![false; nv];
        while let Some(v) = stack.pop() {
            removed[v] = true;
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        let rest: Vec<usize> = (0..nv).filter(|&v| !removed[v]).collect();
        (!rest.is_empty()).then_some(rest)
    }

    /// Vertices in a topological order of the internal edges.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let nv = self.vertices.len();
        let mut indeg = vec![0usize; nv];
        let mut succ = vec![Vec::new(); nv];
        for end in self.edge_ends() {
            if let (Some(s), Some(t)) = (end.source, end.target) {
                indeg[t.vertex] += 1;
                succ[s.vertex].push(t.vertex);
            }
        }
        let mut ready: BTreeSet<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(nv);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        (order.len() == nv).then_some(order)
    }

    /// Connected components of the incidence structure (vertices and edges).
    /// Returns the component index of every vertex and every edge.
    pub fn components(&self) -> (usize, Vec<usize>, Vec<usize>) {
        let nv = self.vertices.len();
        let ne = self.edges.len();
        let mut uf = UnionFind::<usize>::new(nv + ne);
        for (v, vx) in self.vertices.iter().enumerate() {
            for &e in vx.inputs.iter().chain(vx.outputs.iter()) {
                if e < ne {
                    uf.union(v, nv + e);
                }
            }
        }
        let labels = uf.into_labeling();
        let mut ids = std::collections::BTreeMap::new();
        let mut comp = |x: usize| {
            let next = ids.len();
            *ids.entry(labels[x]).or_insert(next)
        };
        let vcomp: Vec<usize> = (0..nv).map(&mut comp).collect();
        let ecomp: Vec<usize> = (0..ne).map(|e| comp(nv + e)).collect();
        (ids.len(), vcomp, ecomp)
    }

    pub fn component_count(&self) -> usize {
        self.components().0
    }

    /// Connected and nonempty. Isolated edges count as components.
    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn is_simply_connected(&self) -> bool {
        self.is_connected() && self.betti().1 == 0
    }

    /// Ranks of reduced `H_0` and of `H_1` of the underlying topological graph.
    ///
    /// Legs are half-open intervals and isolated edges closed intervals, so
    /// only vertices and internal edges contribute to the cycle rank.
    pub fn betti(&self) -> (usize, usize) {
        let (comps, vcomp, _) = self.components();
        let with_vertex: BTreeSet<usize> = vcomp.iter().copied().collect();
        let internal = self.internal_edge_count();
        let b0 = comps.saturating_sub(1);
        let b1 = internal + with_vertex.len() - self.vertices.len();
        (b0, b1)
    }

    /// Renumbers vertices and edges: new vertex `i` is old `vertex_order[i]`,
    /// new edge `j` is old `edge_order[j]`.
    pub fn relabel(&self, vertex_order: &[usize], edge_order: &[usize]) -> ColoredGraph {
        let mut new_id = vec![0usize; self.edges.len()];
        for (new, &old) in edge_order.iter().enumerate() {
            new_id[old] = new;
        }
        ColoredGraph {
            vertices: vertex_order
                .iter()
                .map(|&v| Vertex {
                    inputs: self.vertices[v].inputs.iter().map(|&e| new_id[e]).collect(),
                    outputs: self.vertices[v].outputs.iter().map(|&e| new_id[e]).collect(),
                })
                .collect(),
            edges: edge_order.iter().map(|&e| self.edges[e]).collect(),
            inputs: self.inputs.iter().map(|&e| new_id[e]).collect(),
            outputs: self.outputs.iter().map(|&e| new_id[e]).collect(),
        }
    }

    /// Colors appearing on edges, sorted.
    pub fn colors_used(&self) -> Vec<Color> {
        let set: BTreeSet<Color> = self.edges.iter().map(|e| e.color).collect();
        set.into_iter().collect()
    }
}

fn ordering_problem(list: &[usize], expected: &BTreeSet<usize>, end: &str) -> Option<String> {
    let listed: BTreeSet<usize> = list.iter().copied().collect();
    if listed.len() != list.len() {
        return Some("edge listed more than once".into());
    }
    if &listed != expected {
        let missing: Vec<_> = expected.difference(&listed).collect();
        let extra: Vec<_> = listed.difference(expected).collect();
        return Some(format!(
            "dangling-{end} edges not listed: {missing:?}; listed edges that are attached: {extra:?}"
        ));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(i: u32) -> Color {
        Color(i)
    }

    #[test]
    fn corolla_follows_the_standard_layout() {
        let g = ColoredGraph::corolla(&Biprofile::new(vec![c(0)], vec![c(1)]));
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.inputs, vec![0]);
        assert_eq!(g.outputs, vec![1]);
        assert_eq!(g.edges[0].color, c(0));
        assert_eq!(g.edges[1].color, c(1));
        assert!(g.validate().is_valid());
    }

    #[test]
    fn empty_profile_corolla() {
        let g = ColoredGraph::corolla(&Biprofile::new(vec![], vec![]));
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        assert!(g.inputs.is_empty() && g.outputs.is_empty());
        assert_eq!(g.betti(), (0, 0));
    }

    #[test]
    fn one_vertex_graphs_are_contractible() {
        let g = ColoredGraph::corolla(&Biprofile::new(vec![c(0), c(0)], vec![c(0)]));
        assert_eq!(g.betti(), (0, 0));
        assert!(g.is_simply_connected());
    }

    #[test]
    fn edge_graph_is_contractible() {
        let g = ColoredGraph::edge(c(3));
        assert_eq!(g.betti(), (0, 0));
        assert!(g.is_connected());
        assert!(g.validate().is_valid());
    }

    #[test]
    fn two_cycle_is_reported() {
        let g = ColoredGraph {
            vertices: vec![
                Vertex { inputs: vec![1], outputs: vec![0] },
                Vertex { inputs: vec![0], outputs: vec![1] },
            ],
            edges: vec![Edge { color: c(0) }; 2],
            inputs: vec![],
            outputs: vec![],
        };
        let report = g.validate();
        assert!(report.violations.iter().any(|v| matches!(v, Violation::WheelPresent { .. })));
    }

    #[test]
    fn missing_input_ordering_is_reported() {
        let mut g = ColoredGraph::corolla(&Biprofile::new(vec![c(0), c(0)], vec![c(0)]));
        g.inputs.pop();
        let report = g.validate();
        assert!(report.violations.iter().any(|v| matches!(v, Violation::InputOrdering { .. })));
    }

    #[test]
    fn empty_graph_is_not_connected() {
        let g = ColoredGraph::empty();
        assert!(g.validate().is_valid());
        assert!(!g.is_connected());
        assert_eq!(g.betti(), (0, 0));
    }

    #[test]
    fn parallel_edges_give_a_cycle() {
        // v0 --e1,e2--> v1, one leg on each side
        let g = ColoredGraph {
            vertices: vec![
                Vertex { inputs: vec![0], outputs: vec![1, 2] },
                Vertex { inputs: vec![1, 2], outputs: vec![3] },
            ],
            edges: vec![Edge { color: c(0) }; 4],
            inputs: vec![0],
            outputs: vec![3],
        };
        assert!(g.is_valid());
        assert!(g.is_connected());
        assert!(!g.is_simply_connected());
        assert_eq!(g.betti(), (0, 1));
    }

    #[test]
    fn disjoint_corollas() {
        let k = ColoredGraph::corolla(&Biprofile::unary(c(0)));
        let mut g = k.clone();
        for _ in 1..4 {
            g = g.disjoint_union(&k);
        }
        assert_eq!(g.betti(), (3, 0));
        assert!(!g.is_connected());
        assert!(g.is_valid());
    }

    #[test]
    fn biprofile_parse_roundtrip() {
        let bp = Biprofile::parse("(0,1;2)").unwrap();
        assert_eq!(bp, Biprofile::new(vec![c(0), c(1)], vec![c(2)]));
        assert_eq!(Biprofile::parse(&bp.to_string()).unwrap(), bp);
        assert_eq!(Biprofile::parse(";").unwrap(), Biprofile::new(vec![], vec![]));
    }

    #[test]
    fn biprofile_listing_counts() {
        // 2 colors, total arity <= 2: 1 + 2*2 + (4+4+4)
        assert_eq!(ColorSet::range(2).biprofiles(2).len(), 1 + 4 + 12);
    }
}
