//! Graph substitution, grafting and composition of substitution data.
//!
//! Substituting `H_v` into each vertex `v` of `G` glues the `i`-th input leg
//! of `H_v` to the edge at the `i`-th input port of `v` (likewise outputs).
//! The vertices of the result are the pairs `(v, u)` with `u` a vertex of
//! `H_v`, ordered lexicographically; edges are glued with a union-find, so
//! isolated edges inside some `H_v` join edges of `G` end to end.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{
    canon::code_of, enumerate::enumerate_graph_reps, find_iso_bounded, ArityBound, Biprofile, ColorSet, ColoredGraph,
    Edge, GraphError, GraphIso, IsoFlavor, Scheme, Vertex,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubstitutionError {
    #[error("vertex {vertex}: replacement has profile {found}, expected {expected}")]
    ProfileMismatch { vertex: usize, expected: Biprofile, found: Biprofile },
    #[error("assignment covers {found} vertices, target has {expected}")]
    WrongVertexCount { expected: usize, found: usize },
    #[error("graft needs one output on the first graph and one input on the second, found {0} and {1}")]
    NotGraftable(usize, usize),
    #[error("graft joins a {0} output to a {1} input")]
    GraftColorMismatch(crate::graphs::Color, crate::graphs::Color),
    #[error("substituted outer data is not strictly isomorphic to the inner target")]
    MissingIso,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A graph `G` with one replacement graph per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubstitutionData {
    pub target: ColoredGraph,
    pub assignment: Vec<ColoredGraph>,
}

/// Where the pieces of a substituted graph came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionTrace {
    /// For each result vertex, the `(v, u)` pair it comes from.
    pub vertex_origin: Vec<(usize, usize)>,
    /// For each edge of `G`, the result edge it lies on.
    pub outer_edge: Vec<usize>,
    /// For each `v` and each edge of `H_v`, the result edge it lies on.
    pub inner_edge: Vec<Vec<usize>>,
}

impl SubstitutionData {
    pub fn new(target: ColoredGraph, assignment: Vec<ColoredGraph>) -> Result<Self, SubstitutionError> {
        let d = SubstitutionData { target, assignment };
        d.check()?;
        Ok(d)
    }

    /// Standard corollas everywhere; substitutes back to the target itself.
    pub fn identity(target: ColoredGraph) -> Self {
        let assignment = (0..target.vertex_count()).map(|v| ColoredGraph::corolla(&target.vertex_profile(v))).collect();
        SubstitutionData { target, assignment }
    }

    pub fn check(&self) -> Result<(), SubstitutionError> {
        if self.assignment.len() != self.target.vertex_count() {
            return Err(SubstitutionError::WrongVertexCount {
                expected: self.target.vertex_count(),
                found: self.assignment.len(),
            });
        }
        for (v, h) in self.assignment.iter().enumerate() {
            let expected = self.target.vertex_profile(v);
            let found = h.biprofile();
            if expected != found {
                return Err(SubstitutionError::ProfileMismatch { vertex: v, expected, found });
            }
        }
        Ok(())
    }
}

/// `G{H_v}`.
pub fn substitute(d: &SubstitutionData) -> Result<ColoredGraph, SubstitutionError> {
    substitute_traced(d).map(|(g, _)| g)
}

pub fn substitute_traced(d: &SubstitutionData) -> Result<(ColoredGraph, SubstitutionTrace), SubstitutionError> {
    d.check()?;
    let g = &d.target;
    let outer_n = g.edge_count();
    let mut offsets = Vec::with_capacity(d.assignment.len());
    let mut total = outer_n;
    for h in &d.assignment {
        offsets.push(total);
        total += h.edge_count();
    }
    let mut uf = UnionFind::<usize>::new(total);
    for (v, h) in d.assignment.iter().enumerate() {
        let vx = &g.vertices[v];
        for (&outer, &inner) in vx.inputs.iter().zip(&h.inputs).chain(vx.outputs.iter().zip(&h.outputs)) {
            uf.union(outer, offsets[v] + inner);
        }
    }
    // number classes by smallest member
    let mut class_id: BTreeMap<usize, usize> = BTreeMap::new();
    let mut edge_of = vec![0usize; total];
    let mut edges = Vec::new();
    let color_of = |x: usize| -> Edge {
        if x < outer_n {
            g.edges[x]
        } else {
            let v = offsets.partition_point(|&o| o <= x) - 1;
            d.assignment[v].edges[x - offsets[v]]
        }
    };
    for (x, slot) in edge_of.iter_mut().enumerate() {
        let root = uf.find(x);
        let next = class_id.len();
        let id = *class_id.entry(root).or_insert_with(|| {
            edges.push(color_of(x));
            next
        });
        *slot = id;
    }
    let mut vertices = Vec::new();
    let mut vertex_origin = Vec::new();
    for (v, h) in d.assignment.iter().enumerate() {
        for (u, hx) in h.vertices.iter().enumerate() {
            vertices.push(Vertex {
                inputs: hx.inputs.iter().map(|&e| edge_of[offsets[v] + e]).collect(),
                outputs: hx.outputs.iter().map(|&e| edge_of[offsets[v] + e]).collect(),
            });
            vertex_origin.push((v, u));
        }
    }
    let k = ColoredGraph {
        vertices,
        edges,
        inputs: g.inputs.iter().map(|&e| edge_of[e]).collect(),
        outputs: g.outputs.iter().map(|&e| edge_of[e]).collect(),
    };
    let trace = SubstitutionTrace {
        vertex_origin,
        outer_edge: edge_of[..outer_n].to_vec(),
        inner_edge: d
            .assignment
            .iter()
            .enumerate()
            .map(|(v, h)| (0..h.edge_count()).map(|e| edge_of[offsets[v] + e]).collect())
            .collect(),
    };
    Ok((k, trace))
}

/// The two-vertex graph with the single output of a `first`-shaped vertex
/// feeding the single input of a `second`-shaped vertex.
pub fn grafting_template(first: &Biprofile, second: &Biprofile) -> Result<ColoredGraph, SubstitutionError> {
    if first.outputs.len() != 1 || second.inputs.len() != 1 {
        return Err(SubstitutionError::NotGraftable(first.outputs.len(), second.inputs.len()));
    }
    if first.outputs[0] != second.inputs[0] {
        return Err(SubstitutionError::GraftColorMismatch(first.outputs[0], second.inputs[0]));
    }
    let n = first.inputs.len();
    let m = second.outputs.len();
    let mut edges: Vec<Edge> = first.inputs.iter().map(|&color| Edge { color }).collect();
    edges.push(Edge { color: first.outputs[0] });
    edges.extend(second.outputs.iter().map(|&color| Edge { color }));
    let legs_in: Vec<usize> = (0..n).collect();
    let legs_out: Vec<usize> = (n + 1..n + 1 + m).collect();
    Ok(ColoredGraph {
        vertices: vec![
            Vertex { inputs: legs_in.clone(), outputs: vec![n] },
            Vertex { inputs: vec![n], outputs: legs_out.clone() },
        ],
        edges,
        inputs: legs_in,
        outputs: legs_out,
    })
}

/// `second ∘ first`: the output edge of `first` becomes the input edge of
/// `second`.
pub fn graft(first: &ColoredGraph, second: &ColoredGraph) -> Result<ColoredGraph, SubstitutionError> {
    let template = grafting_template(&first.biprofile(), &second.biprofile())?;
    substitute(&SubstitutionData { target: template, assignment: vec![first.clone(), second.clone()] })
}

/// Given `outer` on `G` and `inner` on `K` with `G{outer}` strictly isomorphic
/// to `K`, returns the data `v ↦ H_v{I_u}` on `G`.
pub fn compose_substitution_data(
    inner: &SubstitutionData,
    outer: &SubstitutionData,
) -> Result<SubstitutionData, SubstitutionError> {
    let k = substitute(outer)?;
    let bound = k.vertex_count().max(inner.target.vertex_count());
    let iso = find_iso_bounded(&k, &inner.target, IsoFlavor::Strict, bound)?.ok_or(SubstitutionError::MissingIso)?;
    compose_substitution_data_via(inner, outer, &iso)
}

/// As [`compose_substitution_data`] with a given strict isomorphism
/// `G{outer} -> inner.target`.
pub fn compose_substitution_data_via(
    inner: &SubstitutionData,
    outer: &SubstitutionData,
    iso: &GraphIso,
) -> Result<SubstitutionData, SubstitutionError> {
    inner.check()?;
    let (k, trace) = substitute_traced(outer)?;
    if iso.flavor != IsoFlavor::Strict || !iso.verify(&k, &inner.target) {
        return Err(SubstitutionError::MissingIso);
    }
    let mut per_vertex: Vec<Vec<ColoredGraph>> = outer.assignment.iter().map(|_| Vec::new()).collect();
    for (kv, &(v, _u)) in trace.vertex_origin.iter().enumerate() {
        per_vertex[v].push(inner.assignment[iso.vertex_map[kv]].clone());
    }
    let assignment = outer
        .assignment
        .iter()
        .zip(per_vertex)
        .map(|(h, is)| substitute(&SubstitutionData { target: h.clone(), assignment: is }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SubstitutionData { target: outer.target.clone(), assignment })
}

pub fn scheme_member(scheme: Scheme, g: &ColoredGraph) -> bool {
    scheme.contains(g)
}

/// Sizes for [`check_closure`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureBounds {
    pub colors: u32,
    pub outer_vertices: usize,
    pub inner_vertices: usize,
    pub arity: ArityBound,
    /// Largest number of legs on either side of an outer graph.
    pub legs: usize,
    /// Cap on substitutions per outer graph before switching to sampling.
    pub sample_budget: usize,
    pub seed: u64,
}

impl Default for ClosureBounds {
    fn default() -> Self {
        ClosureBounds {
            colors: 1,
            outer_vertices: 3,
            inner_vertices: 2,
            arity: ArityBound::new(2, 2),
            legs: 2,
            sample_budget: 2000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ClosureReport {
    pub scheme: Option<Scheme>,
    pub substitutions_checked: usize,
    pub exhaustive: bool,
    pub counterexamples: Vec<String>,
}

impl ClosureReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Substitutes scheme members into scheme members within the bounds and
/// reports any result that leaves the scheme.
pub fn check_closure(scheme: Scheme, bounds: &ClosureBounds) -> ClosureReport {
    let colors = ColorSet::range(bounds.colors);
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let mut report = ClosureReport { scheme: Some(scheme), exhaustive: true, ..Default::default() };
    let mut fillers: BTreeMap<Biprofile, Vec<ColoredGraph>> = BTreeMap::new();
    for n in 0..=bounds.legs {
        for m in 0..=bounds.legs {
            for ins in colors.words(n) {
                for outs in colors.words(m) {
                    let bp = Biprofile::new(ins.clone(), outs);
                    for g in enumerate_graph_reps(scheme, &colors, &bp, bounds.outer_vertices, bounds.arity) {
                        let choices: Vec<Vec<ColoredGraph>> = (0..g.vertex_count())
                            .map(|v| {
                                let p = g.vertex_profile(v);
                                fillers
                                    .entry(p.clone())
                                    .or_insert_with(|| {
                                        enumerate_graph_reps(scheme, &colors, &p, bounds.inner_vertices, bounds.arity)
                                    })
                                    .clone()
                            })
                            .collect();
                        let total: usize = choices.iter().map(Vec::len).product();
                        let check = |assignment: Vec<ColoredGraph>, report: &mut ClosureReport| {
                            let d = SubstitutionData { target: g.clone(), assignment };
                            report.substitutions_checked += 1;
                            match substitute(&d) {
                                Ok(k) if scheme.contains(&k) => {}
                                Ok(k) => report.counterexamples.push(format!(
                                    "outer {} produced {} outside the scheme",
                                    code_of(&g),
                                    code_of(&k)
                                )),
                                Err(e) => report.counterexamples.push(format!("outer {}: {e}", code_of(&g))),
                            }
                        };
                        if total <= bounds.sample_budget {
                            for_each_choice(&choices, &mut |a| check(a, &mut report));
                        } else {
                            report.exhaustive = false;
                            for _ in 0..bounds.sample_budget {
                                let a = choices.iter().map(|c| c.choose(&mut rng).unwrap().clone()).collect();
                                check(a, &mut report);
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

/// Calls `f` on every element of the cartesian product of `choices`.
pub fn for_each_choice<T: Clone>(choices: &[Vec<T>], f: &mut dyn FnMut(Vec<T>)) {
    fn go<T: Clone>(choices: &[Vec<T>], cur: &mut Vec<T>, f: &mut dyn FnMut(Vec<T>)) {
        if cur.len() == choices.len() {
            f(cur.clone());
            return;
        }
        for x in &choices[cur.len()] {
            cur.push(x.clone());
            go(choices, cur, f);
            cur.pop();
        }
    }
    go(choices, &mut Vec::with_capacity(choices.len()), f);
}

#[derive(Serialize, Deserialize)]
struct DataJson {
    target: ColoredGraph,
    assignment: BTreeMap<String, ColoredGraph>,
}

impl Serialize for SubstitutionData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DataJson {
            target: self.target.clone(),
            assignment: self.assignment.iter().enumerate().map(|(v, h)| (v.to_string(), h.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubstitutionData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = DataJson::deserialize(d)?;
        let mut slots: Vec<Option<ColoredGraph>> = vec![None; j.target.vertex_count()];
        for (k, h) in j.assignment {
            let v: usize = k.parse().map_err(|_| D::Error::custom(format!("bad vertex id `{k}`")))?;
            *slots.get_mut(v).ok_or_else(|| D::Error::custom(format!("vertex {v} out of range")))? = Some(h);
        }
        let assignment = slots
            .into_iter()
            .enumerate()
            .map(|(v, h)| h.ok_or_else(|| D::Error::custom(format!("vertex {v} unassigned"))))
            .collect::<Result<Vec<_>, _>>()?;
        SubstitutionData::new(j.target, assignment).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{canonical_form, Color};

    fn c() -> Color {
        Color(0)
    }

    fn chain(k: usize) -> ColoredGraph {
        let unit = ColoredGraph::corolla(&Biprofile::unary(c()));
        (1..k).fold(unit.clone(), |g, _| graft(&g, &unit).unwrap())
    }

    #[test]
    fn corollas_are_a_unit() {
        let g = chain(3);
        let k = substitute(&SubstitutionData::identity(g.clone())).unwrap();
        assert_eq!(code_of(&k), code_of(&g));
    }

    #[test]
    fn edge_into_corolla() {
        let g = ColoredGraph::corolla(&Biprofile::unary(c()));
        let k = substitute(&SubstitutionData::new(g, vec![ColoredGraph::edge(c())]).unwrap()).unwrap();
        assert_eq!(code_of(&k), code_of(&ColoredGraph::edge(c())));
    }

    #[test]
    fn chains_into_a_chain() {
        let d = SubstitutionData::new(chain(2), vec![chain(2), chain(2)]).unwrap();
        assert_eq!(code_of(&substitute(&d).unwrap()), code_of(&chain(4)));
    }

    #[test]
    fn graft_unit_and_chain() {
        let k = ColoredGraph::corolla(&Biprofile::unary(c()));
        assert_eq!(code_of(&graft(&ColoredGraph::edge(c()), &k).unwrap()), code_of(&k));
        let two = graft(&k, &k).unwrap();
        assert_eq!(two.vertex_count(), 2);
        assert_eq!(two.internal_edge_count(), 1);
    }

    #[test]
    fn profile_mismatch_is_an_error() {
        let g = ColoredGraph::corolla(&Biprofile::unary(c()));
        let h = ColoredGraph::corolla(&Biprofile::new(vec![c(), c()], vec![c()]));
        assert!(matches!(SubstitutionData::new(g, vec![h]), Err(SubstitutionError::ProfileMismatch { .. })));
    }

    #[test]
    fn composition_with_identities() {
        let g = chain(2);
        let outer = SubstitutionData::new(g.clone(), vec![chain(2), ColoredGraph::corolla(&Biprofile::unary(c()))]).unwrap();
        let k = substitute(&outer).unwrap();
        let inner = SubstitutionData::identity(k.clone());
        let composed = compose_substitution_data(&inner, &outer).unwrap();
        assert_eq!(canonical_form(&substitute(&composed).unwrap()).unwrap(), canonical_form(&k).unwrap());
    }

    #[test]
    fn json_roundtrip() {
        let d = SubstitutionData::new(chain(2), vec![chain(2), ColoredGraph::edge(c())]).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        let e: SubstitutionData = serde_json::from_str(&s).unwrap();
        assert_eq!(code_of(&substitute(&d).unwrap()), code_of(&substitute(&e).unwrap()));
    }
}
