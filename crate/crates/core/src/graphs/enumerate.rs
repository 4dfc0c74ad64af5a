//! Exhaustive enumeration of strict-isomorphism classes with a fixed biprofile.
//!
//! Vertex profiles are chosen as a multiset, then every edge is a pairing of
//! one source slot (a graph input position or a vertex output port) with one
//! target slot (a vertex input port or a graph output position). Pairings that
//! close a directed cycle are pruned as soon as they appear.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::canon::code_of;
use super::{Biprofile, CanonicalCode, Color, ColorSet, ColoredGraph, Edge, Scheme, Vertex};

/// Per-vertex arity limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArityBound {
    pub max_inputs: usize,
    pub max_outputs: usize,
}

impl ArityBound {
    pub fn new(max_inputs: usize, max_outputs: usize) -> Self {
        ArityBound { max_inputs, max_outputs }
    }

    pub fn admits(&self, bp: &Biprofile) -> bool {
        bp.inputs.len() <= self.max_inputs && bp.outputs.len() <= self.max_outputs
    }

    /// Every vertex profile over `colors` within the bound.
    pub fn profiles(&self, colors: &ColorSet) -> Vec<Biprofile> {
        let mut out = Vec::new();
        for n in 0..=self.max_inputs {
            for m in 0..=self.max_outputs {
                for ins in colors.words(n) {
                    for outs in colors.words(m) {
                        out.push(Biprofile::new(ins.clone(), outs));
                    }
                }
            }
        }
        out
    }
}

/// One canonical code per strict-isomorphism class of graphs in `scheme` with
/// biprofile `bp`, at most `max_vertices` vertices, each within `arity`.
/// The result is sorted by code.
pub fn enumerate_graphs(
    scheme: Scheme,
    colors: &ColorSet,
    bp: &Biprofile,
    max_vertices: usize,
    arity: ArityBound,
) -> Vec<CanonicalCode> {
    let profiles = arity.profiles(colors);
    let multisets: Vec<Vec<usize>> =
        (0..=max_vertices).flat_map(|k| multisets(profiles.len(), k)).collect();
    let found: Vec<HashSet<CanonicalCode>> = multisets
        .par_iter()
        .map(|ms| {
            let vs: Vec<&Biprofile> = ms.iter().map(|&i| &profiles[i]).collect();
            let mut local = HashSet::new();
            for_each_wiring(bp, &vs, &mut |g| {
                if scheme.contains(g) {
                    local.insert(code_of(g));
                }
            });
            local
        })
        .collect();
    let all: BTreeSet<CanonicalCode> = found.into_iter().flatten().collect();
    all.into_iter().collect()
}

/// Decoded representatives of [`enumerate_graphs`].
pub fn enumerate_graph_reps(
    scheme: Scheme,
    colors: &ColorSet,
    bp: &Biprofile,
    max_vertices: usize,
    arity: ArityBound,
) -> Vec<ColoredGraph> {
    enumerate_graphs(scheme, colors, bp, max_vertices, arity)
        .into_iter()
        .map(|c| c.decode().expect("enumerated codes decode"))
        .collect()
}

/// Nondecreasing index sequences of length `k` over `0..n`.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    go(n, k, 0, &mut cur, &mut out);
    out
}

#[derive(Clone, Copy)]
enum Slot {
    Leg(usize),
    Port { vertex: usize, port: usize },
}

/// Calls `visit` on every wheel-free wiring of the given vertex profiles with
/// graph biprofile `bp`. Distinct calls may yield isomorphic graphs.
pub fn for_each_wiring(bp: &Biprofile, vertices: &[&Biprofile], visit: &mut dyn FnMut(&ColoredGraph)) {
    let mut sources: Vec<(Slot, Color)> = bp.inputs.iter().enumerate().map(|(i, &c)| (Slot::Leg(i), c)).collect();
    let mut targets: Vec<(Slot, Color)> = Vec::new();
    for (v, p) in vertices.iter().enumerate() {
        sources.extend(p.outputs.iter().enumerate().map(|(port, &c)| (Slot::Port { vertex: v, port }, c)));
        targets.extend(p.inputs.iter().enumerate().map(|(port, &c)| (Slot::Port { vertex: v, port }, c)));
    }
    targets.extend(bp.outputs.iter().enumerate().map(|(i, &c)| (Slot::Leg(i), c)));
    if sources.len() != targets.len() {
        return;
    }
    let mut sc: Vec<Color> = sources.iter().map(|s| s.1).collect();
    let mut tc: Vec<Color> = targets.iter().map(|s| s.1).collect();
    sc.sort();
    tc.sort();
    if sc != tc {
        return;
    }
    let nv = vertices.len();
    let mut w = Wiring {
        bp,
        vertices,
        sources: &sources,
        targets: &targets,
        taken: vec![false; targets.len()],
        assign: vec![usize::MAX; sources.len()],
        reach: (0..nv).map(|v| 1u64 << v).collect(),
    };
    w.go(0, visit);
}

struct Wiring<'a> {
    bp: &'a Biprofile,
    vertices: &'a [&'a Biprofile],
    sources: &'a [(Slot, Color)],
    targets: &'a [(Slot, Color)],
    taken: Vec<bool>,
    assign: Vec<usize>,
    /// `reach[v]` has bit `u` set when `u` is reachable from `v`.
    reach: Vec<u64>,
}

impl Wiring<'_> {
    fn go(&mut self, s: usize, visit: &mut dyn FnMut(&ColoredGraph)) {
        if s == self.sources.len() {
            visit(&self.build());
            return;
        }
        let (src, color) = self.sources[s];
        for t in 0..self.targets.len() {
            if self.taken[t] || self.targets[t].1 != color {
                continue;
            }
            let saved = match (src, self.targets[t].0) {
                (Slot::Port { vertex: u, .. }, Slot::Port { vertex: x, .. }) => {
                    if self.reach[x] & (1 << u) != 0 {
                        continue;
                    }
                    let saved = self.reach.clone();
                    let add = self.reach[x];
                    for r in self.reach.iter_mut() {
                        if *r & (1 << u) != 0 {
                            *r |= add;
                        }
                    }
                    Some(saved)
                }
                _ => None,
            };
            self.taken[t] = true;
            self.assign[s] = t;
            self.go(s + 1, visit);
            self.taken[t] = false;
            if let Some(saved) = saved {
                self.reach = saved;
            }
        }
    }

    fn build(&self) -> ColoredGraph {
        let edges: Vec<Edge> = self.sources.iter().map(|&(_, color)| Edge { color }).collect();
        let mut vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .map(|p| Vertex { inputs: vec![usize::MAX; p.inputs.len()], outputs: vec![usize::MAX; p.outputs.len()] })
            .collect();
        let mut inputs = vec![usize::MAX; self.bp.inputs.len()];
        let mut outputs = vec![usize::MAX; self.bp.outputs.len()];
        for (e, &(src, _)) in self.sources.iter().enumerate() {
            match src {
                Slot::Leg(i) => inputs[i] = e,
                Slot::Port { vertex, port } => vertices[vertex].outputs[port] = e,
            }
            match self.targets[self.assign[e]].0 {
                Slot::Leg(j) => outputs[j] = e,
                Slot::Port { vertex, port } => vertices[vertex].inputs[port] = e,
            }
        }
        ColoredGraph { vertices, edges, inputs, outputs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> ColorSet {
        ColorSet::range(1)
    }

    fn cc() -> Biprofile {
        Biprofile::unary(Color(0))
    }

    #[test]
    fn dioperad_unary_one_vertex() {
        let codes = enumerate_graphs(Scheme::Dioperad, &one(), &cc(), 1, ArityBound::new(1, 1));
        assert_eq!(codes.len(), 2);
    }

    #[test]
    fn no_vertices_gives_the_edge() {
        let codes = enumerate_graphs(Scheme::Prop, &one(), &cc(), 0, ArityBound::new(2, 2));
        assert_eq!(codes.len(), 1);
        assert_eq!(codes[0].decode().unwrap().vertex_count(), 0);
    }

    #[test]
    fn disconnected_pairs_only_in_props() {
        let bp = Biprofile::new(vec![], vec![]);
        let prop = enumerate_graphs(Scheme::Prop, &one(), &bp, 2, ArityBound::new(0, 0));
        let properad = enumerate_graphs(Scheme::Properad, &one(), &bp, 2, ArityBound::new(0, 0));
        // empty graph, one vertex, two vertices
        assert_eq!(prop.len(), 3);
        assert_eq!(properad.len(), 1);
    }

    #[test]
    fn output_is_sorted_and_deterministic() {
        let bp = Biprofile::new(vec![Color(0); 2], vec![Color(0)]);
        let a = enumerate_graphs(Scheme::Prop, &one(), &bp, 2, ArityBound::new(2, 2));
        let b = enumerate_graphs(Scheme::Prop, &one(), &bp, 2, ArityBound::new(2, 2));
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
    }
}
