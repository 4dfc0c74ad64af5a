//! Strict and weak isomorphisms between colored graphs.

use std::collections::BTreeMap;

use serde::Serialize;

use super::canon::code_and_labeling;
use super::{Color, ColoredGraph, GraphError, DEFAULT_VERTEX_BOUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IsoFlavor {
    /// Preserves incidence, colors and every ordering.
    Strict,
    /// Preserves incidence and colors only.
    Weak,
}

/// `vertex_map[v]` and `edge_map[e]` give images in the codomain graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphIso {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub flavor: IsoFlavor,
}

impl GraphIso {
    pub fn identity(g: &ColoredGraph, flavor: IsoFlavor) -> Self {
        GraphIso {
            vertex_map: (0..g.vertices.len()).collect(),
            edge_map: (0..g.edges.len()).collect(),
            flavor,
        }
    }

    /// Checks that this is an isomorphism `g1 -> g2` of its flavor.
    pub fn verify(&self, g1: &ColoredGraph, g2: &ColoredGraph) -> bool {
        if self.vertex_map.len() != g1.vertices.len()
            || self.edge_map.len() != g1.edges.len()
            || g1.vertices.len() != g2.vertices.len()
            || g1.edges.len() != g2.edges.len()
            || !is_permutation(&self.vertex_map)
            || !is_permutation(&self.edge_map)
        {
            return false;
        }
        if (0..g1.edges.len()).any(|e| g1.edges[e].color != g2.edges[self.edge_map[e]].color) {
            return false;
        }
        let (e1, e2) = (g1.edge_ends(), g2.edge_ends());
        let image = |v: usize| self.vertex_map[v];
        for e in 0..g1.edges.len() {
            let (a, b) = (e1[e], e2[self.edge_map[e]]);
            let ok = match self.flavor {
                IsoFlavor::Weak => {
                    a.source.map(|p| image(p.vertex)) == b.source.map(|p| p.vertex)
                        && a.target.map(|p| image(p.vertex)) == b.target.map(|p| p.vertex)
                }
                IsoFlavor::Strict => {
                    a.source.map(|p| (image(p.vertex), p.port)) == b.source.map(|p| (p.vertex, p.port))
                        && a.target.map(|p| (image(p.vertex), p.port)) == b.target.map(|p| (p.vertex, p.port))
                }
            };
            if !ok {
                return false;
            }
        }
        match self.flavor {
            IsoFlavor::Weak => true,
            IsoFlavor::Strict => {
                g1.inputs.iter().map(|&e| self.edge_map[e]).eq(g2.inputs.iter().copied())
                    && g1.outputs.iter().map(|&e| self.edge_map[e]).eq(g2.outputs.iter().copied())
            }
        }
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

/// Finds an isomorphism of the given flavor, subject to the default bound.
pub fn find_iso(g1: &ColoredGraph, g2: &ColoredGraph, flavor: IsoFlavor) -> Result<Option<GraphIso>, GraphError> {
    find_iso_bounded(g1, g2, flavor, DEFAULT_VERTEX_BOUND)
}

pub fn find_iso_bounded(
    g1: &ColoredGraph,
    g2: &ColoredGraph,
    flavor: IsoFlavor,
    bound: usize,
) -> Result<Option<GraphIso>, GraphError> {
    for g in [g1, g2] {
        if g.vertices.len() > bound {
            return Err(GraphError::BoundExceeded { found: g.vertices.len(), bound });
        }
    }
    if g1.vertices.len() != g2.vertices.len() || g1.edges.len() != g2.edges.len() {
        return Ok(None);
    }
    Ok(match flavor {
        IsoFlavor::Strict => strict_iso(g1, g2),
        IsoFlavor::Weak => weak_iso(g1, g2),
    })
}

fn strict_iso(g1: &ColoredGraph, g2: &ColoredGraph) -> Option<GraphIso> {
    let (c1, l1) = code_and_labeling(g1);
    let (c2, l2) = code_and_labeling(g2);
    if c1 != c2 {
        return None;
    }
    let mut vertex_map = vec![0; g1.vertices.len()];
    for (i, &v) in l1.vertex_order.iter().enumerate() {
        vertex_map[v] = l2.vertex_order[i];
    }
    let mut edge_map = vec![0; g1.edges.len()];
    for (i, &e) in l1.edge_order.iter().enumerate() {
        edge_map[e] = l2.edge_order[i];
    }
    Some(GraphIso { vertex_map, edge_map, flavor: IsoFlavor::Strict })
}

/// Every strict isomorphism `g1 -> g2`, obtained by composing one witness
/// with the strict automorphisms of `g2`.
pub fn find_all_strict_isos(g1: &ColoredGraph, g2: &ColoredGraph) -> Vec<GraphIso> {
    let Some(base) = strict_iso(g1, g2) else { return Vec::new() };
    strict_automorphisms(g2)
        .into_iter()
        .map(|aut| GraphIso {
            vertex_map: base.vertex_map.iter().map(|&v| aut.vertex_map[v]).collect(),
            edge_map: base.edge_map.iter().map(|&e| aut.edge_map[e]).collect(),
            flavor: IsoFlavor::Strict,
        })
        .collect()
}

/// Strict automorphisms: a backtracking search where each vertex image forces
/// its neighbours through the port structure.
pub fn strict_automorphisms(g: &ColoredGraph) -> Vec<GraphIso> {
    let nv = g.vertices.len();
    let mut out = Vec::new();
    let mut vmap: Vec<Option<usize>> = vec![None; nv];
    let mut emap: Vec<Option<usize>> = vec![None; g.edges.len()];
    for (&a, &b) in g.inputs.iter().zip(g.inputs.iter()).chain(g.outputs.iter().zip(g.outputs.iter())) {
        emap[a] = Some(b);
    }
    let ends = g.edge_ends();
    extend_auto(g, &ends, &mut vmap, &mut emap, &mut out);
    out
}

fn extend_auto(
    g: &ColoredGraph,
    ends: &[super::EdgeEnds],
    vmap: &mut Vec<Option<usize>>,
    emap: &mut Vec<Option<usize>>,
    out: &mut Vec<GraphIso>,
) {
    let saved = (vmap.clone(), emap.clone());
    if !propagate(g, ends, vmap, emap) {
        (*vmap, *emap) = saved;
        return;
    }
    match vmap.iter().position(Option::is_none) {
        None => {
            let iso = GraphIso {
                vertex_map: vmap.iter().map(|x| x.unwrap()).collect(),
                edge_map: emap.iter().map(|x| x.unwrap()).collect(),
                flavor: IsoFlavor::Strict,
            };
            if iso.verify(g, g) {
                out.push(iso);
            }
        }
        Some(v) => {
            for w in 0..g.vertices.len() {
                if vmap.contains(&Some(w)) {
                    continue;
                }
                vmap[v] = Some(w);
                extend_auto(g, ends, vmap, emap, out);
                vmap[v] = None;
            }
        }
    }
    (*vmap, *emap) = saved;
}

/// Forces images along ports until stable; false on a clash.
fn propagate(
    g: &ColoredGraph,
    ends: &[super::EdgeEnds],
    vmap: &mut [Option<usize>],
    emap: &mut [Option<usize>],
) -> bool {
    loop {
        let mut changed = false;
        for v in 0..g.vertices.len() {
            let Some(w) = vmap[v] else { continue };
            let (a, b) = (&g.vertices[v], &g.vertices[w]);
            if a.inputs.len() != b.inputs.len() || a.outputs.len() != b.outputs.len() {
                return false;
            }
            for (x, y) in a.inputs.iter().zip(&b.inputs).chain(a.outputs.iter().zip(&b.outputs)) {
                match emap[*x] {
                    Some(z) if z != *y => return false,
                    Some(_) => {}
                    None => {
                        emap[*x] = Some(*y);
                        changed = true;
                    }
                }
            }
        }
        for e in 0..g.edges.len() {
            let Some(f) = emap[e] else { continue };
            if g.edges[e].color != g.edges[f].color {
                return false;
            }
            let pairs = [
                (ends[e].source.map(|p| p.vertex), ends[f].source.map(|p| p.vertex)),
                (ends[e].target.map(|p| p.vertex), ends[f].target.map(|p| p.vertex)),
            ];
            for pair in pairs {
                match pair {
                    (None, None) => {}
                    (Some(x), Some(y)) => match vmap[x] {
                        Some(z) if z != y => return false,
                        Some(_) => {}
                        None => {
                            vmap[x] = Some(y);
                            changed = true;
                        }
                    },
                    _ => return false,
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

type EdgeKey = (Option<usize>, Option<usize>, Color);

fn weak_iso(g1: &ColoredGraph, g2: &ColoredGraph) -> Option<GraphIso> {
    let sig = |g: &ColoredGraph, v: usize| {
        let mut i: Vec<Color> = g.vertices[v].inputs.iter().map(|&e| g.edges[e].color).collect();
        let mut o: Vec<Color> = g.vertices[v].outputs.iter().map(|&e| g.edges[e].color).collect();
        i.sort();
        o.sort();
        (i, o)
    };
    let s1: Vec<_> = (0..g1.vertices.len()).map(|v| sig(g1, v)).collect();
    let s2: Vec<_> = (0..g2.vertices.len()).map(|v| sig(g2, v)).collect();
    let (e1, e2) = (g1.edge_ends(), g2.edge_ends());
    let keys = |g: &ColoredGraph, ends: &[super::EdgeEnds]| -> Vec<EdgeKey> {
        (0..g.edges.len())
            .map(|e| (ends[e].source.map(|p| p.vertex), ends[e].target.map(|p| p.vertex), g.edges[e].color))
            .collect()
    };
    let (k1, k2) = (keys(g1, &e1), keys(g2, &e2));
    let count = |ks: &[EdgeKey]| {
        let mut m: BTreeMap<EdgeKey, usize> = BTreeMap::new();
        for &k in ks {
            *m.entry(k).or_default() += 1;
        }
        m
    };
    let (c1, c2) = (count(&k1), count(&k2));
    let nv = g1.vertices.len();
    let mut vmap: Vec<Option<usize>> = vec![None; nv];
    let mut used = vec![false; nv];

    // a key is checkable once all its vertex ends are mapped
    let mapped = |k: &EdgeKey, vmap: &[Option<usize>]| -> Option<EdgeKey> {
        let s = match k.0 {
            Some(v) => Some(vmap[v]?),
            None => None,
        };
        let t = match k.1 {
            Some(v) => Some(vmap[v]?),
            None => None,
        };
        Some((s, t, k.2))
    };
    let consistent = |vmap: &[Option<usize>]| {
        c1.iter().all(|(k, n)| match mapped(k, vmap) {
            Some(img) => c2.get(&img) == Some(n),
            None => true,
        })
    };

    fn search(
        v: usize,
        nv: usize,
        vmap: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        ok: &dyn Fn(usize, usize) -> bool,
        consistent: &dyn Fn(&[Option<usize>]) -> bool,
    ) -> bool {
        if v == nv {
            return consistent(vmap);
        }
        for w in 0..nv {
            if used[w] || !ok(v, w) {
                continue;
            }
            vmap[v] = Some(w);
            used[w] = true;
            if consistent(vmap) && search(v + 1, nv, vmap, used, ok, consistent) {
                return true;
            }
            vmap[v] = None;
            used[w] = false;
        }
        false
    }
    let ok = |v: usize, w: usize| s1[v] == s2[w];
    if !search(0, nv, &mut vmap, &mut used, &ok, &consistent) {
        return None;
    }
    let vertex_map: Vec<usize> = vmap.into_iter().map(Option::unwrap).collect();
    let mut pools: BTreeMap<EdgeKey, Vec<usize>> = BTreeMap::new();
    for (e, k) in k2.iter().enumerate().rev() {
        pools.entry(*k).or_default().push(e);
    }
    let edge_map = k1
        .iter()
        .map(|k| {
            let img = (k.0.map(|v| vertex_map[v]), k.1.map(|v| vertex_map[v]), k.2);
            pools.get_mut(&img).and_then(Vec::pop)
        })
        .collect::<Option<Vec<usize>>>()?;
    Some(GraphIso { vertex_map, edge_map, flavor: IsoFlavor::Weak })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{Biprofile, Edge, Vertex};

    #[test]
    fn corolla_identity_in_both_flavors() {
        let g = ColoredGraph::corolla(&Biprofile::new(vec![Color(0), Color(1)], vec![Color(2)]));
        for flavor in [IsoFlavor::Strict, IsoFlavor::Weak] {
            let iso = find_iso(&g, &g, flavor).unwrap().unwrap();
            assert!(iso.verify(&g, &g));
        }
    }

    #[test]
    fn swapped_colors_are_not_isomorphic() {
        let a = ColoredGraph::corolla(&Biprofile::new(vec![Color(0)], vec![Color(1)]));
        let b = ColoredGraph::corolla(&Biprofile::new(vec![Color(1)], vec![Color(0)]));
        assert!(find_iso(&a, &b, IsoFlavor::Weak).unwrap().is_none());
    }

    #[test]
    fn swapped_input_order_is_weak_only() {
        let a = ColoredGraph::corolla(&Biprofile::new(vec![Color(0), Color(0)], vec![Color(0)]));
        let mut b = a.clone();
        b.inputs.swap(0, 1);
        assert!(find_iso(&a, &b, IsoFlavor::Strict).unwrap().is_none());
        let w = find_iso(&a, &b, IsoFlavor::Weak).unwrap().unwrap();
        assert!(w.verify(&a, &b));
    }

    #[test]
    fn bound_is_enforced() {
        let k = ColoredGraph::corolla(&Biprofile::new(vec![], vec![]));
        let mut g = k.clone();
        for _ in 0..3 {
            g = g.disjoint_union(&k);
        }
        assert!(matches!(
            find_iso_bounded(&g, &g, IsoFlavor::Weak, 3),
            Err(GraphError::BoundExceeded { found: 4, bound: 3 })
        ));
    }

    #[test]
    fn automorphisms_of_a_crossed_bipartite_graph() {
        // sources a,b with two outputs each, sinks c,d with two inputs each
        let g = ColoredGraph {
            vertices: vec![
                Vertex { inputs: vec![], outputs: vec![0, 1] },
                Vertex { inputs: vec![], outputs: vec![2, 3] },
                Vertex { inputs: vec![0, 3], outputs: vec![] },
                Vertex { inputs: vec![2, 1], outputs: vec![] },
            ],
            edges: vec![Edge { color: Color(0) }; 4],
            inputs: vec![],
            outputs: vec![],
        };
        assert!(g.is_valid());
        assert_eq!(strict_automorphisms(&g).len(), 2);
        assert_eq!(find_all_strict_isos(&g, &g).len(), 2);
    }
}
