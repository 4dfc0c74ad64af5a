//! Canonical labelings and codes for strict-isomorphism classes.
//!
//! A strict isomorphism preserves every port and leg ordering, so once the
//! image of one vertex or leg is fixed, following ports pins down the whole
//! component. Components reached from a leg are traversed in leg order;
//! leg-free components are rooted at every vertex in turn and the smallest
//! resulting code wins, after which those components are sorted by code.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Color, ColoredGraph, Edge, GraphError, Vertex, DEFAULT_VERTEX_BOUND};

/// Vertex and edge orders putting a graph into canonical position:
/// canonical vertex `i` is original vertex `vertex_order[i]`, likewise edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub vertex_order: Vec<usize>,
    pub edge_order: Vec<usize>,
}

impl Labeling {
    /// Position of each original vertex in canonical order.
    pub fn vertex_positions(&self) -> Vec<usize> {
        invert(&self.vertex_order)
    }

    pub fn edge_positions(&self) -> Vec<usize> {
        invert(&self.edge_order)
    }
}

fn invert(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    pos
}

/// Byte string identifying a strict-isomorphism class; decodable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        CanonicalCode(bytes)
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Result<Self, GraphError> {
        if s.len() % 2 != 0 {
            return Err(GraphError::MalformedCode);
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).map_err(|_| GraphError::MalformedCode))
            .collect::<Result<Vec<u8>, _>>()
            .map(CanonicalCode)
    }

    /// Rebuilds the canonical representative.
    pub fn decode(&self) -> Result<ColoredGraph, GraphError> {
        let words = words_of(&self.0)?;
        let (g, used) = decode_words(&words)?;
        if used != words.len() {
            return Err(GraphError::MalformedCode);
        }
        Ok(g)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl From<CanonicalCode> for String {
    fn from(c: CanonicalCode) -> String {
        c.to_hex()
    }
}

impl TryFrom<String> for CanonicalCode {
    type Error = GraphError;
    fn try_from(s: String) -> Result<Self, GraphError> {
        CanonicalCode::from_hex(&s)
    }
}

fn words_of(bytes: &[u8]) -> Result<Vec<u32>, GraphError> {
    if bytes.len() % 4 != 0 {
        return Err(GraphError::MalformedCode);
    }
    Ok(bytes.chunks_exact(4).map(|c| u32::from_be_bytes([c[0], c[1], c[2], c[3]])).collect())
}

fn decode_words(w: &[u32]) -> Result<(ColoredGraph, usize), GraphError> {
    let mut i = 0usize;
    let mut next = || -> Result<usize, GraphError> {
        let x = *w.get(i).ok_or(GraphError::MalformedCode)? as usize;
        i += 1;
        Ok(x)
    };
    let nv = next()?;
    let ne = next()?;
    if nv > w.len() || ne > w.len() {
        return Err(GraphError::MalformedCode);
    }
    let mut edges = Vec::with_capacity(ne);
    for _ in 0..ne {
        edges.push(Edge { color: Color(next()? as u32) });
    }
    let list = |next: &mut dyn FnMut() -> Result<usize, GraphError>| -> Result<Vec<usize>, GraphError> {
        let k = next()?;
        if k > w.len() {
            return Err(GraphError::MalformedCode);
        }
        (0..k)
            .map(|_| next().and_then(|e| if e < ne { Ok(e) } else { Err(GraphError::MalformedCode) }))
            .collect()
    };
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let inputs = list(&mut next)?;
        let outputs = list(&mut next)?;
        vertices.push(Vertex { inputs, outputs });
    }
    let inputs = list(&mut next)?;
    let outputs = list(&mut next)?;
    drop(next);
    Ok((ColoredGraph { vertices, edges, inputs, outputs }, i))
}

fn encode_words(g: &ColoredGraph, labels: Option<&[u64]>) -> Vec<u32> {
    let mut w = Vec::with_capacity(4 + 3 * g.edges.len() + 2 * g.vertices.len());
    w.push(g.vertices.len() as u32);
    w.push(g.edges.len() as u32);
    w.extend(g.edges.iter().map(|e| e.color.0));
    let push_list = |w: &mut Vec<u32>, l: &[usize]| {
        w.push(l.len() as u32);
        w.extend(l.iter().map(|&e| e as u32));
    };
    for v in &g.vertices {
        push_list(&mut w, &v.inputs);
        push_list(&mut w, &v.outputs);
    }
    push_list(&mut w, &g.inputs);
    push_list(&mut w, &g.outputs);
    if let Some(labels) = labels {
        for &l in labels {
            w.push((l >> 32) as u32);
            w.push(l as u32);
        }
    }
    w
}

fn bytes_of(words: &[u32]) -> Vec<u8> {
    words.iter().flat_map(|x| x.to_be_bytes()).collect()
}

/// Port-following traversal from a set of seeds, numbering vertices and edges
/// on first visit.
struct Walk<'a> {
    g: &'a ColoredGraph,
    ends: &'a [super::EdgeEnds],
    vseen: Vec<bool>,
    eseen: Vec<bool>,
    vorder: Vec<usize>,
    eorder: Vec<usize>,
}

impl<'a> Walk<'a> {
    fn new(g: &'a ColoredGraph, ends: &'a [super::EdgeEnds]) -> Self {
        Walk {
            g,
            ends,
            vseen: vec![false; g.vertices.len()],
            eseen: vec![false; g.edges.len()],
            vorder: Vec::new(),
            eorder: Vec::new(),
        }
    }

    fn reset_to(&mut self, vlen: usize, elen: usize) {
        for v in self.vorder.drain(vlen..) {
            self.vseen[v] = false;
        }
        for e in self.eorder.drain(elen..) {
            self.eseen[e] = false;
        }
    }

    fn from_edge(&mut self, e: usize) {
        let start = self.vorder.len();
        self.touch_edge(e);
        self.drain(start);
    }

    fn from_vertex(&mut self, v: usize) {
        let start = self.vorder.len();
        self.touch_vertex(v);
        self.drain(start);
    }

    fn touch_vertex(&mut self, v: usize) {
        if !self.vseen[v] {
            self.vseen[v] = true;
            self.vorder.push(v);
        }
    }

    fn touch_edge(&mut self, e: usize) {
        if self.eseen[e] {
            return;
        }
        self.eseen[e] = true;
        self.eorder.push(e);
        let end = self.ends[e];
        if let Some(s) = end.source {
            self.touch_vertex(s.vertex);
        }
        if let Some(t) = end.target {
            self.touch_vertex(t.vertex);
        }
    }

    fn drain(&mut self, mut cursor: usize) {
        while cursor < self.vorder.len() {
            let v = self.vorder[cursor];
            cursor += 1;
            let g = self.g;
            for &e in g.vertices[v].inputs.iter().chain(g.vertices[v].outputs.iter()) {
                self.touch_edge(e);
            }
        }
    }
}

/// Canonical labeling; `labels` optionally decorates vertices and then takes
/// part in the choice among otherwise equal positions.
fn labeling_impl(g: &ColoredGraph, labels: Option<&[u64]>) -> Labeling {
    let ends = g.edge_ends();
    let mut walk = Walk::new(g, &ends);
    for &e in g.inputs.iter().chain(g.outputs.iter()) {
        walk.from_edge(e);
    }
    // leg-free components, each rooted at its best vertex
    let mut pieces: Vec<(Vec<u32>, Vec<usize>, Vec<usize>)> = Vec::new();
    for v in 0..g.vertices.len() {
        if walk.vseen[v] {
            continue;
        }
        let (vlen, elen) = (walk.vorder.len(), walk.eorder.len());
        walk.from_vertex(v);
        let members: Vec<usize> = walk.vorder[vlen..].to_vec();
        walk.reset_to(vlen, elen);
        let mut best: Option<(Vec<u32>, Vec<usize>, Vec<usize>)> = None;
        for &root in &members {
            walk.from_vertex(root);
            let vo = walk.vorder[vlen..].to_vec();
            let eo = walk.eorder[elen..].to_vec();
            walk.reset_to(vlen, elen);
            let code = piece_code(g, &vo, &eo, labels);
            if best.as_ref().is_none_or(|b| code < b.0) {
                best = Some((code, vo, eo));
            }
        }
        let best = best.expect("component has a vertex");
        for &x in &best.1 {
            walk.vseen[x] = true;
        }
        for &x in &best.2 {
            walk.eseen[x] = true;
        }
        pieces.push(best);
    }
    pieces.sort_by(|a, b| a.0.cmp(&b.0));
    let mut vertex_order = walk.vorder;
    let mut edge_order = walk.eorder;
    for (_, vo, eo) in pieces {
        vertex_order.extend(vo);
        edge_order.extend(eo);
    }
    Labeling { vertex_order, edge_order }
}

/// Code of one leg-free component under a local numbering.
fn piece_code(g: &ColoredGraph, vo: &[usize], eo: &[usize], labels: Option<&[u64]>) -> Vec<u32> {
    let mut local = std::collections::HashMap::with_capacity(eo.len());
    for (i, &e) in eo.iter().enumerate() {
        local.insert(e, i as u32);
    }
    let mut w = vec![vo.len() as u32, eo.len() as u32];
    w.extend(eo.iter().map(|&e| g.edges[e].color.0));
    for &v in vo {
        let vx = &g.vertices[v];
        if let Some(l) = labels {
            w.push((l[v] >> 32) as u32);
            w.push(l[v] as u32);
        }
        w.push(vx.inputs.len() as u32);
        w.extend(vx.inputs.iter().map(|e| local[e]));
        w.push(vx.outputs.len() as u32);
        w.extend(vx.outputs.iter().map(|e| local[e]));
    }
    w
}

fn check_bound(g: &ColoredGraph, bound: usize) -> Result<(), GraphError> {
    if g.vertices.len() > bound {
        Err(GraphError::BoundExceeded { found: g.vertices.len(), bound })
    } else {
        Ok(())
    }
}

/// Canonical labeling of a graph. Runs in polynomial time, so no vertex bound
/// applies here; [`canonical_form`] enforces the configured one.
pub fn canonical_labeling(g: &ColoredGraph) -> Labeling {
    labeling_impl(g, None)
}

/// Canonical code of `g`, subject to the default vertex bound.
pub fn canonical_form(g: &ColoredGraph) -> Result<CanonicalCode, GraphError> {
    canonical_form_bounded(g, DEFAULT_VERTEX_BOUND)
}

pub fn canonical_form_bounded(g: &ColoredGraph, bound: usize) -> Result<CanonicalCode, GraphError> {
    check_bound(g, bound)?;
    Ok(code_of(g))
}

/// Canonical code with no bound check.
pub fn code_of(g: &ColoredGraph) -> CanonicalCode {
    code_and_labeling(g).0
}

pub fn code_and_labeling(g: &ColoredGraph) -> (CanonicalCode, Labeling) {
    let lab = labeling_impl(g, None);
    let h = g.relabel(&lab.vertex_order, &lab.edge_order);
    (CanonicalCode(bytes_of(&encode_words(&h, None))), lab)
}

/// Canonical code of a vertex-labeled graph: equal exactly when some strict
/// isomorphism carries one labeling onto the other.
pub fn labeled_code(g: &ColoredGraph, labels: &[u64]) -> (CanonicalCode, Labeling) {
    assert_eq!(labels.len(), g.vertices.len(), "one label per vertex");
    let lab = labeling_impl(g, Some(labels));
    let h = g.relabel(&lab.vertex_order, &lab.edge_order);
    let permuted: Vec<u64> = lab.vertex_order.iter().map(|&v| labels[v]).collect();
    (CanonicalCode(bytes_of(&encode_words(&h, Some(&permuted)))), lab)
}

/// The canonical representative (relabeling of `g` into canonical position).
pub fn canonical_representative(g: &ColoredGraph) -> ColoredGraph {
    let lab = canonical_labeling(g);
    g.relabel(&lab.vertex_order, &lab.edge_order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Biprofile;

    fn chain3() -> ColoredGraph {
        // 0 -> v0 -> 1 -> v1 -> 2 -> v2 -> 3
        ColoredGraph {
            vertices: vec![
                Vertex { inputs: vec![0], outputs: vec![1] },
                Vertex { inputs: vec![1], outputs: vec![2] },
                Vertex { inputs: vec![2], outputs: vec![3] },
            ],
            edges: vec![Edge { color: Color(0) }; 4],
            inputs: vec![0],
            outputs: vec![3],
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn chain_relabelings_share_one_code() {
        let g = chain3();
        let base = code_of(&g);
        for vp in permutations(3) {
            for ep in permutations(4) {
                let h = g.relabel(&vp, &ep);
                assert!(h.is_valid());
                assert_eq!(code_of(&h), base);
            }
        }
    }

    #[test]
    fn corolla_and_edge_differ() {
        let a = code_of(&ColoredGraph::corolla(&Biprofile::new(vec![Color(0)], vec![Color(1)])));
        let b = code_of(&ColoredGraph::edge(Color(0)));
        assert_ne!(a, b);
    }

    #[test]
    fn decode_returns_the_representative() {
        let g = chain3();
        let code = code_of(&g);
        let h = code.decode().unwrap();
        assert_eq!(code_of(&h), code);
        assert_eq!(h, canonical_representative(&g));
        assert_eq!(CanonicalCode::from_hex(&code.to_hex()).unwrap(), code);
    }

    #[test]
    fn leg_free_components_are_sorted() {
        let a = ColoredGraph::corolla(&Biprofile::new(vec![], vec![]));
        let b = ColoredGraph {
            vertices: vec![Vertex { inputs: vec![], outputs: vec![0] }, Vertex { inputs: vec![0], outputs: vec![] }],
            edges: vec![Edge { color: Color(0) }],
            inputs: vec![],
            outputs: vec![],
        };
        assert_eq!(code_of(&a.disjoint_union(&b)), code_of(&b.disjoint_union(&a)));
    }

    #[test]
    fn labels_distinguish_decorations_up_to_automorphism() {
        let a = ColoredGraph::corolla(&Biprofile::new(vec![], vec![]));
        let g = a.disjoint_union(&a);
        assert_eq!(labeled_code(&g, &[1, 2]).0, labeled_code(&g, &[2, 1]).0);
        assert_ne!(labeled_code(&g, &[1, 1]).0, labeled_code(&g, &[1, 2]).0);
    }

    #[test]
    fn malformed_codes_are_rejected() {
        assert!(CanonicalCode::from_bytes(vec![0, 0, 0]).decode().is_err());
        assert!(CanonicalCode::from_bytes(vec![0, 0, 0, 9]).decode().is_err());
        assert!(CanonicalCode::from_hex("zz").is_err());
    }
}
