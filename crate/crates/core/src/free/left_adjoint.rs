//! The truncated left adjoint: decorated outer graphs modulo the moves that
//! collapse an inner-scheme piece to one vertex.
//!
//! The generating moves on an element `(K, d)` are
//! - contracting a set of at least two vertices spanning an inner-scheme
//!   subgraph, decorating the new vertex by the composite of the old labels;
//! - permuting the ports of one vertex and acting on its label by the
//!   permuted corolla;
//! - splitting an edge by a unit vertex.
//!
//! Every single-vertex substitution is a composite of these, and their
//! targets are looked up by labeled canonical code. Moves leaving the
//! truncation are counted and dropped.

use std::collections::{BTreeMap, HashMap, HashSet};

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use super::{FreeError, SchemePair};
use crate::graphs::canon::labeled_code;
use crate::graphs::enumerate::enumerate_graph_reps;
use crate::graphs::{ArityBound, Biprofile, CanonicalCode, Color, ColoredGraph, Edge, Vertex};
use crate::properads::{degenerate_vertex, pi0_category, Decoration, GrProp};
use crate::ssets::{CellId, Simplex};
use crate::substitution::{for_each_choice, graft};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct FreeBounds {
    /// `N`: vertices of outer graphs.
    pub max_vertices: usize,
    pub vertex_arity: ArityBound,
    /// Simplicial degree of the decorations.
    pub degree: usize,
    /// Also identify labels joined by an edge of their entry, computing the
    /// components of the degree-zero entry.
    pub connect_components: bool,
    pub max_elements: usize,
}

impl FreeBounds {
    pub fn new(max_vertices: usize, vertex_arity: ArityBound) -> Self {
        FreeBounds { max_vertices, vertex_arity, degree: 0, connect_components: false, max_elements: 2_000_000 }
    }

    pub fn components(self) -> Self {
        FreeBounds { connect_components: true, ..self }
    }
}

/// A decorated outer graph in canonical position.
#[derive(Clone, Debug, Serialize)]
pub struct FreeElement {
    pub code: CanonicalCode,
    #[serde(skip)]
    pub graph: ColoredGraph,
    pub labels: Vec<Simplex>,
    pub beta: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeClass {
    pub id: usize,
    pub beta: i64,
    /// Index of the first member.
    pub representative: usize,
    pub size: usize,
}

/// One entry of the truncated left adjoint, in one simplicial degree.
#[derive(Clone, Debug, Serialize)]
pub struct FreeEntry {
    pub pair: SchemePair,
    pub bp: Biprofile,
    pub bounds: FreeBounds,
    pub elements: Vec<FreeElement>,
    pub class_of: Vec<usize>,
    pub classes: Vec<FreeClass>,
    pub moves: usize,
    /// Moves whose target lies outside the truncation.
    pub skipped_moves: usize,
    /// Moves joining elements with different labels; empty when the label
    /// is constant on classes.
    pub beta_conflicts: Vec<(usize, usize)>,
    #[serde(skip)]
    index: HashMap<CanonicalCode, usize>,
    #[serde(skip)]
    label_index: HashMap<Biprofile, HashMap<Simplex, u64>>,
}

impl FreeEntry {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Classes whose label is `beta`.
    pub fn stratum(&self, beta: i64) -> Vec<usize> {
        self.classes.iter().filter(|c| c.beta == beta).map(|c| c.id).collect()
    }

    /// Number of classes per label.
    pub fn strata(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for c in &self.classes {
            *out.entry(c.beta).or_default() += 1;
        }
        out
    }

    pub fn element_of(&self, g: &ColoredGraph, labels: &[Simplex]) -> Option<usize> {
        let mut keys = Vec::with_capacity(labels.len());
        for (v, x) in labels.iter().enumerate() {
            keys.push(*self.label_index.get(&g.vertex_profile(v))?.get(x)?);
        }
        self.index.get(&labeled_code(g, &keys).0).copied()
    }

    pub fn class_of_decoration(&self, g: &ColoredGraph, labels: &[Simplex]) -> Option<usize> {
        self.element_of(g, labels).map(|e| self.class_of[e])
    }

    /// Class of the standard corolla decorated by `x`.
    pub fn corolla_class(&self, x: &Simplex) -> Option<usize> {
        self.class_of_decoration(&ColoredGraph::corolla(&self.bp), std::slice::from_ref(x))
    }

    pub fn class_beta(&self, class: usize) -> i64 {
        self.classes[class].beta
    }

    pub fn representative(&self, class: usize) -> &FreeElement {
        &self.elements[self.classes[class].representative]
    }
}

struct Builder<'a> {
    p: &'a GrProp,
    pair: SchemePair,
    bounds: FreeBounds,
    label_index: HashMap<Biprofile, HashMap<Simplex, u64>>,
}

impl Builder<'_> {
    fn admits(&self, bp: &Biprofile) -> bool {
        self.bounds.vertex_arity.admits(bp) && bp.total_arity() <= self.p.arity()
    }

    fn key(&self, g: &ColoredGraph, labels: &[Simplex]) -> Option<CanonicalCode> {
        let mut keys = Vec::with_capacity(labels.len());
        for (v, x) in labels.iter().enumerate() {
            keys.push(*self.label_index.get(&g.vertex_profile(v))?.get(x)?);
        }
        Some(labeled_code(g, &keys).0)
    }

    /// Targets of every generating move from one element; `None` marks a
    /// move leaving the truncation.
    fn moves(&self, g: &ColoredGraph, labels: &[Simplex]) -> Result<Vec<Option<(CanonicalCode, i64)>>, FreeError> {
        let mut out = Vec::new();
        let q = self.bounds.degree;
        let n = g.vertex_count();
        for mask in 1u32..(1 << n) {
            if mask.count_ones() < 2 {
                continue;
            }
            let set: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            let Some((h, contracted)) = contract(g, &set) else { continue };
            if !self.pair.inner.contains(&h) {
                continue;
            }
            if !self.admits(&h.biprofile()) {
                out.push(None);
                continue;
            }
            let inner: Vec<Simplex> = set.iter().map(|&v| labels[v].clone()).collect();
            let y = self.p.gamma(&Decoration::new(h, inner, q))?;
            let mut rest: Vec<Simplex> = (0..n).filter(|v| mask >> v & 1 == 0).map(|v| labels[v].clone()).collect();
            rest.push(y);
            out.push(self.key(&contracted, &rest).map(|k| (k, self.pair.beta(&contracted))));
        }
        for v in 0..n {
            let bp = g.vertex_profile(v);
            for perm in port_permutations(&bp) {
                if perm.0.iter().enumerate().all(|(i, &j)| i == j) && perm.1.iter().enumerate().all(|(i, &j)| i == j) {
                    continue;
                }
                let h = crate::properads::permuted_corolla(&bp, &perm);
                let y = self.p.gamma(&Decoration::new(h, vec![labels[v].clone()], q))?;
                let mut moved = g.clone();
                moved.vertices[v].inputs = perm.0.iter().map(|&i| g.vertices[v].inputs[i]).collect();
                moved.vertices[v].outputs = perm.1.iter().map(|&j| g.vertices[v].outputs[j]).collect();
                let mut ls = labels.to_vec();
                ls[v] = y;
                out.push(self.key(&moved, &ls).map(|k| (k, self.pair.beta(&moved))));
            }
        }
        for e in 0..g.edge_count() {
            let c = g.edges[e].color;
            if n + 1 > self.bounds.max_vertices || !self.admits(&Biprofile::unary(c)) {
                out.push(None);
                continue;
            }
            let split = split_edge(g, e);
            let mut ls = labels.to_vec();
            ls.push(degenerate_vertex(self.p.unit(c)?.cell.index, q));
            out.push(self.key(&split, &ls).map(|k| (k, self.pair.beta(&split))));
        }
        if self.bounds.connect_components && q == 0 {
            for v in 0..n {
                let e = self.p.entry(&g.vertex_profile(v))?;
                for edge in e.cells_of_dim(1) {
                    let f = e.cell_faces(edge);
                    let (a, b) = (f[1].cell.index, f[0].cell.index);
                    let here = labels[v].cell.index;
                    let other = if here == a { b } else if here == b { a } else { continue };
                    let mut ls = labels.to_vec();
                    ls[v] = Simplex::nondegenerate(CellId { dim: 0, index: other });
                    out.push(self.key(g, &ls).map(|k| (k, self.pair.beta(g))));
                }
            }
        }
        Ok(out)
    }
}

/// The subgraph spanned by `set` and the graph with `set` collapsed to one
/// new last vertex, or `None` if collapsing creates a wheel.
pub(crate) fn contract(g: &ColoredGraph, set: &[usize]) -> Option<(ColoredGraph, ColoredGraph)> {
    let inside: HashSet<usize> = set.iter().copied().collect();
    let ends = g.edge_ends();
    let src_in = |e: usize| ends[e].source.is_some_and(|p| inside.contains(&p.vertex));
    let tgt_in = |e: usize| ends[e].target.is_some_and(|p| inside.contains(&p.vertex));
    let mut h_in = Vec::new();
    let mut h_out = Vec::new();
    for &v in set {
        h_in.extend(g.vertices[v].inputs.iter().copied().filter(|&e| !src_in(e)));
        h_out.extend(g.vertices[v].outputs.iter().copied().filter(|&e| !tgt_in(e)));
    }
    let h_edges: Vec<usize> = (0..g.edge_count()).filter(|&e| src_in(e) || tgt_in(e)).collect();
    let pos: HashMap<usize, usize> = h_edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let h = ColoredGraph {
        vertices: set
            .iter()
            .map(|&v| Vertex {
                inputs: g.vertices[v].inputs.iter().map(|e| pos[e]).collect(),
                outputs: g.vertices[v].outputs.iter().map(|e| pos[e]).collect(),
            })
            .collect(),
        edges: h_edges.iter().map(|&e| g.edges[e]).collect(),
        inputs: h_in.iter().map(|e| pos[e]).collect(),
        outputs: h_out.iter().map(|e| pos[e]).collect(),
    };
    let kept: Vec<usize> = (0..g.edge_count()).filter(|&e| !(src_in(e) && tgt_in(e))).collect();
    let kpos: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut vertices: Vec<Vertex> = (0..g.vertex_count())
        .filter(|v| !inside.contains(v))
        .map(|v| Vertex {
            inputs: g.vertices[v].inputs.iter().map(|e| kpos[e]).collect(),
            outputs: g.vertices[v].outputs.iter().map(|e| kpos[e]).collect(),
        })
        .collect();
    vertices.push(Vertex { inputs: h_in.iter().map(|e| kpos[e]).collect(), outputs: h_out.iter().map(|e| kpos[e]).collect() });
    let contracted = ColoredGraph {
        vertices,
        edges: kept.iter().map(|&e| g.edges[e]).collect(),
        inputs: g.inputs.iter().map(|e| kpos[e]).collect(),
        outputs: g.outputs.iter().map(|e| kpos[e]).collect(),
    };
    contracted.is_valid().then_some((h, contracted))
}

/// `g` with a new last vertex of profile `(c;c)` placed on edge `e`.
pub(crate) fn split_edge(g: &ColoredGraph, e: usize) -> ColoredGraph {
    let mut out = g.clone();
    let fresh = out.edges.len();
    out.edges.push(Edge { color: g.edges[e].color });
    let ends = g.edge_ends();
    match ends[e].target {
        Some(p) => out.vertices[p.vertex].inputs[p.port] = fresh,
        None => {
            for o in out.outputs.iter_mut().filter(|o| **o == e) {
                *o = fresh;
            }
        }
    }
    out.vertices.push(Vertex { inputs: vec![e], outputs: vec![fresh] });
    out
}

fn port_permutations(bp: &Biprofile) -> Vec<(Vec<usize>, Vec<usize>)> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for at in 0..=p.len() {
                let mut q = p.clone();
                q.insert(at, n - 1);
                out.push(q);
            }
        }
        out
    }
    let (n, m) = bp.arity();
    let outs = perms(m);
    perms(n).into_iter().flat_map(|i| outs.iter().map(move |o| (i.clone(), o.clone()))).collect()
}

/// The entry `bp` of the left adjoint, truncated to outer graphs with at
/// most `bounds.max_vertices` vertices.
pub fn left_adjoint_truncated(
    p: &GrProp,
    pair: SchemePair,
    bp: &Biprofile,
    bounds: FreeBounds,
) -> Result<FreeEntry, FreeError> {
    if !pair.inner.is_subscheme_of(p.scheme()) {
        return Err(FreeError::SchemeMismatch(pair.inner));
    }
    let q = bounds.degree;
    let graphs: Vec<ColoredGraph> =
        enumerate_graph_reps(pair.outer, p.colors(), bp, bounds.max_vertices, bounds.vertex_arity)
            .into_iter()
            .filter(|g| (0..g.vertex_count()).all(|v| g.vertex_profile(v).total_arity() <= p.arity()))
            .collect();
    let mut label_index: HashMap<Biprofile, HashMap<Simplex, u64>> = HashMap::new();
    let mut choices_of = |g: &ColoredGraph| -> Result<Vec<Vec<Simplex>>, FreeError> {
        (0..g.vertex_count())
            .map(|v| {
                let vp = g.vertex_profile(v);
                let xs = p.entry(&vp)?.simplices(q);
                label_index
                    .entry(vp)
                    .or_insert_with(|| xs.iter().enumerate().map(|(i, x)| (x.clone(), i as u64)).collect());
                Ok(xs)
            })
            .collect()
    };
    let mut total = 0usize;
    let mut per_graph = Vec::with_capacity(graphs.len());
    for g in &graphs {
        let choices = choices_of(g)?;
        total = choices
            .iter()
            .try_fold(1usize, |a, c| a.checked_mul(c.len()))
            .and_then(|k| total.checked_add(k))
            .filter(|&t| t <= bounds.max_elements)
            .ok_or_else(|| FreeError::Bound { what: format!("decorated graphs for {bp}"), bound: bounds.max_elements })?;
        per_graph.push(choices);
    }
    // The unit labels must be indexable even when no unary vertex occurs.
    for c in p.colors().iter() {
        let u = Biprofile::unary(c);
        if bounds.vertex_arity.admits(&u) && u.total_arity() <= p.arity() {
            let xs = p.entry(&u)?.simplices(q);
            label_index.entry(u).or_insert_with(|| xs.iter().enumerate().map(|(i, x)| (x.clone(), i as u64)).collect());
        }
    }
    let builder = Builder { p, pair, bounds, label_index };
    let mut elements: Vec<FreeElement> = Vec::with_capacity(total);
    let mut index: HashMap<CanonicalCode, usize> = HashMap::with_capacity(total);
    for (g, choices) in graphs.iter().zip(&per_graph) {
        let beta = pair.beta(g);
        let mut batch = Vec::new();
        for_each_choice(choices, &mut |labels| batch.push(labels));
        let keyed: Vec<(CanonicalCode, Vec<Simplex>)> =
            batch.into_par_iter().map(|ls| (builder.key(g, &ls).expect("labels are indexed"), ls)).collect();
        for (code, labels) in keyed {
            if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(code.clone()) {
                slot.insert(elements.len());
                elements.push(FreeElement { code, graph: g.clone(), labels, beta });
            }
        }
    }
    let targets: Vec<Vec<Option<(CanonicalCode, i64)>>> = elements
        .par_iter()
        .map(|e| builder.moves(&e.graph, &e.labels))
        .collect::<Result<_, _>>()?;
    let mut uf = UnionFind::<usize>::new(elements.len());
    let mut moves = 0;
    let mut skipped = 0;
    let mut conflicts = Vec::new();
    for (i, ts) in targets.iter().enumerate() {
        for t in ts {
            moves += 1;
            match t.as_ref().and_then(|(k, b)| index.get(k).map(|&j| (j, *b))) {
                Some((j, b)) => {
                    if b != elements[i].beta {
                        conflicts.push((i, j));
                    }
                    uf.union(i, j);
                }
                None => skipped += 1,
            }
        }
    }
    let labels = uf.into_labeling();
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<FreeClass> = Vec::new();
    let mut class_of = Vec::with_capacity(elements.len());
    for (i, root) in labels.iter().enumerate() {
        let id = *ids.entry(*root).or_insert_with(|| {
            classes.push(FreeClass { id: classes.len(), beta: elements[i].beta, representative: i, size: 0 });
            classes.len() - 1
        });
        classes[id].size += 1;
        if classes[id].beta != elements[i].beta && !conflicts.iter().any(|&(a, b)| a == i || b == i) {
            conflicts.push((classes[id].representative, i));
        }
        class_of.push(id);
    }
    Ok(FreeEntry {
        pair,
        bp: bp.clone(),
        bounds,
        elements,
        class_of,
        classes,
        moves,
        skipped_moves: skipped,
        beta_conflicts: conflicts,
        index,
        label_index: builder.label_index,
    })
}

/// Outcome of comparing the bottom stratum with the entry of `P`.
#[derive(Clone, Debug, Serialize)]
pub struct BetaReport {
    pub bp: Biprofile,
    pub entry_size: usize,
    pub stratum_classes: usize,
    pub strata: BTreeMap<i64, usize>,
    /// Distinct labels of the corolla landing in one class.
    pub collisions: usize,
    /// Bottom-stratum classes not containing a decorated corolla.
    pub unreached: usize,
    /// Bottom-stratum elements whose composite labels a corolla in another
    /// class.
    pub reduction_mismatches: usize,
    pub beta_conflicts: usize,
    pub elements: usize,
}

impl BetaReport {
    pub fn holds(&self) -> bool {
        self.collisions == 0 && self.unreached == 0 && self.reduction_mismatches == 0 && self.beta_conflicts == 0
    }
}

/// Checks that the bottom stratum of the entry `bp` is a copy of `P(bp)`,
/// reached by composing each decorated graph down to the corolla.
pub fn beta_decomposition_check(
    p: &GrProp,
    pair: SchemePair,
    bp: &Biprofile,
    bounds: FreeBounds,
) -> Result<BetaReport, FreeError> {
    if !bounds.vertex_arity.admits(bp) || bounds.max_vertices == 0 {
        return Err(FreeError::Unsupported(format!("the corolla on {bp} is outside the truncation")));
    }
    let fe = left_adjoint_truncated(p, pair, bp, bounds)?;
    beta_report(p, &fe)
}

fn beta_report(p: &GrProp, fe: &FreeEntry) -> Result<BetaReport, FreeError> {
    let xs = p.entry(&fe.bp)?.simplices(fe.bounds.degree);
    let mut hit: HashMap<usize, usize> = HashMap::new();
    let mut collisions = 0;
    for x in &xs {
        let c = fe.corolla_class(x).expect("corolla decorations are enumerated");
        if hit.insert(c, 1).is_some() {
            collisions += 1;
        }
    }
    let bottom = fe.stratum(0);
    let unreached = bottom.iter().filter(|c| !hit.contains_key(c)).count();
    let mut mismatches = 0;
    for (i, e) in fe.elements.iter().enumerate() {
        if e.beta != 0 {
            continue;
        }
        if !fe.pair.inner.contains(&e.graph) {
            mismatches += 1;
            continue;
        }
        let r = p.gamma(&Decoration::new(e.graph.clone(), e.labels.clone(), fe.bounds.degree))?;
        if fe.corolla_class(&r) != Some(fe.class_of[i]) {
            mismatches += 1;
        }
    }
    Ok(BetaReport {
        bp: fe.bp.clone(),
        entry_size: xs.len(),
        stratum_classes: bottom.len(),
        strata: fe.strata(),
        collisions,
        unreached,
        reduction_mismatches: mismatches,
        beta_conflicts: fe.beta_conflicts.len(),
        elements: fe.elements.len(),
    })
}

/// The unit `P(bp) -> LP(bp)` on the simplices of one degree.
#[derive(Clone, Debug, Serialize)]
pub struct UnitMap {
    pub bp: Biprofile,
    /// Class of each simplex of `P(bp)`, in the order of `simplices`.
    pub images: Vec<usize>,
    pub injective: bool,
}

pub fn unit_map(p: &GrProp, pair: SchemePair, bp: &Biprofile, bounds: FreeBounds) -> Result<UnitMap, FreeError> {
    let fe = left_adjoint_truncated(p, pair, bp, bounds)?;
    unit_of(p, &fe)
}

fn unit_of(p: &GrProp, fe: &FreeEntry) -> Result<UnitMap, FreeError> {
    let xs = p.entry(&fe.bp)?.simplices(fe.bounds.degree);
    let images: Vec<usize> = xs.iter().map(|x| fe.corolla_class(x).expect("corolla decorations are enumerated")).collect();
    let distinct: HashSet<usize> = images.iter().copied().collect();
    Ok(UnitMap { bp: fe.bp.clone(), injective: distinct.len() == images.len(), images })
}

/// The unit on every biprofile of `P` admitted by the vertex bound.
pub fn unit(p: &GrProp, pair: SchemePair, bounds: FreeBounds) -> Result<Vec<UnitMap>, FreeError> {
    super::biprofiles_up_to(p.colors(), bounds.vertex_arity.max_inputs, bounds.vertex_arity.max_outputs)
        .into_iter()
        .filter(|bp| bp.total_arity() <= p.arity())
        .map(|bp| unit_map(p, pair, &bp, bounds))
        .collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct WellBehavedReport {
    /// The unit is the identity on colors.
    pub colors_identity: bool,
    /// Isomorphisms of the component category of `P`.
    pub source_isos: usize,
    /// Isomorphisms of the component category of the truncated left adjoint.
    pub target_isos: usize,
    /// Isomorphisms of `P` not sent to isomorphisms.
    pub not_preserved: usize,
    /// Distinct isomorphisms of `P` with the same image.
    pub collisions: usize,
    /// Isomorphisms of the left adjoint outside the image of the unit.
    pub unreached: usize,
    /// Inverse pairs with a partner outside the bottom stratum.
    pub off_stratum_inverses: usize,
    pub graft_checks: usize,
    pub graft_failures: usize,
    /// Inverse pairs were searched in the bottom stratum only.
    pub bottom_only: bool,
}

impl WellBehavedReport {
    pub fn holds(&self) -> bool {
        self.colors_identity
            && self.not_preserved == 0
            && self.collisions == 0
            && self.unreached == 0
            && self.off_stratum_inverses == 0
            && self.graft_failures == 0
    }
}

/// Compares isomorphisms of the component categories of `P` and of its
/// truncated left adjoint along the unit, and checks that grafting adds
/// stratum labels.
pub fn well_behaved_check(pair: SchemePair, p: &GrProp, bounds: FreeBounds) -> Result<WellBehavedReport, FreeError> {
    let bounds = FreeBounds { degree: 0, ..bounds }.components();
    let colors: Vec<Color> = p.colors().iter().collect();
    let k = colors.len();
    let mut entries: Vec<Vec<FreeEntry>> = Vec::with_capacity(k);
    for &a in &colors {
        let mut row = Vec::with_capacity(k);
        for &b in &colors {
            row.push(left_adjoint_truncated(p, pair, &Biprofile::new(vec![a], vec![b]), bounds)?);
        }
        entries.push(row);
    }
    let mut report = WellBehavedReport { colors_identity: true, ..Default::default() };

    // Composite of two classes is an identity exactly when its class is the
    // class of the edge.
    let is_identity = |a: usize, b: usize, f: usize, g: usize| -> Result<bool, FreeError> {
        let x = entries[a][b].representative(f);
        let y = entries[b][a].representative(g);
        let glued = graft(&x.graph, &y.graph)?;
        let mut labels = x.labels.clone();
        labels.extend(y.labels.iter().cloned());
        let target = &entries[a][a];
        let id = target
            .class_of_decoration(&ColoredGraph::edge(colors[a]), &[])
            .expect("the edge is an object of every truncation");
        if glued.vertex_count() <= bounds.max_vertices {
            if let Some(c) = target.class_of_decoration(&glued, &labels) {
                return Ok(c == id);
            }
        }
        if pair.beta(&glued) != 0 {
            return Ok(false);
        }
        let r = p.gamma(&Decoration::new(glued, labels, 0))?;
        Ok(target.corolla_class(&r) == Some(id))
    };

    // With labels constant on classes, an identity composite has label zero
    // and additivity puts both factors in the bottom stratum; the graft
    // checks below test additivity.
    let bottom_only = entries.iter().flatten().all(|e| e.beta_conflicts.is_empty());
    report.bottom_only = bottom_only;
    let candidates = |e: &FreeEntry| -> Vec<usize> {
        (0..e.class_count()).filter(|&c| !bottom_only || e.class_beta(c) == 0).collect()
    };
    let mut target_isos: HashSet<(usize, usize, usize)> = HashSet::new();
    for a in 0..k {
        for b in 0..k {
            for f in candidates(&entries[a][b]) {
                for g in candidates(&entries[b][a]) {
                    if is_identity(a, b, f, g)? && is_identity(b, a, g, f)? {
                        target_isos.insert((a, b, f));
                        if entries[a][b].class_beta(f) != 0 || entries[b][a].class_beta(g) != 0 {
                            report.off_stratum_inverses += 1;
                        }
                    }
                }
            }
        }
    }
    report.target_isos = target_isos.len();

    let cat = pi0_category(p)?;
    let isos = cat.isos();
    report.source_isos = isos.len();
    let mut images: HashSet<(usize, usize, usize)> = HashSet::new();
    for arrow in isos {
        let bp = Biprofile::new(vec![colors[arrow.src]], vec![colors[arrow.tgt]]);
        let e = p.entry(&bp)?;
        let pi = e.pi0();
        let rep = pi.vertex_class.iter().position(|&c| c == arrow.index).expect("every component has a vertex");
        let class = entries[arrow.src][arrow.tgt]
            .corolla_class(&Simplex::nondegenerate(CellId { dim: 0, index: rep }))
            .expect("corolla decorations are enumerated");
        let key = (arrow.src, arrow.tgt, class);
        if !target_isos.contains(&key) {
            report.not_preserved += 1;
        }
        if !images.insert(key) {
            report.collisions += 1;
        }
    }
    report.unreached = target_isos.difference(&images).count();

    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let xs = distinct_graphs(&entries[a][b]);
                let ys = distinct_graphs(&entries[b][c]);
                for x in &xs {
                    for y in &ys {
                        let glued = graft(x, y)?;
                        report.graft_checks += 1;
                        if pair.beta(&glued) != pair.beta(x) + pair.beta(y) {
                            report.graft_failures += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

fn distinct_graphs(fe: &FreeEntry) -> Vec<ColoredGraph> {
    let mut seen = HashSet::new();
    fe.elements.iter().filter(|e| seen.insert(crate::graphs::canon::code_of(&e.graph))).map(|e| e.graph.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Scheme;
    use crate::ssets::FinSimplicialSet;

    fn c() -> Color {
        Color(0)
    }

    fn b(n: usize, a: (usize, usize)) -> FreeBounds {
        FreeBounds::new(n, ArityBound::new(a.0, a.1))
    }

    #[test]
    fn terminal_bottom_stratum_is_a_point() {
        let p = GrProp::terminal(Scheme::Properad, 1, false).unwrap();
        let bp = Biprofile::unary(c());
        let fe = left_adjoint_truncated(&p, SchemePair::C_TO_PROP, &bp, b(2, (1, 1))).unwrap();
        assert_eq!(fe.stratum(0).len(), 1);
        assert!(fe.beta_conflicts.is_empty());
        let r = beta_decomposition_check(&p, SchemePair::C_TO_PROP, &bp, b(2, (2, 2))).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn no_vertices_leaves_the_edge() {
        let p = GrProp::terminal(Scheme::Properad, 1, false).unwrap();
        let fe = left_adjoint_truncated(&p, SchemePair::C_TO_PROP, &Biprofile::unary(c()), b(0, (1, 1))).unwrap();
        assert_eq!(fe.class_count(), 1);
        assert_eq!(fe.elements.len(), 1);
    }

    #[test]
    fn endomorphism_bottom_stratum_matches_the_entry() {
        let p = GrProp::endomorphism(Scheme::Properad, vec![2]).unwrap();
        let bp = Biprofile::unary(c());
        let r = beta_decomposition_check(&p, SchemePair::C_TO_PROP, &bp, b(2, (1, 1))).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.stratum_classes, 4);
        let u = unit_map(&p, SchemePair::C_TO_PROP, &bp, b(2, (1, 1))).unwrap();
        assert!(u.injective);
    }

    #[test]
    fn contraction_round_trips_through_substitution() {
        let chain = crate::properads::unary_chain(c(), c(), c());
        let (h, g) = contract(&chain, &[0, 1]).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(g.vertex_count(), 1);
        let back = crate::substitution::substitute(&crate::substitution::SubstitutionData {
            target: g,
            assignment: vec![h],
        })
        .unwrap();
        assert_eq!(crate::graphs::canon::code_of(&back), crate::graphs::canon::code_of(&chain));
    }

    #[test]
    fn monoid_isomorphisms_survive() {
        let p = GrProp::monoid(Scheme::Properad, FinSimplicialSet::simplex(1), false).unwrap();
        let r = well_behaved_check(SchemePair::C_TO_PROP, &p, b(2, (1, 1))).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.source_isos, 1);
    }
}
