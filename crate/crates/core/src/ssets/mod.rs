//! Finite simplicial sets presented by their nondegenerate simplices.
//!
//! Every simplex is written uniquely as `s^*(x)` with `x` nondegenerate and
//! `s` a monotone surjection (Eilenberg–Zilber). A [`Simplex`] stores the cell
//! `x` together with `s` as its list of values. Face maps of the nondegenerate
//! cells are stored explicitly; all other simplicial operators are computed by
//! factoring composites into a surjection after an injection.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod build;
pub mod homology;
pub mod json;
pub mod kan;
mod map;
pub mod weq;

pub use build::SSetBuilder;
pub use homology::{homology, HomologyGroup};
pub use kan::{is_kan_fibration, is_trivial_fibration, KanWitness, LiftVerdict};
pub use map::{enumerate_maps, SSetMap};
pub use weq::{weak_equivalence_verdict, Verdict, WeqReason};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SSetError {
    #[error("horn index {k} out of range for dimension {p}")]
    HornIndex { k: usize, p: usize },
    #[error("simplex of dimension {dim} given {found} faces")]
    FaceCount { dim: usize, found: usize },
    #[error("face {index} of a {dim}-simplex has dimension {found}")]
    FaceDimension { dim: usize, index: usize, found: usize },
    #[error("unknown cell {0:?}")]
    UnknownCell(CellId),
    #[error("simplicial identity d{i} d{j} = d{} d{i} fails", .j - 1)]
    SimplicialIdentity { i: usize, j: usize },
    #[error("map does not commute with face {face} on cell {cell:?}")]
    NotSimplicial { cell: CellId, face: usize },
    #[error("map image of cell {cell:?} has dimension {found}")]
    ImageDimension { cell: CellId, found: usize },
    #[error("map is not determined: {0}")]
    Undetermined(String),
    #[error("malformed simplicial set description: {0}")]
    Malformed(String),
}

/// A nondegenerate simplex: its dimension and index within that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellId {
    pub dim: usize,
    pub index: usize,
}

/// A possibly degenerate simplex `s^*(cell)`, where `degeneracy` lists the
/// values of the monotone surjection `s: [n] -> [cell.dim]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex {
    pub cell: CellId,
    pub degeneracy: Vec<u8>,
}

impl Simplex {
    pub fn nondegenerate(cell: CellId) -> Self {
        Simplex { cell, degeneracy: (0..=cell.dim as u8).collect() }
    }

    pub fn dim(&self) -> usize {
        self.degeneracy.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.dim() != self.cell.dim
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            write!(f, "s{:?}x{}_{}", self.degeneracy, self.cell.dim, self.cell.index)
        } else {
            write!(f, "x{}_{}", self.cell.dim, self.cell.index)
        }
    }
}

/// The coface `[n-1] -> [n]` skipping `i`, as a value list.
pub fn coface(n: usize, i: usize) -> Vec<u8> {
    (0..=n as u8).filter(|&x| x as usize != i).collect()
}

/// The codegeneracy `[n+1] -> [n]` hitting `j` twice.
pub fn codegeneracy(n: usize, j: usize) -> Vec<u8> {
    let mut v: Vec<u8> = (0..=n as u8).collect();
    v.insert(j, j as u8);
    v
}

/// Monotone surjections `[n] -> [k]` as value lists, in lexicographic order.
pub fn surjections(n: usize, k: usize) -> Vec<Vec<u8>> {
    // choose which k of the n gaps step up
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur = vec![0u8];
    fn go(n: usize, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n + 1 {
            if *cur.last().unwrap() as usize == k {
                out.push(cur.clone());
            }
            return;
        }
        let last = *cur.last().unwrap();
        let remaining = n + 1 - cur.len();
        for step in 0..=1u8 {
            let next = last + step;
            if (next as usize) > k || (k - next as usize) > remaining - 1 {
                continue;
            }
            cur.push(next);
            go(n, k, cur, out);
            cur.pop();
        }
    }
    go(n, k, &mut cur, &mut out);
    out
}

/// A finite simplicial set. `faces[d][i]` lists the faces `d_0 .. d_d` of the
/// `i`-th nondegenerate `d`-simplex (empty for vertices).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FinSimplicialSet {
    faces: Vec<Vec<Vec<Simplex>>>,
}

impl FinSimplicialSet {
    pub fn empty() -> Self {
        FinSimplicialSet::default()
    }

    /// `Δ[0]`.
    pub fn point() -> Self {
        Self::discrete(1)
    }

    pub fn discrete(n: usize) -> Self {
        FinSimplicialSet { faces: vec![vec![Vec::new(); n]] }
    }

    pub(crate) fn from_faces_unchecked(mut faces: Vec<Vec<Vec<Simplex>>>) -> Self {
        while faces.last().is_some_and(Vec::is_empty) {
            faces.pop();
        }
        FinSimplicialSet { faces }
    }

    /// Largest dimension of a nondegenerate simplex; `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        self.faces.iter().rposition(|c| !c.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.dimension().is_none()
    }

    /// Number of nondegenerate simplices in dimension `d`.
    pub fn count(&self, d: usize) -> usize {
        self.faces.get(d).map_or(0, Vec::len)
    }

    pub fn total_cells(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn vertex_count(&self) -> usize {
        self.count(0)
    }

    pub fn cells(&self) -> impl Iterator<Item = CellId> + '_ {
        self.faces
            .iter()
            .enumerate()
            .flat_map(|(dim, c)| (0..c.len()).map(move |index| CellId { dim, index }))
    }

    pub fn cells_of_dim(&self, dim: usize) -> impl Iterator<Item = CellId> {
        (0..self.count(dim)).map(move |index| CellId { dim, index })
    }

    pub fn contains(&self, c: CellId) -> bool {
        c.index < self.count(c.dim)
    }

    /// The stored faces of a nondegenerate cell.
    pub fn cell_faces(&self, c: CellId) -> &[Simplex] {
        &self.faces[c.dim][c.index]
    }

    /// `θ^*(x)` for a monotone `θ: [m] -> [n]` given by its values, `n = dim x`.
    pub fn apply(&self, theta: &[u8], x: &Simplex) -> Simplex {
        let phi: Vec<u8> = theta.iter().map(|&t| x.degeneracy[t as usize]).collect();
        self.apply_to_cell(phi, x.cell)
    }

    fn apply_to_cell(&self, mut phi: Vec<u8>, mut cell: CellId) -> Simplex {
        loop {
            // smallest value of [cell.dim] missed by phi
            let mut missing = None;
            let mut expect = 0u8;
            for &v in &phi {
                if v > expect {
                    missing = Some(expect);
                    break;
                }
                if v == expect {
                    expect += 1;
                }
            }
            if missing.is_none() && (expect as usize) <= cell.dim {
                missing = Some(expect);
            }
            let Some(i) = missing else {
                return Simplex { cell, degeneracy: phi };
            };
            let face = &self.faces[cell.dim][cell.index][i as usize];
            for v in phi.iter_mut() {
                if *v > i {
                    *v -= 1;
                }
                *v = face.degeneracy[*v as usize];
            }
            cell = face.cell;
        }
    }

    pub fn face(&self, i: usize, x: &Simplex) -> Simplex {
        self.apply(&coface(x.dim(), i), x)
    }

    pub fn degeneracy(&self, j: usize, x: &Simplex) -> Simplex {
        self.apply(&codegeneracy(x.dim(), j), x)
    }

    /// The `i`-th vertex of `x`.
    pub fn vertex(&self, x: &Simplex, i: usize) -> usize {
        self.apply(&[i as u8], x).cell.index
    }

    pub fn vertices_of(&self, x: &Simplex) -> Vec<usize> {
        (0..=x.dim()).map(|i| self.vertex(x, i)).collect()
    }

    /// Every `n`-simplex, degenerate ones included, ordered by cell then surjection.
    pub fn simplices(&self, n: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for k in 0..=n.min(self.faces.len().saturating_sub(1)) {
            let surj = surjections(n, k);
            for c in self.cells_of_dim(k) {
                out.extend(surj.iter().map(|s| Simplex { cell: c, degeneracy: s.clone() }));
            }
        }
        out
    }

    /// Index of every `n`-simplex in [`Self::simplices`].
    pub fn simplex_index(&self, n: usize) -> (Vec<Simplex>, HashMap<Simplex, usize>) {
        let list = self.simplices(n);
        let index = list.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        (list, index)
    }

    /// Connected components: the component of each vertex and their number.
    pub fn pi0(&self) -> Pi0 {
        let n = self.vertex_count();
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(n);
        for e in self.cells_of_dim(1) {
            let f = self.cell_faces(e);
            uf.union(f[0].cell.index, f[1].cell.index);
        }
        let labels = uf.into_labeling();
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let vertex_class: Vec<usize> = labels
            .iter()
            .map(|&l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
            .collect();
        Pi0 { count: ids.len(), vertex_class }
    }

    /// Component of a cell, via its first vertex.
    pub fn component_of(&self, pi0: &Pi0, c: CellId) -> usize {
        pi0.vertex_class[self.vertex(&Simplex::nondegenerate(c), 0)]
    }

    /// Cells whose stored faces mention `c` (as a possibly degenerate face).
    pub fn cofaces(&self) -> HashMap<CellId, Vec<(CellId, usize)>> {
        let mut out: HashMap<CellId, Vec<(CellId, usize)>> = HashMap::new();
        for c in self.cells() {
            for (i, f) in self.cell_faces(c).iter().enumerate() {
                out.entry(f.cell).or_default().push((c, i));
            }
        }
        out
    }

    /// Sub-simplicial set on the cells where `keep` holds; `keep` must be
    /// closed under faces. Returns the new set and, for each old cell, its
    /// new id if kept.
    pub fn restrict(&self, keep: &dyn Fn(CellId) -> bool) -> (FinSimplicialSet, HashMap<CellId, CellId>) {
        let mut renumber = HashMap::new();
        let mut faces: Vec<Vec<Vec<Simplex>>> = Vec::new();
        for (dim, cells) in self.faces.iter().enumerate() {
            let mut layer = Vec::new();
            for (index, fs) in cells.iter().enumerate() {
                let old = CellId { dim, index };
                if !keep(old) {
                    continue;
                }
                let new_faces = fs
                    .iter()
                    .map(|f| Simplex { cell: renumber[&f.cell], degeneracy: f.degeneracy.clone() })
                    .collect();
                renumber.insert(old, CellId { dim, index: layer.len() });
                layer.push(new_faces);
            }
            faces.push(layer);
        }
        (FinSimplicialSet::from_faces_unchecked(faces), renumber)
    }
}

/// Vertices modulo the relation generated by edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi0 {
    pub count: usize,
    pub vertex_class: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_counts() {
        assert_eq!(surjections(3, 1).len(), 3);
        assert_eq!(surjections(4, 2).len(), 6);
        assert_eq!(surjections(2, 2), vec![vec![0, 1, 2]]);
        assert!(surjections(1, 2).is_empty());
    }

    #[test]
    fn simplex_and_faces() {
        let d2 = FinSimplicialSet::simplex(2);
        assert_eq!((d2.count(0), d2.count(1), d2.count(2)), (3, 3, 1));
        let top = Simplex::nondegenerate(CellId { dim: 2, index: 0 });
        // simplicial identities on the top cell through degeneracies
        for j in 0..=2 {
            let s = d2.degeneracy(j, &top);
            assert!(s.is_degenerate());
            assert_eq!(d2.face(j, &s), top);
            assert_eq!(d2.face(j + 1, &s), top);
        }
        assert_eq!(d2.vertices_of(&top), vec![0, 1, 2]);
    }

    #[test]
    fn simplex_counts_include_degenerates() {
        // n-simplices of Δ[1]: monotone maps [n] -> [1]
        let d1 = FinSimplicialSet::simplex(1);
        assert_eq!(d1.simplices(3).len(), 5);
    }

    #[test]
    fn pi0_of_standard_pieces() {
        assert_eq!(FinSimplicialSet::boundary(1).pi0().count, 2);
        assert_eq!(FinSimplicialSet::simplex(3).pi0().count, 1);
        assert_eq!(FinSimplicialSet::horn(1, 2).unwrap().pi0().count, 1);
    }
}
