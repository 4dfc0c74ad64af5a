//! Constructors: standard cells, ordered simplicial complexes, products and
//! coproducts, and a checked builder.

use std::collections::{BTreeSet, HashMap};

use super::{surjections, CellId, FinSimplicialSet, SSetError, SSetMap, Simplex};

/// Adds nondegenerate simplices one at a time, checking the simplicial
/// identities `d_i d_j = d_{j-1} d_i` for `i < j`.
#[derive(Clone, Debug, Default)]
pub struct SSetBuilder {
    faces: Vec<Vec<Vec<Simplex>>>,
}

impl SSetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self) -> CellId {
        self.push(0, Vec::new())
    }

    pub fn add_vertices(&mut self, n: usize) -> Vec<CellId> {
        (0..n).map(|_| self.add_vertex()).collect()
    }

    fn push(&mut self, dim: usize, faces: Vec<Simplex>) -> CellId {
        while self.faces.len() <= dim {
            self.faces.push(Vec::new());
        }
        self.faces[dim].push(faces);
        CellId { dim, index: self.faces[dim].len() - 1 }
    }

    /// Adds a nondegenerate simplex of dimension `faces.len() - 1` with the
    /// given faces `d_0, d_1, ...`.
    pub fn add_simplex(&mut self, faces: Vec<Simplex>) -> Result<CellId, SSetError> {
        let dim = faces.len().saturating_sub(1);
        if dim == 0 {
            return Err(SSetError::FaceCount { dim: 0, found: faces.len() });
        }
        for (index, f) in faces.iter().enumerate() {
            if f.dim() != dim - 1 {
                return Err(SSetError::FaceDimension { dim, index, found: f.dim() });
            }
            if f.cell.index >= self.faces.get(f.cell.dim).map_or(0, Vec::len) {
                return Err(SSetError::UnknownCell(f.cell));
            }
            if f.degeneracy.windows(2).any(|w| w[1] < w[0] || w[1] > w[0] + 1)
                || f.degeneracy.first() != Some(&0)
                || *f.degeneracy.last().unwrap() as usize != f.cell.dim
            {
                return Err(SSetError::Malformed(format!("face {index} has a non-surjective degeneracy")));
            }
        }
        let probe = FinSimplicialSet::from_faces_unchecked(self.faces.clone());
        for j in (0..faces.len()).filter(|_| dim >= 2) {
            for i in 0..j {
                if probe.face(i, &faces[j]) != probe.face(j - 1, &faces[i]) {
                    return Err(SSetError::SimplicialIdentity { i, j });
                }
            }
        }
        Ok(self.push(dim, faces))
    }

    /// Convenience for adding an edge between two vertices.
    pub fn add_edge(&mut self, from: CellId, to: CellId) -> Result<CellId, SSetError> {
        self.add_simplex(vec![Simplex::nondegenerate(to), Simplex::nondegenerate(from)])
    }

    pub fn build(self) -> FinSimplicialSet {
        FinSimplicialSet::from_faces_unchecked(self.faces)
    }
}

impl FinSimplicialSet {
    /// `Δ[p]`.
    pub fn simplex(p: usize) -> Self {
        Self::from_maximal_faces(&[(0..=p).collect()])
    }

    /// `∂Δ[p]`; empty for `p = 0`.
    pub fn boundary(p: usize) -> Self {
        if p == 0 {
            return Self::empty();
        }
        let faces: Vec<Vec<usize>> = (0..=p).map(|i| (0..=p).filter(|&x| x != i).collect()).collect();
        Self::from_maximal_faces(&faces)
    }

    /// `Λ[k, p]`, the union of the faces of `Δ[p]` other than the `k`-th.
    pub fn horn(k: usize, p: usize) -> Result<Self, SSetError> {
        if k > p {
            return Err(SSetError::HornIndex { k, p });
        }
        if p == 0 {
            return Ok(Self::empty());
        }
        let faces: Vec<Vec<usize>> =
            (0..=p).filter(|&i| i != k).map(|i| (0..=p).filter(|&x| x != i).collect()).collect();
        Ok(Self::from_maximal_faces(&faces))
    }

    /// The ordered simplicial complex generated by the given vertex lists
    /// (each sorted increasingly). Vertices are numbered by value order.
    pub fn from_maximal_faces(maximal: &[Vec<usize>]) -> Self {
        Self::ordered_complex(maximal).0
    }

    /// As [`Self::from_maximal_faces`], also returning the vertex list of every cell.
    pub fn ordered_complex(maximal: &[Vec<usize>]) -> (Self, HashMap<CellId, Vec<usize>>) {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in maximal {
            let n = f.len();
            for mask in 1u64..(1u64 << n) {
                all.insert((0..n).filter(|&i| mask & (1 << i) != 0).map(|i| f[i]).collect());
            }
        }
        let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
        for s in all {
            let d = s.len() - 1;
            while by_dim.len() <= d {
                by_dim.push(Vec::new());
            }
            by_dim[d].push(s);
        }
        let mut id: HashMap<Vec<usize>, CellId> = HashMap::new();
        let mut faces = Vec::new();
        let mut names = HashMap::new();
        for (dim, layer) in by_dim.iter().enumerate() {
            let mut fl = Vec::new();
            for (index, s) in layer.iter().enumerate() {
                let c = CellId { dim, index };
                id.insert(s.clone(), c);
                names.insert(c, s.clone());
                let fs = if dim == 0 {
                    Vec::new()
                } else {
                    (0..=dim)
                        .map(|i| {
                            let mut t = s.clone();
                            t.remove(i);
                            Simplex::nondegenerate(id[&t])
                        })
                        .collect()
                };
                fl.push(fs);
            }
            faces.push(fl);
        }
        (Self::from_faces_unchecked(faces), names)
    }

    /// Disjoint union, `self` first, with the two inclusions.
    pub fn coproduct(&self, other: &Self) -> (Self, SSetMap, SSetMap) {
        let dims = self.faces.len().max(other.faces.len());
        let mut faces: Vec<Vec<Vec<Simplex>>> = vec![Vec::new(); dims];
        for (d, layer) in self.faces.iter().enumerate() {
            faces[d].extend(layer.iter().cloned());
        }
        let shift: Vec<usize> = (0..dims).map(|d| self.count(d)).collect();
        for (d, layer) in other.faces.iter().enumerate() {
            for fs in layer {
                faces[d].push(
                    fs.iter()
                        .map(|f| Simplex {
                            cell: CellId { dim: f.cell.dim, index: f.cell.index + shift[f.cell.dim] },
                            degeneracy: f.degeneracy.clone(),
                        })
                        .collect(),
                );
            }
        }
        let sum = Self::from_faces_unchecked(faces);
        let left = SSetMap::from_cell_images_unchecked(
            self.clone(),
            sum.clone(),
            self.cells().map(|c| (c, Simplex::nondegenerate(c))).collect(),
        );
        let right = SSetMap::from_cell_images_unchecked(
            other.clone(),
            sum.clone(),
            other
                .cells()
                .map(|c| (c, Simplex::nondegenerate(CellId { dim: c.dim, index: c.index + shift[c.dim] })))
                .collect(),
        );
        (sum, left, right)
    }

    /// `k`-fold product with its projections; `Δ[0]` when `k = 0`.
    pub fn power(&self, k: usize) -> (Self, Vec<SSetMap>) {
        if k == 0 {
            return (Self::point(), Vec::new());
        }
        let mut acc = self.clone();
        let mut projections = vec![SSetMap::identity(self.clone())];
        for _ in 1..k {
            let (p, left, right) = acc.product(self);
            projections = projections.iter().map(|q| left.then(q)).collect();
            projections.push(right);
            acc = p;
        }
        (acc, projections)
    }

    /// Categorical product with its two projections.
    ///
    /// Nondegenerate `n`-simplices are pairs `(s^*x, t^*y)` of nondegenerate
    /// `x`, `y` and surjections with no common repeated step.
    pub fn product(&self, other: &Self) -> (Self, SSetMap, SSetMap) {
        let dx = self.dimension();
        let dy = other.dimension();
        let (Some(dx), Some(dy)) = (dx, dy) else {
            let e = Self::empty();
            return (
                e.clone(),
                SSetMap::from_cell_images_unchecked(e.clone(), self.clone(), Vec::new()),
                SSetMap::from_cell_images_unchecked(e, other.clone(), Vec::new()),
            );
        };
        type Key = (CellId, Vec<u8>, CellId, Vec<u8>);
        let mut layers: Vec<Vec<Key>> = vec![Vec::new(); dx + dy + 1];
        for n in 0..=dx + dy {
            for a in 0..=dx.min(n) {
                for b in 0..=dy.min(n) {
                    let sa = surjections(n, a);
                    let sb = surjections(n, b);
                    for s in &sa {
                        for t in &sb {
                            let joint_repeat =
                                (0..n).any(|i| s[i] == s[i + 1] && t[i] == t[i + 1]);
                            if joint_repeat {
                                continue;
                            }
                            for x in self.cells_of_dim(a) {
                                for y in other.cells_of_dim(b) {
                                    layers[n].push((x, s.clone(), y, t.clone()));
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut id: HashMap<Key, CellId> = HashMap::new();
        for (dim, layer) in layers.iter().enumerate() {
            for (index, k) in layer.iter().enumerate() {
                id.insert(k.clone(), CellId { dim, index });
            }
        }
        let mut faces: Vec<Vec<Vec<Simplex>>> = Vec::new();
        for (n, layer) in layers.iter().enumerate() {
            let mut fl = Vec::new();
            for (x, s, y, t) in layer {
                if n == 0 {
                    fl.push(Vec::new());
                    continue;
                }
                let sx = Simplex { cell: *x, degeneracy: s.clone() };
                let ty = Simplex { cell: *y, degeneracy: t.clone() };
                let fs = (0..=n)
                    .map(|i| {
                        let u = self.face(i, &sx);
                        let v = other.face(i, &ty);
                        normalize_pair(&u, &v, &id)
                    })
                    .collect();
                fl.push(fs);
            }
            faces.push(fl);
        }
        let prod = Self::from_faces_unchecked(faces);
        let mut p1 = Vec::new();
        let mut p2 = Vec::new();
        for (n, layer) in layers.iter().enumerate() {
            for (index, (x, s, y, t)) in layer.iter().enumerate() {
                let c = CellId { dim: n, index };
                p1.push((c, Simplex { cell: *x, degeneracy: s.clone() }));
                p2.push((c, Simplex { cell: *y, degeneracy: t.clone() }));
            }
        }
        let pr1 = SSetMap::from_cell_images_unchecked(prod.clone(), self.clone(), p1);
        let pr2 = SSetMap::from_cell_images_unchecked(prod.clone(), other.clone(), p2);
        (prod, pr1, pr2)
    }
}

/// Writes a pair of simplices of equal dimension as a degeneracy of a
/// nondegenerate product cell.
fn normalize_pair(
    u: &Simplex,
    v: &Simplex,
    id: &HashMap<(CellId, Vec<u8>, CellId, Vec<u8>), CellId>,
) -> Simplex {
    let n = u.dim();
    // collapse positions where both sides repeat
    let mut rho = vec![0u8; n + 1];
    let mut s = vec![u.degeneracy[0]];
    let mut t = vec![v.degeneracy[0]];
    for i in 0..n {
        let rep = u.degeneracy[i] == u.degeneracy[i + 1] && v.degeneracy[i] == v.degeneracy[i + 1];
        rho[i + 1] = if rep { rho[i] } else { rho[i] + 1 };
        if !rep {
            s.push(u.degeneracy[i + 1]);
            t.push(v.degeneracy[i + 1]);
        }
    }
    let cell = id[&(u.cell, s, v.cell, t)];
    Simplex { cell, degeneracy: rho }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horn_cell_counts() {
        let h = FinSimplicialSet::horn(1, 2).unwrap();
        assert_eq!((h.count(0), h.count(1), h.count(2)), (3, 2, 0));
        assert!(FinSimplicialSet::horn(3, 2).is_err());
    }

    #[test]
    fn boundary_of_an_edge() {
        let b = FinSimplicialSet::boundary(1);
        assert_eq!((b.count(0), b.count(1)), (2, 0));
        assert!(FinSimplicialSet::boundary(0).is_empty());
    }

    #[test]
    fn square_has_two_triangles() {
        let d1 = FinSimplicialSet::simplex(1);
        let (p, pr1, pr2) = d1.product(&d1);
        assert_eq!((p.count(0), p.count(1), p.count(2)), (4, 5, 2));
        assert!(pr1.check().is_ok());
        assert!(pr2.check().is_ok());
    }

    #[test]
    fn product_with_a_point() {
        let h = FinSimplicialSet::horn(0, 2).unwrap();
        let (p, _, _) = h.product(&FinSimplicialSet::point());
        assert_eq!((p.count(0), p.count(1), p.count(2)), (3, 2, 0));
    }

    #[test]
    fn builder_rejects_bad_faces() {
        let mut b = SSetBuilder::new();
        let v = b.add_vertices(3);
        let e01 = b.add_edge(v[0], v[1]).unwrap();
        let e12 = b.add_edge(v[1], v[2]).unwrap();
        // d0 = e12, d1 = e02 missing: use e01 twice instead, violating d0 d1 = d0 d0
        let bad = b.add_simplex(vec![Simplex::nondegenerate(e12), Simplex::nondegenerate(e01), Simplex::nondegenerate(e01)]);
        assert!(matches!(bad, Err(SSetError::SimplicialIdentity { .. })));
    }

    #[test]
    fn builder_circle() {
        let mut b = SSetBuilder::new();
        let v = b.add_vertex();
        b.add_edge(v, v).unwrap();
        let s1 = b.build();
        assert_eq!((s1.count(0), s1.count(1)), (1, 1));
        assert_eq!(s1.pi0().count, 1);
    }
}
