//! Integral homology of the normalized chain complex.

use serde::{Deserialize, Serialize};

use super::FinSimplicialSet;

/// `Z^rank ⊕ ⊕ Z/t` for each torsion coefficient `t > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Boundary matrix `C_n -> C_{n-1}` with rows indexed by `(n-1)`-cells.
/// Degenerate faces vanish in normalized chains.
pub fn boundary_matrix(x: &FinSimplicialSet, n: usize) -> Vec<Vec<i64>> {
    let rows = x.count(n - 1);
    let cols = x.count(n);
    let mut m = vec![vec![0i64; cols]; rows];
    for c in x.cells_of_dim(n) {
        for (i, f) in x.cell_faces(c).iter().enumerate() {
            if !f.is_degenerate() {
                m[f.cell.index][c.index] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    m
}

/// Nonzero diagonal entries of the Smith normal form, each dividing the next.
pub fn smith_diagonal(mut a: Vec<Vec<i64>>) -> Vec<u64> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if !dirty {
                // divisibility of the rest of the block
                let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t into the pivot
            let mut best = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            }
            if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].unsigned_abs());
        t += 1;
    }
    diag
}

/// `H_0 .. H_max_degree`.
pub fn homology(x: &FinSimplicialSet, max_degree: usize) -> Vec<HomologyGroup> {
    let diags: Vec<Vec<u64>> = (0..=max_degree + 1)
        .map(|n| if n == 0 || x.count(n) == 0 || x.count(n - 1) == 0 { Vec::new() } else { smith_diagonal(boundary_matrix(x, n)) })
        .collect();
    (0..=max_degree)
        .map(|n| {
            let rank_out = diags[n].len();
            let rank_in = diags[n + 1].len();
            HomologyGroup {
                rank: x.count(n) - rank_out - rank_in,
                torsion: diags[n + 1].iter().copied().filter(|&d| d > 1).collect(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ssets::SSetBuilder;

    fn ranks(x: &FinSimplicialSet, d: usize) -> Vec<usize> {
        homology(x, d).iter().map(|h| h.rank).collect()
    }

    #[test]
    fn simplices_are_acyclic() {
        for p in 0..4 {
            assert_eq!(ranks(&FinSimplicialSet::simplex(p), 3), vec![1, 0, 0, 0]);
        }
    }

    #[test]
    fn boundary_of_a_triangle_is_a_circle() {
        assert_eq!(ranks(&FinSimplicialSet::boundary(2), 2), vec![1, 1, 0]);
        assert_eq!(ranks(&FinSimplicialSet::boundary(1), 1), vec![2, 0]);
        assert_eq!(ranks(&FinSimplicialSet::boundary(3), 2), vec![1, 0, 1]);
    }

    #[test]
    fn projective_plane_and_dunce_hat() {
        use crate::ssets::Simplex;
        // one vertex, one edge e, one triangle with faces (e, s0 v, e): RP^2
        let mut b = SSetBuilder::new();
        let v = b.add_vertex();
        let e = Simplex::nondegenerate(b.add_edge(v, v).unwrap());
        let sv = Simplex { cell: v, degeneracy: vec![0, 0] };
        b.add_simplex(vec![e.clone(), sv, e.clone()]).unwrap();
        let h = homology(&b.build(), 2);
        assert_eq!(h[1], HomologyGroup { rank: 0, torsion: vec![2] });
        assert!(h[2].is_zero());
        // faces (e, e, e): the dunce hat, acyclic
        let mut b = SSetBuilder::new();
        let v = b.add_vertex();
        let e = Simplex::nondegenerate(b.add_edge(v, v).unwrap());
        b.add_simplex(vec![e.clone(), e.clone(), e]).unwrap();
        assert_eq!(ranks(&b.build(), 2), vec![1, 0, 0]);
    }

    #[test]
    fn snf_finds_torsion() {
        assert_eq!(smith_diagonal(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_diagonal(vec![vec![2, 4], vec![4, 8]]), vec![2]);
    }
}
