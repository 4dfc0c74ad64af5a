//! A sound three-valued test for weak homotopy equivalence.
//!
//! Positive answers come from isomorphisms and elementary collapses; negative
//! answers from a mismatch in `π0` or in integral homology. Anything else is
//! `Unknown`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::homology::{homology, HomologyGroup};
use super::{CellId, FinSimplicialSet, SSetMap, Simplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason")]
pub enum Verdict {
    Yes(WeqReason),
    No(WeqReason),
    Unknown,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeqReason {
    Isomorphism,
    /// Each component is certified by one of the collapse arguments.
    Componentwise { certificates: Vec<ComponentCertificate> },
    Pi0Mismatch { domain_components: usize, codomain_components: usize, bijective: bool },
    HomologyMismatch { component: Option<usize>, degree: usize, domain: HomologyGroup, codomain: HomologyGroup },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentCertificate {
    Isomorphism,
    CollapsesOntoImage,
    BothContractible,
}

/// Removes free-face pairs `(σ, τ)` until none is left, never touching the
/// protected cells. A pair is free when `τ` occurs exactly once among the
/// stored faces of live cells, nondegenerately and in `σ`, and `σ` occurs in
/// no live cell at all. Returns the surviving cells.
pub fn collapse(x: &FinSimplicialSet, alive: &HashSet<CellId>, protected: &HashSet<CellId>) -> HashSet<CellId> {
    let cofaces = x.cofaces();
    let mut alive = alive.clone();
    let live_attachments = |c: CellId, alive: &HashSet<CellId>| -> Vec<(CellId, usize)> {
        cofaces.get(&c).map_or(Vec::new(), |v| v.iter().copied().filter(|(s, _)| alive.contains(s)).collect())
    };
    loop {
        let mut cells: Vec<CellId> = alive.iter().copied().collect();
        cells.sort_by(|a, b| b.dim.cmp(&a.dim).then(a.index.cmp(&b.index)));
        let mut removed = false;
        for tau in cells {
            if !alive.contains(&tau) || protected.contains(&tau) {
                continue;
            }
            let att = live_attachments(tau, &alive);
            let [(sigma, i)] = att[..] else { continue };
            if protected.contains(&sigma) || sigma.dim != tau.dim + 1 {
                continue;
            }
            if x.cell_faces(sigma)[i].is_degenerate() || !live_attachments(sigma, &alive).is_empty() {
                continue;
            }
            alive.remove(&sigma);
            alive.remove(&tau);
            removed = true;
        }
        if !removed {
            return alive;
        }
    }
}

/// Collapses to a single vertex.
pub fn is_collapsible(x: &FinSimplicialSet) -> bool {
    let all: HashSet<CellId> = x.cells().collect();
    if all.is_empty() {
        return false;
    }
    collapse(x, &all, &HashSet::new()).len() == 1
}

fn component(x: &FinSimplicialSet, pick: &dyn Fn(CellId) -> bool) -> (FinSimplicialSet, HashMap<CellId, CellId>) {
    x.restrict(pick)
}

pub fn weak_equivalence_verdict(f: &SSetMap) -> Verdict {
    if f.is_iso() {
        return Verdict::Yes(WeqReason::Isomorphism);
    }
    let (x, y) = (f.dom(), f.cod());
    let (px, py) = (x.pi0(), y.pi0());
    let comp_map: Vec<usize> = {
        let mut m = vec![usize::MAX; px.count];
        for (v, &c) in px.vertex_class.iter().enumerate() {
            m[c] = py.vertex_class[f.image(CellId { dim: 0, index: v }).cell.index];
        }
        m
    };
    let hit: HashSet<usize> = comp_map.iter().copied().collect();
    let bijective = px.count == py.count && hit.len() == py.count;
    if !bijective {
        return Verdict::No(WeqReason::Pi0Mismatch {
            domain_components: px.count,
            codomain_components: py.count,
            bijective,
        });
    }
    let top = x.dimension().unwrap_or(0).max(y.dimension().unwrap_or(0));
    let (hx, hy) = (homology(x, top), homology(y, top));
    if let Some(d) = (0..=top).find(|&d| hx[d] != hy[d]) {
        return Verdict::No(WeqReason::HomologyMismatch {
            component: None,
            degree: d,
            domain: hx[d].clone(),
            codomain: hy[d].clone(),
        });
    }
    let mut certificates = Vec::new();
    let mut unknown = false;
    for (cx, &cy) in comp_map.iter().enumerate() {
        let (xc, xr) = component(x, &|c| x.component_of(&px, c) == cx);
        let (yc, yr) = component(y, &|c| y.component_of(&py, c) == cy);
        let images: Vec<(CellId, Simplex)> = x
            .cells()
            .filter(|c| xr.contains_key(c))
            .map(|c| {
                let s = f.image(c);
                (xr[&c], Simplex { cell: yr[&s.cell], degeneracy: s.degeneracy.clone() })
            })
            .collect();
        let fc = SSetMap::from_cell_images_unchecked(xc.clone(), yc.clone(), images);
        let hxc = homology(&xc, top);
        let hyc = homology(&yc, top);
        if let Some(d) = (0..=top).find(|&d| hxc[d] != hyc[d]) {
            return Verdict::No(WeqReason::HomologyMismatch {
                component: Some(cx),
                degree: d,
                domain: hxc[d].clone(),
                codomain: hyc[d].clone(),
            });
        }
        if unknown {
            continue;
        }
        if fc.is_iso() {
            certificates.push(ComponentCertificate::Isomorphism);
        } else if fc.is_injective() && {
            let image: HashSet<CellId> = fc.images().iter().flatten().map(|s| s.cell).collect();
            let all: HashSet<CellId> = yc.cells().collect();
            collapse(&yc, &all, &image) == image
        } {
            certificates.push(ComponentCertificate::CollapsesOntoImage);
        } else if is_collapsible(&xc) && is_collapsible(&yc) {
            certificates.push(ComponentCertificate::BothContractible);
        } else {
            unknown = true;
        }
    }
    if unknown {
        Verdict::Unknown
    } else {
        Verdict::Yes(WeqReason::Componentwise { certificates })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ssets::SSetBuilder;

    fn point_map(x: FinSimplicialSet) -> SSetMap {
        SSetMap::to_point(x)
    }

    #[test]
    fn simplices_are_collapsible() {
        for p in 0..4 {
            assert!(is_collapsible(&FinSimplicialSet::simplex(p)));
        }
        assert!(is_collapsible(&FinSimplicialSet::horn(0, 3).unwrap()));
        assert!(!is_collapsible(&FinSimplicialSet::boundary(2)));
    }

    #[test]
    fn standard_verdicts() {
        assert!(weak_equivalence_verdict(&point_map(FinSimplicialSet::simplex(2))).is_yes());
        assert!(matches!(
            weak_equivalence_verdict(&point_map(FinSimplicialSet::boundary(1))),
            Verdict::No(WeqReason::Pi0Mismatch { .. })
        ));
        assert!(matches!(
            weak_equivalence_verdict(&point_map(FinSimplicialSet::boundary(2))),
            Verdict::No(WeqReason::HomologyMismatch { degree: 1, .. })
        ));
    }

    #[test]
    fn horn_inclusion_collapses() {
        let h = FinSimplicialSet::horn(1, 2).unwrap();
        let i = SSetMap::extend_vertex_map(h, FinSimplicialSet::simplex(2), &[0, 1, 2]).unwrap();
        assert_eq!(
            weak_equivalence_verdict(&i),
            Verdict::Yes(WeqReason::Componentwise { certificates: vec![ComponentCertificate::CollapsesOntoImage] })
        );
    }

    #[test]
    fn double_cover_of_the_circle_is_undecided() {
        let mut b = SSetBuilder::new();
        let v = b.add_vertices(2);
        b.add_edge(v[0], v[1]).unwrap();
        b.add_edge(v[1], v[0]).unwrap();
        let cover = b.build();
        let mut b = SSetBuilder::new();
        let w = b.add_vertex();
        b.add_edge(w, w).unwrap();
        let circle = b.build();
        let w = Simplex::nondegenerate(w);
        let e = Simplex::nondegenerate(CellId { dim: 1, index: 0 });
        let f = SSetMap::new(cover, circle, vec![vec![w.clone(), w], vec![e.clone(), e]]).unwrap();
        assert_eq!(weak_equivalence_verdict(&f), Verdict::Unknown);
    }
}
