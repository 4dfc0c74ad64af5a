//! Simplicial maps between finite simplicial sets.

use std::collections::HashMap;
use std::sync::Arc;

use super::{CellId, FinSimplicialSet, SSetError, Simplex};

/// A simplicial map, stored as the image of every nondegenerate cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSetMap {
    dom: Arc<FinSimplicialSet>,
    cod: Arc<FinSimplicialSet>,
    images: Vec<Vec<Simplex>>,
}

impl SSetMap {
    /// Builds and checks a map from images listed by dimension and index.
    pub fn new(
        dom: impl Into<Arc<FinSimplicialSet>>,
        cod: impl Into<Arc<FinSimplicialSet>>,
        images: Vec<Vec<Simplex>>,
    ) -> Result<Self, SSetError> {
        let m = SSetMap { dom: dom.into(), cod: cod.into(), images };
        m.check()?;
        Ok(m)
    }

    pub(crate) fn from_cell_images_unchecked(
        dom: impl Into<Arc<FinSimplicialSet>>,
        cod: impl Into<Arc<FinSimplicialSet>>,
        images: Vec<(CellId, Simplex)>,
    ) -> Self {
        let dom = dom.into();
        let mut layers: Vec<Vec<Option<Simplex>>> =
            (0..=dom.dimension().unwrap_or(0)).map(|d| vec![None; dom.count(d)]).collect();
        for (c, s) in images {
            layers[c.dim][c.index] = Some(s);
        }
        SSetMap {
            dom,
            cod: cod.into(),
            images: layers.into_iter().map(|l| l.into_iter().map(|s| s.expect("every cell has an image")).collect()).collect(),
        }
    }

    pub fn dom(&self) -> &FinSimplicialSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSimplicialSet {
        &self.cod
    }

    pub fn dom_arc(&self) -> &Arc<FinSimplicialSet> {
        &self.dom
    }

    pub fn cod_arc(&self) -> &Arc<FinSimplicialSet> {
        &self.cod
    }

    pub fn image(&self, c: CellId) -> &Simplex {
        &self.images[c.dim][c.index]
    }

    pub fn images(&self) -> &[Vec<Simplex>] {
        &self.images
    }

    pub fn apply(&self, x: &Simplex) -> Simplex {
        self.cod.apply(&x.degeneracy, self.image(x.cell))
    }

    pub fn check(&self) -> Result<(), SSetError> {
        for c in self.dom.cells() {
            let img = self
                .images
                .get(c.dim)
                .and_then(|l| l.get(c.index))
                .ok_or_else(|| SSetError::Undetermined(format!("no image for {c:?}")))?;
            if img.dim() != c.dim {
                return Err(SSetError::ImageDimension { cell: c, found: img.dim() });
            }
            if !self.cod.contains(img.cell) {
                return Err(SSetError::UnknownCell(img.cell));
            }
            for (i, f) in self.dom.cell_faces(c).iter().enumerate() {
                if self.cod.face(i, img) != self.apply(f) {
                    return Err(SSetError::NotSimplicial { cell: c, face: i });
                }
            }
        }
        if self.images.iter().map(Vec::len).sum::<usize>() != self.dom.total_cells() {
            return Err(SSetError::Undetermined("image table has extra entries".into()));
        }
        Ok(())
    }

    pub fn identity(x: impl Into<Arc<FinSimplicialSet>>) -> Self {
        let x = x.into();
        let images = (0..=x.dimension().unwrap_or(0))
            .map(|d| x.cells_of_dim(d).map(Simplex::nondegenerate).collect())
            .collect();
        SSetMap { dom: x.clone(), cod: x, images }
    }

    /// The unique map to `Δ[0]`.
    pub fn to_point(x: impl Into<Arc<FinSimplicialSet>>) -> Self {
        let x = x.into();
        let images = (0..=x.dimension().unwrap_or(0))
            .map(|d| {
                x.cells_of_dim(d)
                    .map(|_| Simplex { cell: CellId { dim: 0, index: 0 }, degeneracy: vec![0; d + 1] })
                    .collect()
            })
            .collect();
        SSetMap { dom: x, cod: Arc::new(FinSimplicialSet::point()), images }
    }

    /// The unique map out of the empty simplicial set.
    pub fn from_empty(y: impl Into<Arc<FinSimplicialSet>>) -> Self {
        SSetMap { dom: Arc::new(FinSimplicialSet::empty()), cod: y.into(), images: vec![Vec::new()] }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SSetMap) -> SSetMap {
        let images = self.images.iter().map(|l| l.iter().map(|s| next.apply(s)).collect()).collect();
        SSetMap { dom: self.dom.clone(), cod: next.cod.clone(), images }
    }

    /// Image of each vertex.
    pub fn vertex_map(&self) -> Vec<usize> {
        self.dom.cells_of_dim(0).map(|c| self.image(c).cell.index).collect()
    }

    /// Injective on simplices: nondegenerate cells go to distinct
    /// nondegenerate cells.
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().flatten().all(|s| !s.is_degenerate() && seen.insert(s.cell))
    }

    pub fn is_surjective(&self) -> bool {
        let hit: std::collections::HashSet<CellId> =
            self.images.iter().flatten().filter(|s| !s.is_degenerate()).map(|s| s.cell).collect();
        self.cod.cells().all(|c| hit.contains(&c))
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// The unique extension of a vertex assignment, if exactly one exists.
    pub fn extend_vertex_map(
        dom: impl Into<Arc<FinSimplicialSet>>,
        cod: impl Into<Arc<FinSimplicialSet>>,
        vertices: &[usize],
    ) -> Result<SSetMap, SSetError> {
        let dom = dom.into();
        let cod = cod.into();
        if vertices.len() != dom.vertex_count() {
            return Err(SSetError::Undetermined(format!(
                "{} vertex images for {} vertices",
                vertices.len(),
                dom.vertex_count()
            )));
        }
        let fixed: HashMap<CellId, Simplex> = vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (CellId { dim: 0, index: i }, Simplex::nondegenerate(CellId { dim: 0, index: v })))
            .collect();
        let found = enumerate_maps_with(&dom, &cod, &fixed, 2);
        match found.len() {
            1 => Ok(found.into_iter().next().unwrap()),
            0 => Err(SSetError::Undetermined("no simplicial extension".into())),
            _ => Err(SSetError::Undetermined("extension is not unique".into())),
        }
    }
}

/// Every simplicial map `dom -> cod`, up to `limit` of them.
pub fn enumerate_maps(
    dom: &Arc<FinSimplicialSet>,
    cod: &Arc<FinSimplicialSet>,
    limit: usize,
) -> Vec<SSetMap> {
    enumerate_maps_with(dom, cod, &HashMap::new(), limit)
}

/// Maps agreeing with `fixed` on the listed cells.
pub fn enumerate_maps_with(
    dom: &Arc<FinSimplicialSet>,
    cod: &Arc<FinSimplicialSet>,
    fixed: &HashMap<CellId, Simplex>,
    limit: usize,
) -> Vec<SSetMap> {
    let mut out = Vec::new();
    for_each_map(dom, cod, fixed, &mut |images| {
        out.push(SSetMap { dom: dom.clone(), cod: cod.clone(), images: images.to_vec() });
        out.len() < limit
    });
    out
}

/// Face-tuple index of the `n`-simplices of a simplicial set.
pub(crate) struct FaceIndex {
    by_faces: Vec<HashMap<Vec<Simplex>, Vec<Simplex>>>,
    vertices: Vec<Simplex>,
}

impl FaceIndex {
    pub(crate) fn new(x: &FinSimplicialSet, max_dim: usize) -> Self {
        let mut by_faces = vec![HashMap::new()];
        for n in 1..=max_dim {
            let mut m: HashMap<Vec<Simplex>, Vec<Simplex>> = HashMap::new();
            for s in x.simplices(n) {
                let fs = (0..=n).map(|i| x.face(i, &s)).collect();
                m.entry(fs).or_default().push(s);
            }
            by_faces.push(m);
        }
        FaceIndex { by_faces, vertices: x.simplices(0) }
    }

    /// Simplices of dimension `faces.len() - 1` with exactly these faces.
    pub(crate) fn with_faces(&self, faces: &[Simplex]) -> &[Simplex] {
        if faces.len() <= 1 {
            return &self.vertices;
        }
        self.by_faces[faces.len() - 1].get(faces).map_or(&[], Vec::as_slice)
    }
}

/// Calls `visit` on the image tables of all maps; stops when it returns false.
pub(crate) fn for_each_map(
    dom: &FinSimplicialSet,
    cod: &FinSimplicialSet,
    fixed: &HashMap<CellId, Simplex>,
    visit: &mut dyn FnMut(&[Vec<Simplex>]) -> bool,
) {
    let Some(top) = dom.dimension() else {
        visit(&[Vec::new()]);
        return;
    };
    let index = FaceIndex::new(cod, top);
    let order: Vec<CellId> = dom.cells().collect();
    let mut images: Vec<Vec<Simplex>> = (0..=top).map(|d| vec![Simplex::nondegenerate(CellId { dim: 0, index: 0 }); dom.count(d)]).collect();

    fn go(
        k: usize,
        order: &[CellId],
        dom: &FinSimplicialSet,
        cod: &FinSimplicialSet,
        index: &FaceIndex,
        fixed: &HashMap<CellId, Simplex>,
        images: &mut Vec<Vec<Simplex>>,
        visit: &mut dyn FnMut(&[Vec<Simplex>]) -> bool,
    ) -> bool {
        let Some(&c) = order.get(k) else {
            return visit(images);
        };
        let required: Vec<Simplex> = dom
            .cell_faces(c)
            .iter()
            .map(|f| cod.apply(&f.degeneracy, &images[f.cell.dim][f.cell.index]))
            .collect();
        let candidates = index.with_faces(&required);
        let pinned = fixed.get(&c);
        for cand in candidates {
            if pinned.is_some_and(|p| p != cand) {
                continue;
            }
            images[c.dim][c.index] = cand.clone();
            if !go(k + 1, order, dom, cod, index, fixed, images, visit) {
                return false;
            }
        }
        true
    }
    go(0, &order, dom, cod, &index, fixed, &mut images, visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps_from_a_simplex_are_its_simplices() {
        let d1 = Arc::new(FinSimplicialSet::simplex(1));
        let d2 = Arc::new(FinSimplicialSet::simplex(2));
        // monotone maps [1] -> [2]
        assert_eq!(enumerate_maps(&d1, &d2, usize::MAX).len(), 6);
        // maps into a point
        let pt = Arc::new(FinSimplicialSet::point());
        assert_eq!(enumerate_maps(&d2, &pt, usize::MAX).len(), 1);
    }

    #[test]
    fn horn_inclusion_from_vertices() {
        let h = FinSimplicialSet::horn(1, 2).unwrap();
        let d = FinSimplicialSet::simplex(2);
        let i = SSetMap::extend_vertex_map(h, d, &[0, 1, 2]).unwrap();
        assert!(i.is_injective());
        assert!(!i.is_surjective());
    }

    #[test]
    fn composition_and_identity() {
        let d = Arc::new(FinSimplicialSet::simplex(2));
        let id = SSetMap::identity(d.clone());
        assert!(id.is_iso());
        let p = SSetMap::to_point(d);
        assert!(p.check().is_ok());
        assert_eq!(id.then(&p), p);
    }

    #[test]
    fn empty_domain_has_one_map() {
        let e = Arc::new(FinSimplicialSet::empty());
        let d = Arc::new(FinSimplicialSet::simplex(1));
        assert_eq!(enumerate_maps(&e, &d, 10).len(), 1);
        assert_eq!(enumerate_maps(&d, &e, 10).len(), 0);
    }
}
