//! JSON interchange for simplicial sets and maps.
//!
//! A simplicial set is a list of layers of nondegenerate simplices, each
//! simplex given by its faces. A face is `[dim, index]` for a nondegenerate
//! cell, or `[dim, index, s0, s1, ..]` with the degeneracy values appended.
//! Standard shapes may be named instead.

use serde::{Deserialize, Serialize};

use super::{CellId, FinSimplicialSet, SSetBuilder, SSetError, SSetMap, Simplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SSetJson {
    Empty,
    Point,
    Discrete { n: usize },
    Simplex { p: usize },
    Boundary { p: usize },
    Horn { k: usize, p: usize },
    /// An ordered simplicial complex on maximal vertex lists.
    Complex { maximal: Vec<Vec<usize>> },
    Cells { layers: Vec<Vec<Vec<Vec<usize>>>> },
}

fn encode_simplex(s: &Simplex) -> Vec<usize> {
    let mut v = vec![s.cell.dim, s.cell.index];
    if s.is_degenerate() {
        v.extend(s.degeneracy.iter().map(|&x| x as usize));
    }
    v
}

fn decode_simplex(v: &[usize]) -> Result<Simplex, SSetError> {
    let [dim, index, rest @ ..] = v else {
        return Err(SSetError::Malformed(format!("simplex reference {v:?}")));
    };
    let cell = CellId { dim: *dim, index: *index };
    if rest.is_empty() {
        return Ok(Simplex::nondegenerate(cell));
    }
    let degeneracy: Vec<u8> = rest.iter().map(|&x| x as u8).collect();
    let ok = degeneracy.first() == Some(&0)
        && degeneracy.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
        && *degeneracy.last().unwrap() as usize == *dim;
    if !ok {
        return Err(SSetError::Malformed(format!("degeneracy {rest:?} is not a surjection onto [{dim}]")));
    }
    Ok(Simplex { cell, degeneracy })
}

impl SSetJson {
    pub fn build(&self) -> Result<FinSimplicialSet, SSetError> {
        Ok(match self {
            SSetJson::Empty => FinSimplicialSet::empty(),
            SSetJson::Point => FinSimplicialSet::point(),
            SSetJson::Discrete { n } => FinSimplicialSet::discrete(*n),
            SSetJson::Simplex { p } => FinSimplicialSet::simplex(*p),
            SSetJson::Boundary { p } => FinSimplicialSet::boundary(*p),
            SSetJson::Horn { k, p } => FinSimplicialSet::horn(*k, *p)?,
            SSetJson::Complex { maximal } => {
                let mut sorted = maximal.clone();
                for f in &mut sorted {
                    f.sort_unstable();
                    f.dedup();
                }
                FinSimplicialSet::from_maximal_faces(&sorted)
            }
            SSetJson::Cells { layers } => {
                let mut b = SSetBuilder::new();
                for (dim, layer) in layers.iter().enumerate() {
                    for (index, faces) in layer.iter().enumerate() {
                        if dim == 0 {
                            if !faces.is_empty() {
                                return Err(SSetError::FaceCount { dim: 0, found: faces.len() });
                            }
                            b.add_vertex();
                            continue;
                        }
                        let faces = faces.iter().map(|f| decode_simplex(f)).collect::<Result<Vec<_>, _>>()?;
                        let id = b.add_simplex(faces)?;
                        if id != (CellId { dim, index }) {
                            return Err(SSetError::Malformed(format!("cell {dim}/{index} listed out of order")));
                        }
                    }
                }
                b.build()
            }
        })
    }

    pub fn cells_of(x: &FinSimplicialSet) -> SSetJson {
        let layers = (0..=x.dimension().unwrap_or(0))
            .map(|d| x.cells_of_dim(d).map(|c| x.cell_faces(c).iter().map(encode_simplex).collect()).collect())
            .collect();
        SSetJson::Cells { layers }
    }
}

impl Serialize for FinSimplicialSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SSetJson::cells_of(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinSimplicialSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        SSetJson::deserialize(d)?.build().map_err(serde::de::Error::custom)
    }
}

/// A map given either by vertex images (when that determines it) or by the
/// image of every nondegenerate cell, layer by layer.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SSetMapJson {
    pub domain: FinSimplicialSet,
    pub codomain: FinSimplicialSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<Vec<Vec<usize>>>>,
}

impl SSetMapJson {
    pub fn build(&self) -> Result<SSetMap, SSetError> {
        match (&self.vertices, &self.images) {
            (_, Some(images)) => {
                let images = images
                    .iter()
                    .map(|l| l.iter().map(|s| decode_simplex(s)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                SSetMap::new(self.domain.clone(), self.codomain.clone(), images)
            }
            (Some(v), None) => SSetMap::extend_vertex_map(self.domain.clone(), self.codomain.clone(), v),
            (None, None) => Err(SSetError::Undetermined("neither vertices nor images given".into())),
        }
    }

    pub fn of(f: &SSetMap) -> SSetMapJson {
        SSetMapJson {
            domain: f.dom().clone(),
            codomain: f.cod().clone(),
            vertices: None,
            images: Some(f.images().iter().map(|l| l.iter().map(encode_simplex).collect()).collect()),
        }
    }
}

impl Serialize for SSetMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SSetMapJson::of(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SSetMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        SSetMapJson::deserialize(d)?.build().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_shapes_and_cells_agree() {
        let h: FinSimplicialSet = serde_json::from_str(r#"{"kind":"horn","k":1,"p":2}"#).unwrap();
        let text = serde_json::to_string(&h).unwrap();
        let back: FinSimplicialSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn degenerate_faces_round_trip() {
        let mut b = SSetBuilder::new();
        let v = b.add_vertex();
        let e = Simplex::nondegenerate(b.add_edge(v, v).unwrap());
        b.add_simplex(vec![e.clone(), Simplex { cell: v, degeneracy: vec![0, 0] }, e]).unwrap();
        let x = b.build();
        let back: FinSimplicialSet = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn maps_round_trip() {
        let f = SSetMap::to_point(FinSimplicialSet::simplex(2));
        let back: SSetMap = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
        let by_vertices: SSetMap = serde_json::from_str(
            r#"{"domain":{"kind":"horn","k":0,"p":2},"codomain":{"kind":"simplex","p":2},"vertices":[0,1,2]}"#,
        )
        .unwrap();
        assert!(by_vertices.is_injective());
    }

    #[test]
    fn bad_faces_are_rejected() {
        let r: Result<FinSimplicialSet, _> =
            serde_json::from_str(r#"{"kind":"cells","layers":[[[],[]],[[[0,0],[0,0],[0,1]]]]}"#);
        assert!(r.is_err());
    }
}
