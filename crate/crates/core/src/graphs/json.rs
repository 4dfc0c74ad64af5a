//! JSON interchange for graphs.
//!
//! ```json
//! {"colors":[0],"vertices":[{"inputs":[0],"outputs":[1]}],
//!  "edges":[{"id":0,"color":0},{"id":1,"color":0}],
//!  "graph_inputs":[0],"graph_outputs":[1]}
//! ```
//!
//! Edge ids are arbitrary distinct integers; they are renumbered densely on
//! load, so round trips are exact up to edge naming.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Color, ColorSet, ColoredGraph, Edge, GraphError, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    #[serde(default)]
    pub colors: Vec<Color>,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    pub graph_inputs: Vec<u64>,
    pub graph_outputs: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub inputs: Vec<u64>,
    pub outputs: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: u64,
    pub color: Color,
}

impl From<&ColoredGraph> for GraphJson {
    fn from(g: &ColoredGraph) -> Self {
        let ids = |l: &[usize]| l.iter().map(|&e| e as u64).collect::<Vec<u64>>();
        GraphJson {
            colors: g.colors_used(),
            vertices: g.vertices.iter().map(|v| VertexJson { inputs: ids(&v.inputs), outputs: ids(&v.outputs) }).collect(),
            edges: g.edges.iter().enumerate().map(|(id, e)| EdgeJson { id: id as u64, color: e.color }).collect(),
            graph_inputs: ids(&g.inputs),
            graph_outputs: ids(&g.outputs),
        }
    }
}

impl GraphJson {
    /// Converts to a graph; the result may still fail [`ColoredGraph::validate`].
    pub fn to_graph(&self) -> Result<ColoredGraph, GraphError> {
        let mut index = HashMap::with_capacity(self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            if index.insert(e.id, i).is_some() {
                return Err(GraphError::Invalid(format!("duplicate edge id {}", e.id)));
            }
        }
        if !self.colors.is_empty() {
            let palette = ColorSet::new(self.colors.iter().copied())?;
            if let Some(e) = self.edges.iter().find(|e| !palette.contains(e.color)) {
                return Err(GraphError::Invalid(format!("edge {} has color {} outside the color set", e.id, e.color)));
            }
        }
        let map = |l: &[u64]| -> Result<Vec<usize>, GraphError> {
            l.iter().map(|id| index.get(id).copied().ok_or(GraphError::UnknownEdge(*id))).collect()
        };
        Ok(ColoredGraph {
            vertices: self
                .vertices
                .iter()
                .map(|v| Ok(Vertex { inputs: map(&v.inputs)?, outputs: map(&v.outputs)? }))
                .collect::<Result<_, GraphError>>()?,
            edges: self.edges.iter().map(|e| Edge { color: e.color }).collect(),
            inputs: map(&self.graph_inputs)?,
            outputs: map(&self.graph_outputs)?,
        })
    }
}

impl Serialize for ColoredGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColoredGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        GraphJson::deserialize(d)?.to_graph().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{canonical_form, Biprofile};

    #[test]
    fn edge_graph_roundtrip() {
        let g = ColoredGraph::edge(Color(4));
        let s = serde_json::to_string(&g).unwrap();
        let h: ColoredGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
    }

    #[test]
    fn sparse_ids_are_renumbered() {
        let text = r#"{"colors":[0],"vertices":[{"inputs":[10],"outputs":[30]}],
            "edges":[{"id":30,"color":0},{"id":10,"color":0}],
            "graph_inputs":[10],"graph_outputs":[30]}"#;
        let g: ColoredGraph = serde_json::from_str(text).unwrap();
        assert!(g.is_valid());
        let k = ColoredGraph::corolla(&Biprofile::unary(Color(0)));
        assert_eq!(canonical_form(&g).unwrap(), canonical_form(&k).unwrap());
    }

    #[test]
    fn unknown_edges_are_rejected() {
        let text = r#"{"vertices":[],"edges":[],"graph_inputs":[1],"graph_outputs":[]}"#;
        assert!(serde_json::from_str::<ColoredGraph>(text).is_err());
    }
}
