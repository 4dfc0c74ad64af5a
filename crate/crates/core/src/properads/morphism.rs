//! Morphisms of generalized props, and the entry maps given by composing
//! with a fixed unary element.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use super::{degenerate_vertex, Decoration, GrProp, PropError};
use crate::graphs::{Biprofile, Color, ColoredGraph, Edge, Vertex};
use crate::ssets::{FinSimplicialSet, SSetMap, Simplex};

/// Produces the entry map at one biprofile.
pub trait EntryMapper: Send + Sync + fmt::Debug {
    fn map(&self, bp: &Biprofile, dom: Arc<FinSimplicialSet>, cod: Arc<FinSimplicialSet>) -> Result<SSetMap, PropError>;
}

/// How a morphism acts on entries.
#[derive(Clone, Debug)]
pub enum EntryMaps {
    /// Identity maps; domain and codomain entries must agree.
    Identity,
    /// Every codomain entry is a point.
    ToPoint,
    /// Every domain entry is empty.
    FromEmpty,
    /// Between monoid props: the identity on the unit and the given map on
    /// the summands, identities elsewhere.
    Monoid(SSetMap),
    /// The unique simplicial extension of a vertex map, per biprofile.
    Vertices(VertexFn),
    Custom(Arc<dyn EntryMapper>),
    /// First one morphism, then the other.
    Composite(Box<PropMorphism>, Box<PropMorphism>),
}

/// Vertex images per biprofile.
#[derive(Clone)]
pub struct VertexFn(pub Arc<dyn Fn(&Biprofile, usize) -> usize + Send + Sync>);

impl fmt::Debug for VertexFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("VertexFn")
    }
}

/// A morphism of generalized props: a color map and one simplicial map per
/// entry. Entry maps are built on demand and cached.
pub struct PropMorphism {
    name: String,
    dom: Arc<GrProp>,
    cod: Arc<GrProp>,
    color_map: Vec<Color>,
    maps: EntryMaps,
    cache: RwLock<HashMap<Biprofile, Arc<SSetMap>>>,
}

impl Clone for PropMorphism {
    fn clone(&self) -> Self {
        PropMorphism {
            name: self.name.clone(),
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            color_map: self.color_map.clone(),
            maps: self.maps.clone(),
            cache: RwLock::new(self.cache.read().unwrap().clone()),
        }
    }
}

impl fmt::Debug for PropMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PropMorphism({}: {} -> {})", self.name, self.dom.name(), self.cod.name())
    }
}

impl PropMorphism {
    /// `color_map[i]` is the image of the `i`-th color of the domain.
    pub fn new(
        name: impl Into<String>,
        dom: Arc<GrProp>,
        cod: Arc<GrProp>,
        color_map: Vec<Color>,
        maps: EntryMaps,
    ) -> Result<Self, PropError> {
        if color_map.len() != dom.colors().len() {
            return Err(PropError::ColorMap { expected: dom.colors().len(), found: color_map.len() });
        }
        if let Some(&c) = color_map.iter().find(|&&c| !cod.colors().contains(c)) {
            return Err(PropError::UnknownColor(c));
        }
        Ok(PropMorphism { name: name.into(), dom, cod, color_map, maps, cache: RwLock::default() })
    }

    pub fn identity(p: Arc<GrProp>) -> Self {
        let cm = p.colors().iter().collect();
        PropMorphism::new(format!("id[{}]", p.name()), p.clone(), p, cm, EntryMaps::Identity).expect("identity")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dom(&self) -> &GrProp {
        &self.dom
    }

    pub fn cod(&self) -> &GrProp {
        &self.cod
    }

    pub fn dom_arc(&self) -> &Arc<GrProp> {
        &self.dom
    }

    pub fn cod_arc(&self) -> &Arc<GrProp> {
        &self.cod
    }

    pub fn color_map(&self) -> &[Color] {
        &self.color_map
    }

    pub fn map_color(&self, c: Color) -> Color {
        let i = self.dom.colors().iter().position(|d| d == c).expect("color of the domain");
        self.color_map[i]
    }

    pub fn map_biprofile(&self, bp: &Biprofile) -> Biprofile {
        bp.map_colors(|c| self.map_color(c))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PropMorphism) -> Result<PropMorphism, PropError> {
        let cm = self.color_map.iter().map(|&c| next.map_color(c)).collect();
        PropMorphism::new(
            format!("{};{}", self.name, next.name),
            self.dom.clone(),
            next.cod.clone(),
            cm,
            EntryMaps::Composite(Box::new(self.clone()), Box::new(next.clone())),
        )
    }

    pub fn entry_map(&self, bp: &Biprofile) -> Result<Arc<SSetMap>, PropError> {
        if let Some(m) = self.cache.read().unwrap().get(bp) {
            return Ok(m.clone());
        }
        let dom = self.dom.entry(bp)?;
        let cod = self.cod.entry(&self.map_biprofile(bp))?;
        let m = match &self.maps {
            EntryMaps::Identity => {
                if dom != cod {
                    return Err(PropError::Inconsistent(format!("identity between different entries at {bp}")));
                }
                SSetMap::identity(dom)
            }
            EntryMaps::ToPoint => {
                if cod.total_cells() != 1 {
                    return Err(PropError::Inconsistent(format!("codomain entry at {bp} is not a point")));
                }
                SSetMap::to_point((*dom).clone())
            }
            EntryMaps::FromEmpty => {
                if !dom.is_empty() {
                    return Err(PropError::Inconsistent(format!("domain entry at {bp} is not empty")));
                }
                SSetMap::from_empty(cod)
            }
            EntryMaps::Monoid(phi) => {
                if bp.arity() == (1, 1) {
                    let point = FinSimplicialSet::point();
                    let mut images: Vec<Vec<Simplex>> = vec![Vec::new(); dom.dimension().unwrap_or(0) + 1];
                    images[0].push(degenerate_vertex(0, 0));
                    for (d, layer) in phi.images().iter().enumerate() {
                        for s in layer {
                            images[d].push(Simplex {
                                cell: crate::ssets::CellId {
                                    dim: s.cell.dim,
                                    index: s.cell.index + point.count(s.cell.dim),
                                },
                                degeneracy: s.degeneracy.clone(),
                            });
                        }
                    }
                    SSetMap::new(dom, cod, images)?
                } else if dom.is_empty() {
                    SSetMap::from_empty(cod)
                } else {
                    SSetMap::to_point((*dom).clone())
                }
            }
            EntryMaps::Vertices(f) => {
                let vs: Vec<usize> = (0..dom.vertex_count()).map(|v| (f.0)(bp, v)).collect();
                SSetMap::extend_vertex_map(dom, cod, &vs)?
            }
            EntryMaps::Custom(m) => m.map(bp, dom, cod)?,
            EntryMaps::Composite(first, second) => {
                let a = first.entry_map(bp)?;
                let b = second.entry_map(&first.map_biprofile(bp))?;
                a.then(&b)
            }
        };
        let m = Arc::new(m);
        self.cache.write().unwrap().insert(bp.clone(), m.clone());
        Ok(m)
    }

    /// Whether `f(γ_G(d)) = γ_{fG}(f d)` on a decoration.
    pub fn commutes_on(&self, d: &Decoration) -> Result<bool, PropError> {
        let g = &d.graph;
        let lhs = self.entry_map(&g.biprofile())?.apply(&self.dom.gamma(d)?);
        let labels = d
            .labels
            .iter()
            .enumerate()
            .map(|(v, x)| Ok(self.entry_map(&g.vertex_profile(v))?.apply(x)))
            .collect::<Result<Vec<_>, PropError>>()?;
        let fg = recolor(g, |c| self.map_color(c));
        let rhs = self.cod.gamma(&Decoration::new(fg, labels, d.degree))?;
        Ok(lhs == rhs)
    }

    /// Whether units go to units.
    pub fn preserves_units(&self) -> Result<bool, PropError> {
        for c in self.dom.colors().iter() {
            let u = self.dom.unit(c)?;
            if self.entry_map(&Biprofile::unary(c))?.apply(&u) != self.cod.unit(self.map_color(c))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The same graph with every edge recolored.
pub fn recolor(g: &ColoredGraph, f: impl Fn(Color) -> Color) -> ColoredGraph {
    ColoredGraph { edges: g.edges.iter().map(|e| Edge { color: f(e.color) }).collect(), ..g.clone() }
}

/// The corolla on `x` with a unary vertex grafted onto input `i` (when
/// `at_input`) or output `i`. Vertex 0 is `x`, vertex 1 the unary one.
fn two_vertex_graph(x: &Biprofile, i: usize, other: Color, at_input: bool) -> ColoredGraph {
    let mut g = ColoredGraph::corolla(x);
    let new_edge = g.edges.len();
    g.edges.push(Edge { color: other });
    if at_input {
        let e = g.vertices[0].inputs[i];
        g.vertices.push(Vertex { inputs: vec![new_edge], outputs: vec![e] });
        g.inputs[i] = new_edge;
    } else {
        let e = g.vertices[0].outputs[i];
        g.vertices.push(Vertex { inputs: vec![e], outputs: vec![new_edge] });
        g.outputs[i] = new_edge;
    }
    g
}

fn compose_map(p: &GrProp, bp: &Biprofile, g: ColoredGraph, a: &Simplex) -> Result<SSetMap, PropError> {
    let dom = p.entry(bp)?;
    let cod = p.entry(&g.biprofile())?;
    let top = dom.dimension().unwrap_or(0);
    let mut images: Vec<Vec<Simplex>> = vec![Vec::new(); top + 1];
    for c in dom.cells() {
        let q = c.dim;
        let a_q = Simplex { cell: a.cell, degeneracy: vec![0; q + 1] };
        let x = Simplex::nondegenerate(c);
        images[q].push(p.gamma(&Decoration::new(g.clone(), vec![x, a_q], q))?);
    }
    Ok(SSetMap::new(dom, cod, images)?)
}

/// `− ∘_i a`: plugs the output of the unary vertex `a` into input `i`,
/// mapping the entry `bp` to the entry with input `i` recolored to the
/// input color of `a`.
pub fn precompose(p: &GrProp, bp: &Biprofile, i: usize, a_profile: &Biprofile, a: &Simplex) -> Result<SSetMap, PropError> {
    if a_profile.arity() != (1, 1) || bp.inputs.get(i) != Some(&a_profile.outputs[0]) || a.cell.dim != 0 {
        return Err(PropError::Inconsistent(format!("cannot plug {a_profile} into input {i} of {bp}")));
    }
    let g = two_vertex_graph(bp, i, a_profile.inputs[0], true);
    compose_map(p, bp, g, a)
}

/// `a ∘_j −`: feeds output `j` into the unary vertex `a`.
pub fn postcompose(p: &GrProp, bp: &Biprofile, j: usize, a_profile: &Biprofile, a: &Simplex) -> Result<SSetMap, PropError> {
    if a_profile.arity() != (1, 1) || bp.outputs.get(j) != Some(&a_profile.inputs[0]) || a.cell.dim != 0 {
        return Err(PropError::Inconsistent(format!("cannot feed output {j} of {bp} into {a_profile}")));
    }
    let g = two_vertex_graph(bp, j, a_profile.outputs[0], false);
    compose_map(p, bp, g, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Scheme;
    use crate::properads::Endomorphism;

    #[test]
    fn precomposing_with_the_unit_is_the_identity() {
        let p = GrProp::endomorphism(Scheme::Prop, vec![2]).unwrap();
        let c = Color(0);
        let bp = Biprofile::new(vec![c, c], vec![c]);
        let u = p.unit(c).unwrap();
        let m = precompose(&p, &bp, 1, &Biprofile::unary(c), &u).unwrap();
        assert!(m.is_iso());
        assert_eq!(m, SSetMap::identity(p.entry(&bp).unwrap()));
        let m = postcompose(&p, &bp, 0, &Biprofile::unary(c), &u).unwrap();
        assert_eq!(m, SSetMap::identity(p.entry(&bp).unwrap()));
    }

    #[test]
    fn precomposing_with_a_bijection_is_a_bijection() {
        let p = GrProp::endomorphism(Scheme::Prop, vec![2]).unwrap();
        let e = Endomorphism::new(vec![2]);
        let c = Color(0);
        let un = Biprofile::unary(c);
        let not = Simplex::nondegenerate(crate::ssets::CellId { dim: 0, index: e.encode(&un, &[1, 0]).unwrap() });
        let bp = Biprofile::new(vec![c, c], vec![c]);
        assert!(precompose(&p, &bp, 0, &un, &not).unwrap().is_iso());
        let konst = Simplex::nondegenerate(crate::ssets::CellId { dim: 0, index: e.encode(&un, &[0, 0]).unwrap() });
        assert!(!precompose(&p, &bp, 0, &un, &konst).unwrap().is_iso());
    }

    #[test]
    fn identity_commutes() {
        let p = Arc::new(GrProp::endomorphism(Scheme::Prop, vec![2]).unwrap());
        let f = PropMorphism::identity(p);
        assert!(f.preserves_units().unwrap());
        let g = crate::properads::unary_chain(Color(0), Color(0), Color(0));
        assert!(f.commutes_on(&Decoration::by_vertices(g, &[1, 2])).unwrap());
    }
}
