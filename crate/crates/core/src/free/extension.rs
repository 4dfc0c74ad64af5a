//! Objects and morphisms of truncated extension categories.

use serde::{Deserialize, Serialize};

use super::SchemePair;
use crate::graphs::canon::code_of;
use crate::graphs::enumerate::enumerate_graph_reps;
use crate::graphs::{enumerate_graphs, ArityBound, Biprofile, CanonicalCode, ColorSet, ColoredGraph};
use crate::substitution::{substitute, SubstitutionData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceBounds {
    pub max_vertices: usize,
    pub vertex_arity: ArityBound,
}

/// Outer-scheme graphs of biprofile `bp` within the bounds.
pub fn extension_objects(pair: SchemePair, colors: &ColorSet, bp: &Biprofile, bounds: SliceBounds) -> Vec<CanonicalCode> {
    enumerate_graphs(pair.outer, colors, bp, bounds.max_vertices, bounds.vertex_arity)
}

/// Every choice of inner-scheme graphs `H_v` with `G{H_v}` strictly
/// isomorphic to `k`. Each `H_v` is a canonical representative.
pub fn extension_morphisms(pair: SchemePair, colors: &ColorSet, k: &ColoredGraph, g: &ColoredGraph) -> Vec<SubstitutionData> {
    let target = code_of(k);
    let size = k.vertex_count();
    let arity = (0..size).fold(ArityBound::new(0, 0), |a, v| {
        let (n, m) = k.vertex_profile(v).arity();
        ArityBound::new(a.max_inputs.max(n), a.max_outputs.max(m))
    });
    let options: Vec<Vec<ColoredGraph>> = (0..g.vertex_count())
        .map(|v| enumerate_graph_reps(pair.inner, colors, &g.vertex_profile(v), size, arity))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(options.len());
    fn go(
        options: &[Vec<ColoredGraph>],
        chosen: &mut Vec<ColoredGraph>,
        left: usize,
        g: &ColoredGraph,
        target: &CanonicalCode,
        out: &mut Vec<SubstitutionData>,
    ) {
        if chosen.len() == options.len() {
            if left != 0 {
                return;
            }
            let d = SubstitutionData { target: g.clone(), assignment: chosen.clone() };
            if substitute(&d).is_ok_and(|s| code_of(&s) == *target) {
                out.push(d);
            }
            return;
        }
        for h in &options[chosen.len()] {
            if h.vertex_count() <= left {
                chosen.push(h.clone());
                go(options, chosen, left - h.vertex_count(), g, target, out);
                chosen.pop();
            }
        }
    }
    go(&options, &mut chosen, size, g, &target, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Color;
    use crate::properads::unary_chain;

    fn c() -> Color {
        Color(0)
    }

    #[test]
    fn unary_objects() {
        let bp = Biprofile::unary(c());
        let colors = ColorSet::range(1);
        let b = |n| SliceBounds { max_vertices: n, vertex_arity: ArityBound::new(1, 1) };
        assert_eq!(extension_objects(SchemePair::C_TO_PROP, &colors, &bp, b(0)).len(), 1);
        // edge, corolla, and the edge beside a closed (0;0) vertex
        assert_eq!(extension_objects(SchemePair::C_TO_PROP, &colors, &bp, b(1)).len(), 3);
        assert_eq!(extension_objects(SchemePair::DI_TO_C, &colors, &bp, b(1)).len(), 2);
        let wide = SliceBounds { max_vertices: 2, vertex_arity: ArityBound::new(2, 2) };
        let di = extension_objects(SchemePair::DI_TO_C, &colors, &bp, wide);
        let all = extension_objects(SchemePair::C_TO_PROP, &colors, &bp, wide);
        assert!(di.iter().all(|x| all.contains(x)));
        assert!(di.len() < all.len());
    }

    #[test]
    fn chain_over_corolla() {
        let colors = ColorSet::range(1);
        let chain = unary_chain(c(), c(), c());
        let corolla = ColoredGraph::corolla(&Biprofile::unary(c()));
        let found = extension_morphisms(SchemePair::C_TO_PROP, &colors, &chain, &corolla);
        assert_eq!(found.len(), 1);
        assert_eq!(code_of(&found[0].assignment[0]), code_of(&chain));
        let ident = extension_morphisms(SchemePair::C_TO_PROP, &colors, &chain, &chain);
        assert!(ident.iter().any(|d| d.assignment.iter().all(|h| h.vertex_count() == 1)));
    }

    #[test]
    fn disconnected_sources_have_no_connected_data() {
        let colors = ColorSet::range(1);
        let bp = Biprofile::unary(c());
        let two = ColoredGraph::corolla(&bp).disjoint_union(&ColoredGraph::corolla(&bp));
        let target = ColoredGraph::corolla(&Biprofile::new(vec![c(), c()], vec![c(), c()]));
        assert!(extension_morphisms(SchemePair::C_TO_PROP, &colors, &two, &target).is_empty());
    }
}
