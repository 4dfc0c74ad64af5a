use std::collections::VecDeque;
use std::sync::OnceLock;

use grprop::graphs::enumerate::{enumerate_graph_reps, for_each_wiring};
use grprop::graphs::json::GraphJson;
use grprop::graphs::{
    canonical_form, enumerate_graphs, find_iso, ArityBound, Biprofile, Color, ColorSet, ColoredGraph, IsoFlavor, Scheme,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pool() -> &'static [ColoredGraph] {
    static POOL: OnceLock<Vec<ColoredGraph>> = OnceLock::new();
    POOL.get_or_init(|| {
        let colors = ColorSet::range(2);
        let mut out = Vec::new();
        for bp in colors.biprofiles(3) {
            out.extend(enumerate_graph_reps(Scheme::Prop, &colors, &bp, 3, ArityBound::new(2, 2)));
        }
        out
    })
}

fn shuffled(g: &ColoredGraph, seed: u64) -> ColoredGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vs: Vec<usize> = (0..g.vertex_count()).collect();
    let mut es: Vec<usize> = (0..g.edge_count()).collect();
    vs.shuffle(&mut rng);
    es.shuffle(&mut rng);
    g.relabel(&vs, &es)
}

/// Reduced H0 and H1 of the topological realization, counted on a cell
/// complex: one point per vertex and per free edge end, one segment per edge.
fn cell_complex_betti(g: &ColoredGraph) -> (usize, usize) {
    let nv = g.vertex_count();
    let mut points = nv;
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for ends in g.edge_ends() {
        let mut end = |p: Option<grprop::graphs::Port>, adjacency: &mut Vec<Vec<usize>>| match p {
            Some(port) => port.vertex,
            None => {
                adjacency.push(Vec::new());
                points += 1;
                points - 1
            }
        };
        let a = end(ends.source, &mut adjacency);
        let b = end(ends.target, &mut adjacency);
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut seen = vec![false; points];
    let mut components = 0usize;
    for start in 0..points {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for &q in &adjacency[p] {
                if !seen[q] {
                    seen[q] = true;
                    queue.push_back(q);
                }
            }
        }
    }
    let segments = g.edge_count();
    (components.saturating_sub(1), segments + components - points)
}

#[test]
fn pool_is_nontrivial() {
    assert!(pool().len() > 1000, "{} graphs", pool().len());
}

#[test]
fn betti_matches_cell_complex_on_pool() {
    for g in pool() {
        assert_eq!(g.betti(), cell_complex_betti(g), "{g:?}");
    }
}

#[test]
fn code_classes_match_pairwise_isomorphism() {
    let c = Color(0);
    let colors = ColorSet::range(1);
    for bp in [Biprofile::new(vec![c], vec![c]), Biprofile::new(vec![c, c], vec![c]), Biprofile::new(vec![c], vec![c, c])] {
        let mut reps: Vec<ColoredGraph> = Vec::new();
        let unary = Biprofile::unary(c);
        let split = Biprofile::new(vec![c], vec![c, c]);
        let merge = Biprofile::new(vec![c, c], vec![c]);
        let shapes: Vec<Vec<&Biprofile>> =
            vec![vec![], vec![&unary], vec![&split], vec![&merge], vec![&unary, &unary], vec![&split, &merge], vec![&unary, &split], vec![&unary, &merge]];
        for vs in &shapes {
            for_each_wiring(&bp, vs, &mut |g| {
                if !g.is_valid() {
                    return;
                }
                let known = reps.iter().any(|r| find_iso(r, g, IsoFlavor::Strict).unwrap().is_some());
                if !known {
                    reps.push(g.clone());
                }
            });
        }
        let coded: Vec<_> = enumerate_graphs(Scheme::Prop, &colors, &bp, 2, ArityBound::new(2, 2))
            .into_iter()
            .filter(|code| {
                let g = code.decode().unwrap();
                let mut profile: Vec<(usize, usize)> = (0..g.vertex_count()).map(|v| g.vertex_profile(v).arity()).collect();
                profile.sort();
                [vec![], vec![(1, 1)], vec![(1, 2)], vec![(2, 1)], vec![(1, 1), (1, 1)], vec![(1, 2), (2, 1)], vec![(1, 1), (1, 2)], vec![(1, 1), (2, 1)]]
                    .contains(&profile)
            })
            .collect();
        assert_eq!(coded.len(), reps.len(), "{bp}");
    }
}

#[test]
fn frozen_class_counts() {
    let c = Color(0);
    let colors = ColorSet::range(1);
    let unary = Biprofile::unary(c);
    // edge, corolla, chain, edge + point, corolla + point, edge + two points,
    // source beside sink, edge + source feeding sink
    assert_eq!(enumerate_graphs(Scheme::Prop, &colors, &unary, 2, ArityBound::new(1, 1)).len(), 8);
    // the connected ones: edge, corolla and chain
    assert_eq!(enumerate_graphs(Scheme::Properad, &colors, &unary, 2, ArityBound::new(1, 1)).len(), 3);
    let none = Biprofile::new(vec![], vec![]);
    // a bare point, and a source feeding a sink
    assert_eq!(enumerate_graphs(Scheme::Dioperad, &colors, &none, 1, ArityBound::new(1, 1)).len(), 1);
    assert_eq!(enumerate_graphs(Scheme::Dioperad, &colors, &none, 2, ArityBound::new(1, 1)).len(), 2);
}

#[test]
fn fixture_graphs_load() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/graphs");
    let load = |name: &str| {
        let text = std::fs::read_to_string(format!("{dir}/{name}")).unwrap();
        serde_json::from_str::<GraphJson>(&text).unwrap().to_graph().unwrap()
    };
    let diamond = load("diamond.json");
    assert!(diamond.is_valid());
    assert_eq!(diamond.betti(), (0, 1));
    assert!(Scheme::Properad.contains(&diamond));
    assert!(!Scheme::Dioperad.contains(&diamond));
    assert!(!load("wheel.json").is_valid());
}

proptest! {
    #[test]
    fn code_ignores_numbering(i in 0usize..10_000, seed in any::<u64>()) {
        let g = &pool()[i % pool().len()];
        let h = shuffled(g, seed);
        prop_assert_eq!(canonical_form(g).unwrap(), canonical_form(&h).unwrap());
        let iso = find_iso(g, &h, IsoFlavor::Strict).unwrap();
        prop_assert!(iso.is_some_and(|f| f.verify(g, &h)));
    }

    #[test]
    fn code_decodes_to_same_class(i in 0usize..10_000) {
        let g = &pool()[i % pool().len()];
        let code = canonical_form(g).unwrap();
        let back = code.decode().unwrap();
        prop_assert_eq!(canonical_form(&back).unwrap(), code.clone());
        prop_assert_eq!(back.betti(), g.betti());
        prop_assert_eq!(back.biprofile(), g.biprofile());
        let hex = code.to_hex();
        prop_assert_eq!(grprop::graphs::CanonicalCode::from_hex(&hex).unwrap(), code);
    }

    #[test]
    fn json_round_trip_is_exact(i in 0usize..10_000) {
        let g = &pool()[i % pool().len()];
        let text = serde_json::to_string(g).unwrap();
        let back: ColoredGraph = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, g);
    }

    #[test]
    fn disjoint_union_adds_components(i in 0usize..10_000, j in 0usize..10_000) {
        let (g, h) = (&pool()[i % pool().len()], &pool()[j % pool().len()]);
        let u = g.disjoint_union(h);
        prop_assert_eq!(u.component_count(), g.component_count() + h.component_count());
        prop_assert_eq!(u.betti().1, g.betti().1 + h.betti().1);
        prop_assert!(u.is_valid());
    }
}
