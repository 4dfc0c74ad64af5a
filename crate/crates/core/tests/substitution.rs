use std::collections::HashMap;
use std::sync::OnceLock;

use grprop::graphs::enumerate::enumerate_graph_reps;
use grprop::graphs::{canonical_form, ArityBound, Biprofile, Color, ColorSet, ColoredGraph, Scheme};
use grprop::substitution::{
    check_closure, compose_substitution_data, graft, substitute, ClosureBounds, SubstitutionData,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Library {
    targets: Vec<ColoredGraph>,
    fillers: HashMap<Biprofile, Vec<ColoredGraph>>,
}

fn library(scheme: Scheme) -> &'static Library {
    static LIBS: OnceLock<Vec<(Scheme, Library)>> = OnceLock::new();
    let libs = LIBS.get_or_init(|| {
        Scheme::ALL
            .iter()
            .map(|&s| {
                let colors = ColorSet::range(1);
                let arity = ArityBound::new(2, 2);
                let mut fillers = HashMap::new();
                let mut targets = Vec::new();
                for bp in arity.profiles(&colors) {
                    let reps = enumerate_graph_reps(s, &colors, &bp, 2, arity);
                    targets.extend(reps.iter().filter(|g| g.vertex_count() > 0).cloned());
                    fillers.insert(bp, reps);
                }
                (s, Library { targets, fillers })
            })
            .collect()
    });
    &libs.iter().find(|(s, _)| *s == scheme).unwrap().1
}

fn fill(lib: &Library, g: &ColoredGraph, rng: &mut ChaCha8Rng) -> SubstitutionData {
    let assignment = (0..g.vertex_count())
        .map(|v| lib.fillers[&g.vertex_profile(v)].choose(rng).unwrap().clone())
        .collect();
    SubstitutionData::new(g.clone(), assignment).unwrap()
}

fn scheme_strategy() -> impl Strategy<Value = Scheme> {
    prop_oneof![Just(Scheme::Prop), Just(Scheme::Properad), Just(Scheme::Dioperad)]
}

#[test]
fn corolla_and_identity_are_units() {
    for scheme in Scheme::ALL {
        let lib = library(scheme);
        for g in &lib.targets {
            let same = substitute(&SubstitutionData::identity(g.clone())).unwrap();
            assert_eq!(canonical_form(&same).unwrap(), canonical_form(g).unwrap());
            let corolla = ColoredGraph::corolla(&g.biprofile());
            let into = substitute(&SubstitutionData::new(corolla, vec![g.clone()]).unwrap()).unwrap();
            assert_eq!(canonical_form(&into).unwrap(), canonical_form(g).unwrap());
        }
    }
}

#[test]
fn mismatched_filler_is_rejected() {
    let c = Color(0);
    let corolla = ColoredGraph::corolla(&Biprofile::unary(c));
    let wide = ColoredGraph::corolla(&Biprofile::new(vec![c, c], vec![c]));
    assert!(SubstitutionData::new(corolla.clone(), vec![wide]).is_err());
    assert!(SubstitutionData::new(corolla, vec![]).is_err());
}

#[test]
fn graft_of_corollas_is_a_chain() {
    let c = Color(0);
    let v = ColoredGraph::corolla(&Biprofile::new(vec![c], vec![c]));
    let split = ColoredGraph::corolla(&Biprofile::new(vec![c], vec![c, c]));
    let g = graft(&v, &split).unwrap();
    assert_eq!(g.vertex_count(), 2);
    assert_eq!(g.internal_edge_count(), 1);
    assert_eq!(g.biprofile(), Biprofile::new(vec![c], vec![c, c]));
    assert!(graft(&split, &v).is_err());
}

#[test]
fn schemes_are_closed_on_small_domains() {
    for scheme in Scheme::ALL {
        let bounds = ClosureBounds { colors: 1, outer_vertices: 2, ..ClosureBounds::default() };
        let report = check_closure(scheme, &bounds);
        assert!(report.is_clean(), "{scheme}: {:?}", report.counterexamples.first());
        assert!(report.substitutions_checked > 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn substitution_is_associative(scheme in scheme_strategy(), i in 0usize..10_000, seed in any::<u64>()) {
        let lib = library(scheme);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = &lib.targets[i % lib.targets.len()];
        let outer = fill(lib, g, &mut rng);
        let k = substitute(&outer).unwrap();
        let mut order: Vec<usize> = (0..k.vertex_count()).collect();
        let mut edges: Vec<usize> = (0..k.edge_count()).collect();
        order.shuffle(&mut rng);
        edges.shuffle(&mut rng);
        let k = k.relabel(&order, &edges);
        let inner = fill(lib, &k, &mut rng);
        let two_steps = substitute(&inner).unwrap();
        let composed = compose_substitution_data(&inner, &outer).unwrap();
        let one_step = substitute(&composed).unwrap();
        prop_assert_eq!(canonical_form(&two_steps).unwrap(), canonical_form(&one_step).unwrap());
    }

    #[test]
    fn substitution_counts_add_up(scheme in scheme_strategy(), i in 0usize..10_000, seed in any::<u64>()) {
        let lib = library(scheme);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = &lib.targets[i % lib.targets.len()];
        let d = fill(lib, g, &mut rng);
        let k = substitute(&d).unwrap();
        prop_assert_eq!(k.biprofile(), g.biprofile());
        prop_assert_eq!(k.vertex_count(), d.assignment.iter().map(|h| h.vertex_count()).sum::<usize>());
        prop_assert!(scheme.contains(&k));
        if scheme != Scheme::Prop {
            let cycles = g.betti().1 + d.assignment.iter().map(|h| h.betti().1).sum::<usize>();
            prop_assert_eq!(k.betti().1, cycles);
        }
    }
}
