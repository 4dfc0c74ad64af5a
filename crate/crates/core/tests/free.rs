use std::sync::Arc;

use grprop::fixtures::Corpus;
use grprop::free::{
    beta_decomposition_check, compare_homs, left_adjoint_truncated, materialize_gnm, unit_map, FreeBounds, HomBounds,
    SchemePair,
};
use grprop::graphs::{ArityBound, Biprofile, Color, Scheme};
use grprop::properads::GrProp;
use grprop::ssets::FinSimplicialSet;

fn small(n: usize) -> FreeBounds {
    FreeBounds::new(n, ArityBound::new(1, 1))
}

#[test]
fn bottom_stratum_of_end2_is_its_entry() {
    let corpus = Corpus::standard().unwrap();
    let p = corpus.prop("E2");
    let bp = Biprofile::unary(Color(0));
    for pair in [SchemePair::DI_TO_C, SchemePair::C_TO_PROP] {
        let r = beta_decomposition_check(&p, pair, &bp, small(2)).unwrap();
        assert!(r.holds(), "{pair}: {r:?}");
        assert_eq!(r.entry_size, 4);
        assert_eq!(r.stratum_classes, 4);
        assert!(unit_map(&p, pair, &bp, small(2)).unwrap().injective);
    }
}

#[test]
fn disconnected_graphs_sit_above_the_bottom() {
    let p = GrProp::terminal(Scheme::Properad, 1, false).unwrap();
    let c = Color(0);
    let bp = Biprofile::new(vec![c, c], vec![c, c]);
    let fe = left_adjoint_truncated(&p, SchemePair::C_TO_PROP, &bp, FreeBounds::new(2, ArityBound::new(1, 1))).unwrap();
    let strata = fe.strata();
    assert!(strata.keys().any(|&b| b > 0), "{strata:?}");
    for class in 0..fe.class_count() {
        let rep = fe.representative(class);
        assert_eq!(rep.beta, SchemePair::C_TO_PROP.beta(&rep.graph));
    }
}

#[test]
fn strata_labels_follow_the_pair() {
    let c = Color(0);
    let p = GrProp::terminal(Scheme::Dioperad, 1, false).unwrap();
    let bp = Biprofile::unary(c);
    let fe = left_adjoint_truncated(&p, SchemePair::DI_TO_C, &bp, FreeBounds::new(2, ArityBound::new(2, 2))).unwrap();
    for class in 0..fe.class_count() {
        let rep = fe.representative(class);
        assert_eq!(rep.beta, rep.graph.betti().1 as i64);
    }
    assert!(fe.strata().contains_key(&1), "{:?}", fe.strata());
}

/// Maps from a discrete `X` with `points` points into each entry of shape
/// `(n;m)`, counted over every coloring.
fn expected_homs(p: &GrProp, n: usize, m: usize, points: u32) -> usize {
    let mut total = 0;
    for ins in p.colors().words(n) {
        for outs in p.colors().words(m) {
            let vertices = p.entry(&Biprofile::new(ins.clone(), outs)).unwrap().vertex_count();
            total += vertices.pow(points);
        }
    }
    total
}

#[test]
fn generated_props_represent_maps_into_entries() {
    let corpus = Corpus::standard().unwrap();
    let xs = [(FinSimplicialSet::empty(), 0), (FinSimplicialSet::point(), 1), (FinSimplicialSet::boundary(1), 2)];
    for name in ["T1", "T2", "E2", "M_d1"] {
        let target: Arc<GrProp> = corpus.prop(name);
        for (x, points) in &xs {
            for (n, m) in [(1, 1), (2, 1)] {
                let g = materialize_gnm(n, m, x.clone(), Scheme::Properad, 1, 2).unwrap();
                let r = compare_homs(&g, &target, HomBounds::default()).unwrap();
                assert!(r.bijective, "{name} ({n},{m}) on {points} points");
                assert_eq!(r.homs, expected_homs(&target, n, m, *points), "{name} ({n},{m}) on {points} points");
            }
        }
    }
}

#[test]
fn frozen_hom_counts() {
    let corpus = Corpus::standard().unwrap();
    let one = materialize_gnm(1, 1, FinSimplicialSet::point(), Scheme::Properad, 1, 2).unwrap();
    assert_eq!(compare_homs(&one, &corpus.prop("E2"), HomBounds::default()).unwrap().homs, 4);
    let wide = materialize_gnm(2, 1, FinSimplicialSet::empty(), Scheme::Properad, 1, 2).unwrap();
    assert_eq!(compare_homs(&wide, &corpus.prop("T2"), HomBounds::default()).unwrap().homs, 8);
}
