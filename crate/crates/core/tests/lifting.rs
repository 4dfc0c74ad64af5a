use std::sync::Arc;

use grprop::fixtures::Corpus;
use grprop::free::{boundary_inclusion, horn_inclusion};
use grprop::lifting::{boxslash, classify_morphism, BoxBounds, BoxVerdict, Flag, LiftBounds};
use grprop::ssets::{enumerate_maps, is_kan_fibration, is_trivial_fibration, FinSimplicialSet, LiftVerdict, SSetMap};
use proptest::prelude::*;

const P_MAX: usize = 2;

fn complex(vertices: Vec<usize>) -> impl Strategy<Value = Arc<FinSimplicialSet>> {
    prop::collection::vec(prop::sample::subsequence(vertices, 1..=3), 1..=3)
        .prop_map(|faces| Arc::new(FinSimplicialSet::from_maximal_faces(&faces)))
}

fn map() -> impl Strategy<Value = SSetMap> {
    (complex(vec![0, 1, 2]), complex(vec![0, 1, 2, 3]), any::<prop::sample::Index>()).prop_filter_map(
        "no maps",
        |(x, y, pick)| {
            let maps = enumerate_maps(&x, &y, 10_000);
            (!maps.is_empty()).then(|| maps[pick.index(maps.len())].clone())
        },
    )
}

/// Lifting against every generator, by enumeration; `None` when a bound is hit.
fn lifts_against(generators: &[SSetMap], f: &SSetMap) -> Option<bool> {
    let mut all = true;
    for i in generators {
        match boxslash(i, f, BoxBounds::default()) {
            BoxVerdict::Yes { .. } => {}
            BoxVerdict::No { .. } => all = false,
            BoxVerdict::BoundExhausted { .. } => return None,
        }
    }
    Some(all)
}

fn decided<W>(v: LiftVerdict<W>) -> Option<bool> {
    match v {
        LiftVerdict::Yes { .. } => Some(true),
        LiftVerdict::No { .. } => Some(false),
        LiftVerdict::BoundExhausted { .. } => None,
    }
}

fn horns() -> Vec<SSetMap> {
    (1..=P_MAX).flat_map(|p| (0..=p).map(move |k| horn_inclusion(k, p).unwrap())).collect()
}

fn boundaries() -> Vec<SSetMap> {
    (0..=P_MAX).map(|p| boundary_inclusion(p).unwrap()).collect()
}

#[test]
fn identities_and_the_counterexample() {
    let corpus = Corpus::standard().unwrap();
    let bounds = LiftBounds::default();
    for name in ["id_T1", "id_E2", "id_M_pt"] {
        let c = classify_morphism(corpus.morphism(name), bounds).unwrap();
        assert!(c.all_yes(), "{name}");
    }
    let (g, f) = corpus.counterexample();
    let composite = g.then(f).unwrap();
    assert_eq!(classify_morphism(g, bounds).unwrap().w1.flag, Flag::Yes);
    assert_eq!(classify_morphism(&composite, bounds).unwrap().w1.flag, Flag::Yes);
    assert_eq!(classify_morphism(f, bounds).unwrap().w1.flag, Flag::No);
}

#[test]
fn both_routes_decide_a_fixed_sweep() {
    let objects = || {
        vec![
            Arc::new(FinSimplicialSet::point()),
            Arc::new(FinSimplicialSet::discrete(2)),
            Arc::new(FinSimplicialSet::simplex(1)),
            Arc::new(FinSimplicialSet::horn(0, 2).unwrap()),
            Arc::new(FinSimplicialSet::boundary(2)),
            Arc::new(FinSimplicialSet::simplex(2)),
        ]
    };
    let (mut decided_kan, mut decided_trivial) = ([0usize; 2], [0usize; 2]);
    for x in objects() {
        for y in objects() {
            for f in enumerate_maps(&x, &y, 1_000) {
                if let (Some(a), Some(b)) = (decided(is_kan_fibration(&f, P_MAX)), lifts_against(&horns(), &f)) {
                    assert_eq!(a, b, "{f:?}");
                    decided_kan[a as usize] += 1;
                }
                if let (Some(a), Some(b)) = (decided(is_trivial_fibration(&f, P_MAX)), lifts_against(&boundaries(), &f)) {
                    assert_eq!(a, b, "{f:?}");
                    decided_trivial[a as usize] += 1;
                }
            }
        }
    }
    assert!(decided_kan.iter().all(|&n| n >= 10), "{decided_kan:?}");
    assert!(decided_trivial.iter().all(|&n| n >= 5), "{decided_trivial:?}");
}

#[test]
fn flags_combine() {
    assert_eq!(Flag::Yes.and(Flag::Unknown), Flag::Unknown);
    assert_eq!(Flag::Unknown.and(Flag::No), Flag::No);
    assert_eq!(Flag::all([Flag::Yes, Flag::Yes]), Flag::Yes);
    assert_eq!(Flag::from_bool(false), Flag::No);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kan_check_agrees_with_enumeration(f in map()) {
        let direct = decided(is_kan_fibration(&f, P_MAX));
        let enumerated = lifts_against(&horns(), &f);
        if let (Some(a), Some(b)) = (direct, enumerated) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn trivial_fibration_check_agrees_with_enumeration(f in map()) {
        let direct = decided(is_trivial_fibration(&f, P_MAX));
        let enumerated = lifts_against(&boundaries(), &f);
        if let (Some(a), Some(b)) = (direct, enumerated) {
            prop_assert_eq!(a, b);
        }
        if direct == Some(true) {
            prop_assert!(f.is_surjective() || f.cod().is_empty());
        }
    }
}
