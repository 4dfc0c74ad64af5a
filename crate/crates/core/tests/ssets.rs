use std::sync::Arc;

use grprop::ssets::{
    homology, is_kan_fibration, is_trivial_fibration, weak_equivalence_verdict, FinSimplicialSet, SSetMap,
};
use proptest::prelude::*;

fn ranks(x: &FinSimplicialSet, top: usize) -> Vec<usize> {
    homology(x, top).iter().map(|h| h.rank).collect()
}

fn acyclic(x: &FinSimplicialSet) -> bool {
    let top = x.dimension().unwrap_or(0) + 1;
    let h = homology(x, top);
    h[0].rank == 1 && h[0].torsion.is_empty() && h[1..].iter().all(|g| g.is_zero())
}

/// Maximal faces of a random ordered complex on at most four vertices.
fn complex() -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::sample::subsequence(vec![0usize, 1, 2, 3], 1..=3), 1..=4)
}

#[test]
fn standard_objects() {
    for p in 0..=3 {
        assert!(acyclic(&FinSimplicialSet::simplex(p)));
        for k in 0..=p {
            if p > 0 {
                assert!(acyclic(&FinSimplicialSet::horn(k, p).unwrap()), "horn {k} of {p}");
            }
        }
    }
    for p in 1..=3 {
        let mut expect = vec![0; p + 1];
        expect[0] = 1;
        expect[p - 1] += 1;
        assert_eq!(ranks(&FinSimplicialSet::boundary(p), p), expect, "boundary of {p}");
    }
    assert!(FinSimplicialSet::horn(3, 2).is_err());
}

#[test]
fn kan_conditions_on_standard_objects() {
    let point = SSetMap::to_point(Arc::new(FinSimplicialSet::point()));
    assert!(is_kan_fibration(&point, 2).is_yes());
    assert!(is_trivial_fibration(&point, 2).is_yes());
    let two_points = SSetMap::to_point(Arc::new(FinSimplicialSet::discrete(2)));
    assert!(is_kan_fibration(&two_points, 2).is_yes());
    assert!(is_trivial_fibration(&two_points, 2).is_no());
    let interval = SSetMap::to_point(Arc::new(FinSimplicialSet::simplex(1)));
    assert!(is_kan_fibration(&interval, 2).is_no());
    let empty = SSetMap::from_empty(Arc::new(FinSimplicialSet::point()));
    assert!(is_trivial_fibration(&empty, 2).is_no());
}

#[test]
fn horn_inclusions_are_weak_equivalences() {
    for p in 1..=3 {
        for k in 0..=p {
            let horn = FinSimplicialSet::horn(k, p).unwrap();
            let vertices: Vec<usize> = if p == 1 { vec![k] } else { (0..=p).collect() };
            let i = SSetMap::extend_vertex_map(horn, FinSimplicialSet::simplex(p), &vertices).unwrap();
            assert!(weak_equivalence_verdict(&i).is_yes(), "horn {k} of {p}");
        }
        let vertices: Vec<usize> = (0..=p).collect();
        let i = SSetMap::extend_vertex_map(FinSimplicialSet::boundary(p), FinSimplicialSet::simplex(p), &vertices).unwrap();
        assert!(weak_equivalence_verdict(&i).is_no(), "boundary of {p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_characteristic_agrees(faces in complex()) {
        let x = FinSimplicialSet::from_maximal_faces(&faces);
        let top = x.dimension().unwrap_or(0);
        let cells: i64 = (0..=top).map(|d| if d % 2 == 0 { x.count(d) as i64 } else { -(x.count(d) as i64) }).sum();
        let h: i64 = ranks(&x, top).iter().enumerate().map(|(d, &r)| if d % 2 == 0 { r as i64 } else { -(r as i64) }).sum();
        prop_assert_eq!(cells, h);
        prop_assert_eq!(ranks(&x, 0)[0], x.pi0().count);
    }

    #[test]
    fn products_satisfy_kunneth(a in complex(), b in complex()) {
        let x = FinSimplicialSet::from_maximal_faces(&a);
        let y = FinSimplicialSet::from_maximal_faces(&b);
        let (dx, dy) = (x.dimension().unwrap_or(0), y.dimension().unwrap_or(0));
        prop_assume!(dx + dy <= 3);
        let (hx, hy) = (ranks(&x, dx), ranks(&y, dy));
        let (xy, _, _) = x.product(&y);
        let hxy = ranks(&xy, dx + dy);
        for (n, &got) in hxy.iter().enumerate() {
            let expect: usize = (0..=n).map(|i| hx.get(i).unwrap_or(&0) * hy.get(n - i).unwrap_or(&0)).sum();
            prop_assert_eq!(got, expect, "degree {}", n);
        }
    }

    #[test]
    fn collapse_to_point_is_sound(faces in complex()) {
        let x = Arc::new(FinSimplicialSet::from_maximal_faces(&faces));
        let verdict = weak_equivalence_verdict(&SSetMap::to_point(x.clone()));
        if verdict.is_yes() {
            prop_assert!(acyclic(&x));
        }
        if acyclic(&x) {
            prop_assert!(!verdict.is_no());
        }
        if is_trivial_fibration(&SSetMap::to_point(x.clone()), 2).is_yes() {
            prop_assert!(acyclic(&x));
        }
    }

    #[test]
    fn composite_maps_check(faces in complex()) {
        let x = Arc::new(FinSimplicialSet::from_maximal_faces(&faces));
        let id = SSetMap::identity(x.clone());
        let to_point = SSetMap::to_point(x.clone());
        let through = id.then(&to_point);
        prop_assert!(through.check().is_ok());
        prop_assert_eq!(through.images(), to_point.images());
        prop_assert!(id.is_iso());
        prop_assert!(weak_equivalence_verdict(&id).is_yes());
    }
}
