use std::sync::Arc;

use grprop::fixtures::Corpus;
use grprop::graphs::{Biprofile, Color, ColoredGraph, Scheme};
use grprop::properads::{
    check_axioms, induced_functor, is_cat_equivalence, pi0_category, AxiomBounds, Decoration, GrProp, PropMorphism,
    PropSpec, TableComposer, TableOverride,
};
use grprop::ssets::Simplex;
use grprop::substitution::graft;

fn fixture(name: &str) -> GrProp {
    let path = format!("{}/fixtures/props/{name}", env!("CARGO_MANIFEST_DIR"));
    let spec: PropSpec = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    spec.build().unwrap()
}

#[test]
fn fixture_props_satisfy_the_axioms() {
    for name in ["terminal.json", "end2.json", "monoid_interval.json"] {
        let p = fixture(name);
        let report = check_axioms(&p, &AxiomBounds::default());
        assert!(report.is_clean(), "{name}: {:?}", report.violations.first());
        assert!(report.total_checks() > 100, "{name}: {}", report.total_checks());
    }
}

#[test]
fn corpus_props_satisfy_the_axioms() {
    let corpus = Corpus::standard().unwrap();
    let bounds = AxiomBounds { vertices: 2, ..AxiomBounds::default() };
    for (name, p) in &corpus.props {
        let report = check_axioms(p, &bounds);
        assert!(report.is_clean(), "{name}: {:?}", report.violations.first());
    }
}

#[test]
fn endomorphism_entries_count_functions() {
    let p = fixture("end2.json");
    let c = Color(0);
    for n in 0..=2 {
        for m in 0..=2 {
            let bp = Biprofile::new(vec![c; n], vec![c; m]);
            let functions = (1usize << m).pow(1 << n);
            assert_eq!(p.entry(&bp).unwrap().vertex_count(), functions, "{bp}");
        }
    }
}

#[test]
fn a_corrupted_table_is_caught() {
    let base = Arc::new(GrProp::endomorphism(Scheme::Properad, vec![2]).unwrap());
    let c = Color(0);
    let unary = ColoredGraph::corolla(&Biprofile::unary(c));
    let chain = graft(&unary, &unary).unwrap();
    let id = base.unit(c).unwrap();
    let labels = vec![id.clone(), id.clone()];
    let honest = base.gamma(&Decoration::new(chain.clone(), labels.clone(), 0)).unwrap();
    let wrong = (0..4)
        .map(|i| Simplex::nondegenerate(grprop::ssets::CellId { dim: 0, index: i }))
        .find(|s| *s != honest)
        .unwrap();
    let composer = TableComposer::new(base.composer().clone(), vec![TableOverride::of(&chain, &labels, 0, wrong)]);
    let broken = GrProp::new("broken", Scheme::Properad, base.colors().clone(), base.arity(), Arc::new(composer));
    let report = check_axioms(&broken, &AxiomBounds::default());
    assert!(!report.is_clean());
}

#[test]
fn identity_induces_an_equivalence_of_components() {
    let corpus = Corpus::standard().unwrap();
    for name in ["T1", "E2", "M_d1"] {
        let p = corpus.prop(name);
        let cat = pi0_category(&p).unwrap();
        assert!(cat.object_count() >= 1);
        let f = induced_functor(&PropMorphism::identity(p)).unwrap();
        assert!(is_cat_equivalence(&f).is_ok(), "{name}");
    }
}

#[test]
fn morphisms_commute_with_composition() {
    let corpus = Corpus::standard().unwrap();
    let c = Color(0);
    let unary = ColoredGraph::corolla(&Biprofile::unary(c));
    let chain = graft(&unary, &unary).unwrap();
    for f in &corpus.morphisms {
        let name = f.name();
        if f.dom().colors().len() != 1 || f.dom().entry(&Biprofile::unary(c)).unwrap().vertex_count() == 0 {
            continue;
        }
        assert!(f.preserves_units().unwrap(), "{name}");
        let n = f.dom().entry(&Biprofile::unary(c)).unwrap().vertex_count();
        for a in 0..n {
            for b in 0..n {
                let d = Decoration::by_vertices(chain.clone(), &[a, b]);
                assert!(f.commutes_on(&d).unwrap(), "{name} on {a},{b}");
            }
        }
    }
}
