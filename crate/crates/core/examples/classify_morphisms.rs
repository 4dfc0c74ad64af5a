//! Classifies the corpus morphisms and runs two-out-of-three on composable
//! pairs.

use grprop::fixtures::Corpus;
use grprop::lifting::{classify_morphism, local_only_two_of_three, two_of_three_check, LiftBounds};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let corpus = Corpus::standard()?;
    let bounds = LiftBounds::default();
    for name in ["id_E2", "E2_swap", "T2->T1", "M_h0->M_d2", "M_d1->M_pt"] {
        let c = classify_morphism(corpus.morphism(name), bounds)?;
        println!("{name:>12}: W1 {} W2 {} F1 {} F2 {}", c.w1.flag, c.w2.flag, c.f1.flag, c.f2.flag);
    }
    let (g, f) = corpus.counterexample();
    let entrywise = local_only_two_of_three(g, f)?;
    let full = two_of_three_check(g, f, bounds)?;
    println!("{} then {}: entrywise only holds {}, with components holds {}", g.name(), f.name(), entrywise.holds(), full.holds());
    Ok(())
}
