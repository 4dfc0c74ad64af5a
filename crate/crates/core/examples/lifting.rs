//! Right lifting against generating families, entry by entry and through
//! the free props on horn inclusions.

use grprop::fixtures::Corpus;
use grprop::free::{horn_inclusion, GeneratorFamily, HomBounds};
use grprop::lifting::{adjunction_check, entrywise_fibration, local_lifting_equivalence, rlp_generators, BoxBounds, LiftBounds};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let corpus = Corpus::standard()?;
    let bounds = LiftBounds::default();
    let horns = GeneratorFamily::horns(2, bounds.p_max)?;
    for name in ["M_h0->M_d2", "M_d2->M_pt", "T2->T1"] {
        let f = corpus.morphism(name);
        let rlp = rlp_generators(f, &horns, bounds)?;
        let kan = entrywise_fibration(f, bounds.p_max, false)?;
        let local = local_lifting_equivalence(f, bounds)?;
        println!("{name:>12}: against horns {}, entrywise Kan {}, boundaries {}", rlp.verdict, kan.verdict, local.boundaries);
    }
    let f = corpus.morphism("M_d1->M_pt");
    let r = adjunction_check(f, &horn_inclusion(1, 2)?, BoxBounds::default(), HomBounds::default())?;
    println!("M_d1->M_pt against the inner horn: unary entries {}, free map {} over {} squares", r.forgetful, r.free, r.free_squares);
    Ok(())
}
