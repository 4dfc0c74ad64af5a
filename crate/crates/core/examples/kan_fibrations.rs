//! Kan conditions, homology and weak equivalences of finite simplicial sets.

use std::sync::Arc;

use grprop::ssets::{homology, is_kan_fibration, weak_equivalence_verdict, FinSimplicialSet, LiftVerdict, SSetMap};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let horn = FinSimplicialSet::horn(1, 2)?;
    let simplex = FinSimplicialSet::simplex(2);
    let inclusion = SSetMap::extend_vertex_map(horn.clone(), simplex.clone(), &[0, 1, 2])?;
    println!("inner horn inclusion a weak equivalence: {:?}", weak_equivalence_verdict(&inclusion));

    let circle = FinSimplicialSet::boundary(2);
    let ranks: Vec<usize> = homology(&circle, 2).iter().map(|h| h.rank).collect();
    println!("boundary of the 2-simplex has homology ranks {ranks:?}");

    let to_point = SSetMap::to_point(Arc::new(circle));
    match is_kan_fibration(&to_point, 2) {
        LiftVerdict::Yes { checked_up_to } => println!("boundary is Kan up to dimension {checked_up_to}"),
        LiftVerdict::No { .. } => println!("boundary of the 2-simplex is not Kan"),
        LiftVerdict::BoundExhausted { reached } => println!("gave up at dimension {reached}"),
    }
    Ok(())
}
