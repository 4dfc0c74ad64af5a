//! Lifting of one finite simplicial map against another, by enumerating
//! every square and every candidate lift.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::Square;
use crate::ssets::{enumerate_maps, SSetMap, Simplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxBounds {
    /// Cap on the maps enumerated between any two of the four objects.
    pub max_maps: usize,
}

impl Default for BoxBounds {
    fn default() -> Self {
        BoxBounds { max_maps: 500_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum BoxVerdict {
    /// All `squares` commuting squares have a lift.
    Yes { squares: usize },
    No { witness: Box<Square> },
    BoundExhausted { what: String },
}

impl BoxVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, BoxVerdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, BoxVerdict::No { .. })
    }
}

type Images = Vec<Vec<Simplex>>;

/// Whether `i: A -> B` has the left lifting property against `f: X -> Y`.
///
/// Every map `B -> X` is enumerated once and recorded by its pair of
/// restrictions `(l ∘ i, f ∘ l)`; a commuting square has a lift exactly
/// when its pair `(top, bottom)` was recorded.
pub fn boxslash(i: &SSetMap, f: &SSetMap, bounds: BoxBounds) -> BoxVerdict {
    let (a, b) = (i.dom_arc(), i.cod_arc());
    let (x, y) = (f.dom_arc(), f.cod_arc());
    let limit = bounds.max_maps;
    let all = |s: &Arc<_>, t: &Arc<_>, what: &str| {
        let maps = enumerate_maps(s, t, limit + 1);
        if maps.len() > limit {
            Err(BoxVerdict::BoundExhausted { what: what.into() })
        } else {
            Ok(maps)
        }
    };
    let run = || -> Result<BoxVerdict, BoxVerdict> {
        let lifts = all(b, x, "maps from the target of i to the source of f")?;
        let solved: HashSet<(Images, Images)> =
            lifts.iter().map(|l| (i.then(l).images().to_vec(), l.then(f).images().to_vec())).collect();
        let tops = all(a, x, "maps from the source of i to the source of f")?;
        let mut by_image: HashMap<Images, Vec<&SSetMap>> = HashMap::new();
        for t in &tops {
            by_image.entry(t.then(f).images().to_vec()).or_default().push(t);
        }
        let bottoms = all(b, y, "maps from the target of i to the target of f")?;
        let mut squares = 0;
        for bottom in &bottoms {
            let key = i.then(bottom).images().to_vec();
            let bottom_images = bottom.images().to_vec();
            for top in by_image.get(&key).into_iter().flatten() {
                squares += 1;
                if !solved.contains(&(top.images().to_vec(), bottom_images.clone())) {
                    let witness = Square { i: i.clone(), f: f.clone(), top: (*top).clone(), bottom: bottom.clone() };
                    return Ok(BoxVerdict::No { witness: Box::new(witness) });
                }
            }
        }
        Ok(BoxVerdict::Yes { squares })
    };
    run().unwrap_or_else(|v| v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::{boundary_inclusion, horn_inclusion};
    use crate::ssets::FinSimplicialSet;

    #[test]
    fn anything_lifts_against_an_identity() {
        let i = horn_inclusion(1, 2).unwrap();
        let f = SSetMap::identity(FinSimplicialSet::boundary(2));
        assert!(boxslash(&i, &f, BoxBounds::default()).is_yes());
    }

    #[test]
    fn inner_horn_against_the_circle() {
        let i = horn_inclusion(1, 2).unwrap();
        let f = SSetMap::to_point(FinSimplicialSet::boundary(2));
        match boxslash(&i, &f, BoxBounds::default()) {
            BoxVerdict::No { witness } => assert!(witness.commutes()),
            v => panic!("expected a witness, got {v:?}"),
        }
    }

    #[test]
    fn empty_source_needs_surjective_vertices() {
        let i = boundary_inclusion(0).unwrap();
        let two = FinSimplicialSet::discrete(2);
        let onto = SSetMap::to_point(two.clone());
        assert!(boxslash(&i, &onto, BoxBounds::default()).is_yes());
        let into = SSetMap::from_empty(two);
        assert!(boxslash(&i, &into, BoxBounds::default()).is_no());
    }

    #[test]
    fn tight_bounds_are_reported() {
        let i = horn_inclusion(0, 2).unwrap();
        let f = SSetMap::to_point(FinSimplicialSet::discrete(3));
        let v = boxslash(&i, &f, BoxBounds { max_maps: 1 });
        assert!(matches!(v, BoxVerdict::BoundExhausted { .. }));
    }
}
