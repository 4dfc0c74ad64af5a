//! Lifting properties of simplicial maps and of morphisms of generalized
//! props, and the classification of morphisms by entrywise and componentwise
//! conditions.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::free::FreeError;
use crate::properads::PropError;
use crate::ssets::json::SSetMapJson;
use crate::ssets::{SSetError, SSetMap};

mod adjunction;
mod boxslash;
mod classify;
mod rlp;

pub use adjunction::{adjunction_check, forgetful_map, AdjunctionReport};
pub use boxslash::{boxslash, BoxBounds, BoxVerdict};
pub use classify::{
    classify_morphism, local_only_two_of_three, two_of_three_check, Check, Classification, ComparisonSquare,
    TwoOfThreeReport,
};
pub use rlp::{
    entrywise_fibration, local_lifting_equivalence, rlp_generators, EntryFibration, LiftBounds, LocalLiftingReport,
    RlpFailure, RlpVerdict,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftingError {
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error(transparent)]
    Prop(#[from] PropError),
    #[error(transparent)]
    Free(#[from] FreeError),
    #[error(transparent)]
    SSet(#[from] SSetError),
}

/// A three-valued verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub enum Flag {
    Yes,
    No,
    Unknown,
}

impl Flag {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Flag::Yes
        } else {
            Flag::No
        }
    }

    /// No if any is No, Yes if all are Yes, Unknown otherwise.
    pub fn all(flags: impl IntoIterator<Item = Flag>) -> Flag {
        let mut out = Flag::Yes;
        for f in flags {
            match f {
                Flag::No => return Flag::No,
                Flag::Unknown => out = Flag::Unknown,
                Flag::Yes => {}
            }
        }
        out
    }

    pub fn and(self, other: Flag) -> Flag {
        Flag::all([self, other])
    }

    pub fn is_yes(self) -> bool {
        self == Flag::Yes
    }

    pub fn is_no(self) -> bool {
        self == Flag::No
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::Yes => "yes",
            Flag::No => "no",
            Flag::Unknown => "unknown",
        })
    }
}

/// A commuting square `f ∘ top = bottom ∘ i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    pub i: SSetMap,
    pub f: SSetMap,
    pub top: SSetMap,
    pub bottom: SSetMap,
}

impl Square {
    pub fn commutes(&self) -> bool {
        self.top.then(&self.f).images() == self.i.then(&self.bottom).images()
    }
}

impl Serialize for Square {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            top: SSetMapJson,
            bottom: SSetMapJson,
        }
        Repr { top: SSetMapJson::of(&self.top), bottom: SSetMapJson::of(&self.bottom) }.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_aggregation() {
        assert_eq!(Flag::all([]), Flag::Yes);
        assert_eq!(Flag::all([Flag::Yes, Flag::Unknown]), Flag::Unknown);
        assert_eq!(Flag::all([Flag::Unknown, Flag::No]), Flag::No);
    }
}
