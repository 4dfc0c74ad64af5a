//! Free constructions along an inclusion of pasting schemes.
//!
//! The left adjoint to restriction along an inner scheme inside an outer one
//! is computed entry by entry as a colimit over extension categories,
//! truncated to outer graphs with at most `N` vertices. The free props
//! `𝒢_{n,m}[X]` on one family of generators are built explicitly.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{Biprofile, ColoredGraph, Scheme};
use crate::properads::PropError;
use crate::ssets::SSetError;
use crate::substitution::SubstitutionError;

mod extension;
mod generated;
mod generators;
mod left_adjoint;

pub use extension::{extension_morphisms, extension_objects, SliceBounds};
pub use generated::{
    compare_homs, generated_map, homs_from_generated, materialize_gnm, GeneratedComposer, GeneratedProp, HomBounds,
    HomComparison,
};
pub use generators::{boundary_inclusion, horn_inclusion, Generator, GeneratorFamily, GeneratorKind};
pub use left_adjoint::{
    beta_decomposition_check, left_adjoint_truncated, unit, unit_map, well_behaved_check, BetaReport, FreeBounds,
    FreeClass, FreeElement, FreeEntry, UnitMap, WellBehavedReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeError {
    #[error("{what} exceeds the bound {bound}")]
    Bound { what: String, bound: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("the prop's scheme does not contain the inner scheme {0}")]
    SchemeMismatch(Scheme),
    #[error(transparent)]
    Prop(#[from] PropError),
    #[error(transparent)]
    SSet(#[from] SSetError),
    #[error(transparent)]
    Substitution(#[from] SubstitutionError),
}

/// Which reduced Betti number labels the strata.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairTag {
    /// Simply connected inside connected graphs; strata by cycle rank.
    DiToC,
    /// Connected inside all graphs; strata by components minus one.
    CToProp,
}

/// An inner scheme contained in an outer one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchemePair {
    pub inner: Scheme,
    pub outer: Scheme,
    pub tag: PairTag,
}

impl SchemePair {
    pub const DI_TO_C: SchemePair = SchemePair { inner: Scheme::Dioperad, outer: Scheme::Properad, tag: PairTag::DiToC };
    pub const C_TO_PROP: SchemePair = SchemePair { inner: Scheme::Properad, outer: Scheme::Prop, tag: PairTag::CToProp };

    pub fn parse(s: &str) -> Option<SchemePair> {
        match s.to_ascii_lowercase().replace(['-', '>', '_'], "").as_str() {
            "dic" | "ditoc" => Some(Self::DI_TO_C),
            "cprop" | "ctoprop" => Some(Self::C_TO_PROP),
            _ => None,
        }
    }

    /// The stratum label of an outer graph. The empty graph gets `-1` under
    /// the component count, so it never lies in the bottom stratum.
    pub fn beta(&self, g: &ColoredGraph) -> i64 {
        match self.tag {
            PairTag::CToProp if g.vertices.is_empty() && g.edges.is_empty() => -1,
            PairTag::CToProp => g.betti().0 as i64,
            PairTag::DiToC => g.betti().1 as i64,
        }
    }
}

impl fmt::Display for SchemePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.tag {
            PairTag::DiToC => "di->c",
            PairTag::CToProp => "c->prop",
        })
    }
}

/// Every biprofile over `colors` with at most `n` inputs and `m` outputs.
pub fn biprofiles_up_to(colors: &crate::graphs::ColorSet, n: usize, m: usize) -> Vec<Biprofile> {
    let mut out = Vec::new();
    for i in 0..=n {
        for o in 0..=m {
            for ins in colors.words(i) {
                for outs in colors.words(o) {
                    out.push(Biprofile::new(ins.clone(), outs));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Color;

    #[test]
    fn strata_labels() {
        let c = Color(0);
        let corolla = ColoredGraph::corolla(&Biprofile::new(vec![c], vec![c]));
        assert_eq!(SchemePair::C_TO_PROP.beta(&corolla), 0);
        assert_eq!(SchemePair::C_TO_PROP.beta(&corolla.disjoint_union(&corolla)), 1);
        assert_eq!(SchemePair::C_TO_PROP.beta(&ColoredGraph::empty()), -1);
        assert_eq!(SchemePair::DI_TO_C.beta(&corolla), 0);
        assert_eq!(SchemePair::parse("c->prop"), Some(SchemePair::C_TO_PROP));
        assert_eq!(SchemePair::parse("di-c"), Some(SchemePair::DI_TO_C));
    }
}
