//! Descriptors of the generating families of maps between free props.
//!
//! A generator shaped `(n, m)` with sources `S -> T` stands for the map
//! `𝒢_{n,m}[S] -> 𝒢_{n,m}[T]`; it is never materialized here.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::FreeError;
use crate::ssets::{FinSimplicialSet, SSetMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    /// Boundary inclusions, any shape.
    I,
    /// Horn inclusions, any shape.
    J,
    /// Boundary inclusions at shape `(1, 1)`.
    C1,
    /// Horn inclusions at shape `(1, 1)`.
    A1,
    /// The empty prop into the unit prop on one color.
    C2,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::I => "I",
            GeneratorKind::J => "J",
            GeneratorKind::C1 => "C1",
            GeneratorKind::A1 => "A1",
            GeneratorKind::C2 => "C2",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub shape: (usize, usize),
    /// Dimension of the simplex.
    pub p: usize,
    /// Missing face of a horn.
    pub k: Option<usize>,
    /// `S -> T`; absent for [`GeneratorKind::C2`].
    #[serde(skip)]
    pub map: Option<SSetMap>,
}

impl Generator {
    pub fn boundary(kind: GeneratorKind, shape: (usize, usize), p: usize) -> Result<Self, FreeError> {
        Ok(Generator { kind, shape, p, k: None, map: Some(boundary_inclusion(p)?) })
    }

    pub fn horn(kind: GeneratorKind, shape: (usize, usize), k: usize, p: usize) -> Result<Self, FreeError> {
        Ok(Generator { kind, shape, p, k: Some(k), map: Some(horn_inclusion(k, p)?) })
    }

    pub fn unit_inclusion() -> Self {
        Generator { kind: GeneratorKind::C2, shape: (1, 1), p: 0, k: None, map: None }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, m) = self.shape;
        match (self.kind, self.k) {
            (GeneratorKind::C2, _) => write!(f, "C2"),
            (kind, Some(k)) => write!(f, "{kind}[{n},{m}] horn({k},{})", self.p),
            (kind, None) => write!(f, "{kind}[{n},{m}] boundary({})", self.p),
        }
    }
}

/// `∂Δ[p] -> Δ[p]`.
pub fn boundary_inclusion(p: usize) -> Result<SSetMap, FreeError> {
    if p == 0 {
        return Ok(SSetMap::from_empty(FinSimplicialSet::point()));
    }
    let ids: Vec<usize> = (0..=p).collect();
    Ok(SSetMap::extend_vertex_map(FinSimplicialSet::boundary(p), FinSimplicialSet::simplex(p), &ids)?)
}

/// `Λ[k,p] -> Δ[p]`.
pub fn horn_inclusion(k: usize, p: usize) -> Result<SSetMap, FreeError> {
    // Λ[k,1] is the vertex k
    let ids: Vec<usize> = if p == 1 { vec![k] } else { (0..=p).collect() };
    Ok(SSetMap::extend_vertex_map(FinSimplicialSet::horn(k, p)?, FinSimplicialSet::simplex(p), &ids)?)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GeneratorFamily {
    pub generators: Vec<Generator>,
}

impl GeneratorFamily {
    /// Boundary inclusions for every shape `(n, m)` with `n + m <= arity`
    /// and `p <= p_max`.
    pub fn boundaries(arity: usize, p_max: usize) -> Result<Self, FreeError> {
        let mut generators = Vec::new();
        for (n, m) in shapes(arity) {
            for p in 0..=p_max {
                generators.push(Generator::boundary(GeneratorKind::I, (n, m), p)?);
            }
        }
        Ok(GeneratorFamily { generators })
    }

    /// Horn inclusions for every shape with `n + m <= arity`, `1 <= p <= p_max`.
    pub fn horns(arity: usize, p_max: usize) -> Result<Self, FreeError> {
        let mut generators = Vec::new();
        for (n, m) in shapes(arity) {
            for p in 1..=p_max {
                for k in 0..=p {
                    generators.push(Generator::horn(GeneratorKind::J, (n, m), k, p)?);
                }
            }
        }
        Ok(GeneratorFamily { generators })
    }

    /// Unary boundary inclusions together with the unit inclusion.
    pub fn category_cofibrations(p_max: usize) -> Result<Self, FreeError> {
        let mut generators = vec![Generator::unit_inclusion()];
        for p in 0..=p_max {
            generators.push(Generator::boundary(GeneratorKind::C1, (1, 1), p)?);
        }
        Ok(GeneratorFamily { generators })
    }

    /// Unary horn inclusions.
    pub fn category_horns(p_max: usize) -> Result<Self, FreeError> {
        let mut generators = Vec::new();
        for p in 1..=p_max {
            for k in 0..=p {
                generators.push(Generator::horn(GeneratorKind::A1, (1, 1), k, p)?);
            }
        }
        Ok(GeneratorFamily { generators })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.generators.iter()
    }
}

fn shapes(arity: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=arity).flat_map(move |n| (0..=arity - n).map(move |m| (n, m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        // shapes with n + m <= 1: (0,0), (0,1), (1,0)
        assert_eq!(GeneratorFamily::boundaries(1, 2).unwrap().len(), 9);
        assert_eq!(GeneratorFamily::horns(0, 2).unwrap().len(), 5);
        assert_eq!(GeneratorFamily::category_cofibrations(1).unwrap().len(), 3);
        assert_eq!(GeneratorFamily::category_horns(2).unwrap().len(), 5);
    }

    #[test]
    fn inclusions_are_injective() {
        for p in 0..=3 {
            assert!(boundary_inclusion(p).unwrap().is_injective());
        }
        for k in 0..=2 {
            let h = horn_inclusion(k, 2).unwrap();
            assert!(h.is_injective() && !h.is_surjective());
        }
    }
}
