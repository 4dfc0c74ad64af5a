//! The standard composers: terminal, endomorphism, monoid and table-backed.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{degenerate_vertex, Composer, PropError};
use crate::graphs::canon::code_and_labeling;
use crate::graphs::{Biprofile, CanonicalCode, Color, ColoredGraph};
use crate::ssets::{CellId, FinSimplicialSet, Simplex};

/// Every entry is a point, except that with `support` the entries with no
/// inputs or no outputs are empty.
#[derive(Clone, Debug)]
pub struct Terminal {
    colors: u32,
    support: bool,
}

impl Terminal {
    pub fn new(colors: u32, support: bool) -> Self {
        Terminal { colors, support }
    }

    fn empty_at(&self, bp: &Biprofile) -> bool {
        self.support && (bp.inputs.is_empty() || bp.outputs.is_empty())
    }
}

impl Composer for Terminal {
    fn entry(&self, bp: &Biprofile) -> Result<FinSimplicialSet, PropError> {
        Ok(if self.empty_at(bp) { FinSimplicialSet::empty() } else { FinSimplicialSet::point() })
    }

    fn unit(&self, c: Color) -> Result<CellId, PropError> {
        if c.0 >= self.colors {
            return Err(PropError::UnknownColor(c));
        }
        Ok(CellId { dim: 0, index: 0 })
    }

    fn compose(&self, g: &ColoredGraph, _labels: &[Simplex], degree: usize) -> Result<Simplex, PropError> {
        if self.empty_at(&g.biprofile()) {
            return Err(PropError::Inconsistent("composite lands in an empty entry".into()));
        }
        Ok(degenerate_vertex(0, degree))
    }
}

/// Functions between products of finite sets, one set per color.
///
/// An element of the entry `(c_1..c_n; d_1..d_m)` is numbered by its value
/// table: writing input tuples and output tuples in mixed radix (first
/// coordinate most significant), the function `f` has number
/// `Σ_t f(t) R^t` with `R` the number of output tuples.
#[derive(Clone, Debug)]
pub struct Endomorphism {
    sizes: Vec<usize>,
    max_elements: u64,
}

impl Endomorphism {
    pub fn new(sizes: Vec<usize>) -> Self {
        Endomorphism { sizes, max_elements: 1 << 20 }
    }

    fn size_of(&self, c: Color) -> Result<u64, PropError> {
        self.sizes.get(c.0 as usize).map(|&s| s as u64).ok_or(PropError::UnknownColor(c))
    }

    fn tuples(&self, cs: &[Color]) -> Result<u64, PropError> {
        cs.iter().try_fold(1u64, |acc, &c| Ok(acc.saturating_mul(self.size_of(c)?)))
    }

    /// Number of elements of an entry, if within the bound.
    pub fn entry_size(&self, bp: &Biprofile) -> Result<u64, PropError> {
        let r = self.tuples(&bp.outputs)?;
        let t = self.tuples(&bp.inputs)?;
        let mut n: u64 = 1;
        for _ in 0..t {
            n = n.checked_mul(r).filter(|&n| n <= self.max_elements).ok_or_else(|| PropError::EntryTooLarge {
                bp: bp.clone(),
                bound: self.max_elements,
            })?;
        }
        Ok(n)
    }

    /// The element of entry `bp` with the given value table.
    pub fn encode(&self, bp: &Biprofile, table: &[u64]) -> Result<usize, PropError> {
        let r = self.tuples(&bp.outputs)?;
        Ok(table.iter().rev().fold(0u64, |acc, &o| acc * r + o) as usize)
    }

    /// Value table of an element.
    pub fn decode(&self, bp: &Biprofile, element: usize) -> Result<Vec<u64>, PropError> {
        let r = self.tuples(&bp.outputs)?;
        let t = self.tuples(&bp.inputs)?;
        let mut x = element as u64;
        Ok((0..t)
            .map(|_| {
                let o = x % r.max(1);
                x /= r.max(1);
                o
            })
            .collect())
    }

    fn to_digits(&self, cs: &[Color], mut index: u64) -> Vec<u64> {
        let mut out = vec![0; cs.len()];
        for (slot, &c) in out.iter_mut().zip(cs).rev() {
            let s = self.sizes[c.0 as usize] as u64;
            *slot = index % s;
            index /= s;
        }
        out
    }

    fn from_digits(&self, cs: &[Color], digits: &[u64]) -> u64 {
        cs.iter().zip(digits).fold(0u64, |acc, (&c, &d)| acc * self.sizes[c.0 as usize] as u64 + d)
    }

    /// Evaluates a decorated graph on one input tuple.
    fn run(&self, g: &ColoredGraph, order: &[usize], tables: &[Vec<u64>], input: &[u64]) -> Vec<u64> {
        let mut value = vec![0u64; g.edge_count()];
        for (&e, &x) in g.inputs.iter().zip(input) {
            value[e] = x;
        }
        for &v in order {
            let vx = &g.vertices[v];
            let in_colors: Vec<Color> = vx.inputs.iter().map(|&e| g.edges[e].color).collect();
            let out_colors: Vec<Color> = vx.outputs.iter().map(|&e| g.edges[e].color).collect();
            let args: Vec<u64> = vx.inputs.iter().map(|&e| value[e]).collect();
            let t = self.from_digits(&in_colors, &args);
            let out = self.to_digits(&out_colors, tables[v][t as usize]);
            for (&e, x) in vx.outputs.iter().zip(out) {
                value[e] = x;
            }
        }
        g.outputs.iter().map(|&e| value[e]).collect()
    }
}

impl Composer for Endomorphism {
    fn entry(&self, bp: &Biprofile) -> Result<FinSimplicialSet, PropError> {
        Ok(FinSimplicialSet::discrete(self.entry_size(bp)? as usize))
    }

    fn unit(&self, c: Color) -> Result<CellId, PropError> {
        let bp = Biprofile::unary(c);
        let table: Vec<u64> = (0..self.size_of(c)?).collect();
        Ok(CellId { dim: 0, index: self.encode(&bp, &table)? })
    }

    fn compose(&self, g: &ColoredGraph, labels: &[Simplex], degree: usize) -> Result<Simplex, PropError> {
        let bp = g.biprofile();
        self.entry_size(&bp)?;
        let order = g.topological_order().ok_or_else(|| PropError::Inconsistent("graph has a wheel".into()))?;
        let tables: Vec<Vec<u64>> = labels
            .iter()
            .enumerate()
            .map(|(v, x)| self.decode(&g.vertex_profile(v), x.cell.index))
            .collect::<Result<_, _>>()?;
        let t = self.tuples(&bp.inputs)?;
        let table: Vec<u64> = (0..t)
            .map(|i| {
                let input = self.to_digits(&bp.inputs, i);
                let out = self.run(g, &order, &tables, &input);
                self.from_digits(&bp.outputs, &out)
            })
            .collect();
        Ok(degenerate_vertex(self.encode(&bp, &table)?, degree))
    }
}

/// One color. The `(c;c)` entry is `{u} ⊔ A` with `u` the unit (vertex 0)
/// and `A` a simplicial set whose vertex 0 is absorbing; every other entry is
/// a point, or empty with `support` when it has no inputs or no outputs.
///
/// A decorated `(c;c)` graph composes to the product of its labels when it is
/// a chain of unary vertices, where the product of two elements of `A` is the
/// absorbing vertex; any other graph composes to the absorbing vertex. Only
/// associative on connected graphs.
#[derive(Clone, Debug)]
pub struct Monoid {
    a: FinSimplicialSet,
    entry: FinSimplicialSet,
    support: bool,
}

impl Monoid {
    pub fn new(a: FinSimplicialSet, support: bool) -> Self {
        let entry = FinSimplicialSet::point().coproduct(&a).0;
        Monoid { a, entry, support }
    }

    pub fn summand(&self) -> &FinSimplicialSet {
        &self.a
    }

    /// The `(c;c)` entry.
    pub fn unary_entry(&self) -> &FinSimplicialSet {
        &self.entry
    }

    fn zero(&self, degree: usize) -> Simplex {
        degenerate_vertex(if self.a.is_empty() { 0 } else { 1 }, degree)
    }

    fn is_unit(x: &Simplex) -> bool {
        x.cell == CellId { dim: 0, index: 0 }
    }
}

impl Composer for Monoid {
    fn entry(&self, bp: &Biprofile) -> Result<FinSimplicialSet, PropError> {
        let (n, m) = bp.arity();
        if self.support && (n == 0 || m == 0) {
            return Ok(FinSimplicialSet::empty());
        }
        if bp.colors().any(|c| c != Color(0)) {
            return Err(PropError::UnknownColor(bp.colors().find(|&c| c != Color(0)).unwrap()));
        }
        Ok(if (n, m) == (1, 1) { self.entry.clone() } else { FinSimplicialSet::point() })
    }

    fn unit(&self, c: Color) -> Result<CellId, PropError> {
        if c != Color(0) {
            return Err(PropError::UnknownColor(c));
        }
        Ok(CellId { dim: 0, index: 0 })
    }

    fn compose(&self, g: &ColoredGraph, labels: &[Simplex], degree: usize) -> Result<Simplex, PropError> {
        let (n, m) = g.biprofile().arity();
        if self.support && (n == 0 || m == 0) {
            return Err(PropError::Inconsistent("composite lands in an empty entry".into()));
        }
        if (n, m) != (1, 1) {
            return Ok(degenerate_vertex(0, degree));
        }
        let chain = g.vertices.iter().all(|v| v.inputs.len() == 1 && v.outputs.len() == 1);
        if !chain {
            return Ok(self.zero(degree));
        }
        let mut rest = labels.iter().filter(|x| !Self::is_unit(x));
        Ok(match (rest.next(), rest.next()) {
            (None, _) => degenerate_vertex(0, degree),
            (Some(x), None) => x.clone(),
            (Some(_), Some(_)) => self.zero(degree),
        })
    }
}

/// One replaced composition: the decorated graph in canonical position and
/// the value it composes to instead.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableOverride {
    pub graph: CanonicalCode,
    pub labels: Vec<Simplex>,
    pub degree: usize,
    pub result: Simplex,
}

impl TableOverride {
    /// Override for a decorated graph in any position.
    pub fn of(g: &ColoredGraph, labels: &[Simplex], degree: usize, result: Simplex) -> Self {
        let (graph, lab) = code_and_labeling(g);
        let labels = lab.vertex_order.iter().map(|&v| labels[v].clone()).collect();
        TableOverride { graph, labels, degree, result }
    }
}

/// A base composer with an explicit table of replaced compositions.
#[derive(Debug)]
pub struct TableComposer {
    base: std::sync::Arc<dyn Composer>,
    table: HashMap<(CanonicalCode, Vec<Simplex>, usize), Simplex>,
}

impl TableComposer {
    pub fn new(base: std::sync::Arc<dyn Composer>, overrides: Vec<TableOverride>) -> Self {
        let table = overrides.into_iter().map(|o| ((o.graph, o.labels, o.degree), o.result)).collect();
        TableComposer { base, table }
    }
}

impl Composer for TableComposer {
    fn entry(&self, bp: &Biprofile) -> Result<FinSimplicialSet, PropError> {
        self.base.entry(bp)
    }

    fn unit(&self, c: Color) -> Result<CellId, PropError> {
        self.base.unit(c)
    }

    fn compose(&self, g: &ColoredGraph, labels: &[Simplex], degree: usize) -> Result<Simplex, PropError> {
        if !self.table.is_empty() {
            let (code, lab) = code_and_labeling(g);
            let ordered: Vec<Simplex> = lab.vertex_order.iter().map(|&v| labels[v].clone()).collect();
            if let Some(x) = self.table.get(&(code, ordered, degree)) {
                return Ok(x.clone());
            }
        }
        self.base.compose(g, labels, degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properads::{unary_chain, Decoration, GrProp};
    use crate::graphs::Scheme;

    #[test]
    fn endomorphism_entry_sizes() {
        let e = Endomorphism::new(vec![2]);
        let c = Color(0);
        assert_eq!(e.entry_size(&Biprofile::new(vec![c], vec![c])).unwrap(), 4);
        assert_eq!(e.entry_size(&Biprofile::new(vec![c, c], vec![c, c])).unwrap(), 256);
        assert_eq!(e.entry_size(&Biprofile::new(vec![], vec![])).unwrap(), 1);
        assert_eq!(e.entry_size(&Biprofile::new(vec![c, c], vec![])).unwrap(), 1);
    }

    #[test]
    fn chain_composes_functions() {
        // functions {0,1} -> {0,1} as tables [f(0), f(1)]
        let p = GrProp::endomorphism(Scheme::Properad, vec![2]).unwrap();
        let e = Endomorphism::new(vec![2]);
        let bp = Biprofile::unary(Color(0));
        let not = e.encode(&bp, &[1, 0]).unwrap();
        let zero = e.encode(&bp, &[0, 0]).unwrap();
        let g = unary_chain(Color(0), Color(0), Color(0));
        // first `not`, then constant zero
        let x = p.gamma(&Decoration::by_vertices(g.clone(), &[not, zero])).unwrap();
        assert_eq!(x.cell.index, zero);
        let y = p.gamma(&Decoration::by_vertices(g, &[zero, not])).unwrap();
        assert_eq!(e.decode(&bp, y.cell.index).unwrap(), vec![1, 1]);
    }

    #[test]
    fn monoid_products() {
        let p = GrProp::monoid(Scheme::Properad, FinSimplicialSet::discrete(2), false).unwrap();
        let g = unary_chain(Color(0), Color(0), Color(0));
        let gamma = |a, b| p.gamma(&Decoration::by_vertices(g.clone(), &[a, b])).unwrap().cell.index;
        assert_eq!(gamma(0, 2), 2);
        assert_eq!(gamma(2, 0), 2);
        assert_eq!(gamma(2, 2), 1);
        assert_eq!(gamma(0, 0), 0);
    }
}
