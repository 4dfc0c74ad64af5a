//! Bounded checks of the unit, associativity and equivariance laws.
//!
//! Associativity is tested on substitution instances `G{H_v}` drawn from a
//! catalog of graphs per biprofile: all instances when they fit the budget,
//! a seeded sample otherwise. Compositions always go through
//! [`GrProp::gamma_uncached`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{degenerate_vertex, Decoration, GrProp, PropError};
use crate::graphs::enumerate::enumerate_graph_reps;
use crate::graphs::{ArityBound, Biprofile, ColoredGraph, Edge, Vertex};
use crate::ssets::Simplex;
use crate::substitution::{substitute, SubstitutionData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    CorollaUnit,
    UnitGraft,
    Associativity,
    Equivariance,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::CorollaUnit => "corolla unit",
            Law::UnitGraft => "unit graft",
            Law::Associativity => "associativity",
            Law::Equivariance => "equivariance",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct AxiomBounds {
    /// Bound on the vertices of substituted graphs.
    pub vertices: usize,
    /// Bound on inputs and outputs of each vertex.
    pub vertex_arity: (usize, usize),
    /// Bound on `inputs + outputs` of outer graphs.
    pub graph_arity: usize,
    pub decorations_per_instance: usize,
    pub instance_budget: usize,
    pub seed: u64,
    /// Simplicial degree of the decorations.
    pub degree: usize,
}

impl Default for AxiomBounds {
    fn default() -> Self {
        AxiomBounds {
            vertices: 3,
            vertex_arity: (2, 2),
            graph_arity: 3,
            decorations_per_instance: 16,
            instance_budget: 20_000,
            seed: 0,
            degree: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub law: Law,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    /// The first violations found, at most [`AxiomReport::KEPT`].
    pub violations: Vec<AxiomViolation>,
    pub violation_count: usize,
    pub checks: BTreeMap<Law, usize>,
    /// Whether every instance and decoration within the bounds was tried.
    pub exhaustive: bool,
}

impl AxiomReport {
    pub const KEPT: usize = 32;

    pub fn is_clean(&self) -> bool {
        self.violation_count == 0
    }

    pub fn total_checks(&self) -> usize {
        self.checks.values().sum()
    }

    fn record(&mut self, law: Law, ok: Result<bool, PropError>, detail: impl FnOnce() -> String) {
        *self.checks.entry(law).or_default() += 1;
        let detail = match ok {
            Ok(true) => return,
            Ok(false) => detail(),
            Err(e) => format!("{}: {e}", detail()),
        };
        self.violation_count += 1;
        if self.violations.len() < Self::KEPT {
            self.violations.push(AxiomViolation { law, detail });
        }
    }
}

struct Checker<'a> {
    p: &'a GrProp,
    bounds: &'a AxiomBounds,
    arity: ArityBound,
    catalog: HashMap<Biprofile, Arc<Vec<ColoredGraph>>>,
    rng: ChaCha8Rng,
    report: AxiomReport,
}

/// Checks the laws of a generalized prop within `bounds`.
pub fn check_axioms(p: &GrProp, bounds: &AxiomBounds) -> AxiomReport {
    let mut c = Checker {
        p,
        bounds,
        arity: ArityBound::new(bounds.vertex_arity.0, bounds.vertex_arity.1),
        catalog: HashMap::new(),
        rng: ChaCha8Rng::seed_from_u64(bounds.seed),
        report: AxiomReport { exhaustive: true, ..AxiomReport::default() },
    };
    c.units();
    c.associativity();
    c.equivariance();
    c.report
}

impl Checker<'_> {
    fn graphs(&mut self, bp: &Biprofile) -> Arc<Vec<ColoredGraph>> {
        let (p, n, arity) = (self.p, self.bounds.vertices, self.arity);
        self.catalog
            .entry(bp.clone())
            .or_insert_with(|| {
                Arc::new(
                    enumerate_graph_reps(p.scheme(), p.colors(), bp, n, arity)
                        .into_iter()
                        .filter(|g| (0..g.vertex_count()).all(|v| g.vertex_profile(v).total_arity() <= p.arity()))
                        .collect(),
                )
            })
            .clone()
    }

    /// Decorations of `g`, exhaustive up to the per-instance cap.
    fn decorations(&mut self, g: &ColoredGraph) -> Result<Vec<Vec<Simplex>>, PropError> {
        let d = self.bounds.degree;
        let choices: Vec<Vec<Simplex>> =
            (0..g.vertex_count()).map(|v| Ok(self.p.entry(&g.vertex_profile(v))?.simplices(d))).collect::<Result<_, PropError>>()?;
        let total = choices.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
        let cap = self.bounds.decorations_per_instance;
        if total.is_some_and(|t| t <= cap) {
            let mut out = Vec::new();
            crate::substitution::for_each_choice(&choices, &mut |x| out.push(x));
            return Ok(out);
        }
        self.report.exhaustive = false;
        Ok((0..cap).map(|_| choices.iter().map(|c| c.choose(&mut self.rng).unwrap().clone()).collect()).collect())
    }

    fn units(&mut self) {
        let p = self.p;
        let d = self.bounds.degree;
        for bp in p.biprofiles() {
            if bp.total_arity() > self.bounds.graph_arity {
                continue;
            }
            let Ok(e) = p.entry(&bp) else { continue };
            let mut xs = e.simplices(d);
            if xs.len() > self.bounds.decorations_per_instance {
                self.report.exhaustive = false;
                xs.shuffle(&mut self.rng);
                xs.truncate(self.bounds.decorations_per_instance);
            }
            let corolla = ColoredGraph::corolla(&bp);
            let grafted = with_units(&bp);
            let units: Result<Vec<Simplex>, PropError> =
                bp.inputs.iter().chain(&bp.outputs).map(|&c| Ok(degenerate_vertex(p.unit(c)?.cell.index, d))).collect();
            for x in xs {
                let ok = p.gamma_uncached(&Decoration::new(corolla.clone(), vec![x.clone()], d)).map(|y| y == x);
                self.report.record(Law::CorollaUnit, ok, || format!("corolla {bp} on {x:?}"));
                let ok = units.clone().and_then(|us| {
                    let mut labels = vec![x.clone()];
                    labels.extend(us);
                    p.gamma_uncached(&Decoration::new(grafted.clone(), labels, d)).map(|y| y == x)
                });
                self.report.record(Law::UnitGraft, ok, || format!("units on the legs of {bp} around {x:?}"));
            }
        }
    }

    fn instances(&mut self) -> Vec<(ColoredGraph, Vec<ColoredGraph>)> {
        let p = self.p;
        let n = self.bounds.vertices;
        let budget = self.bounds.instance_budget;
        let outer: Vec<Biprofile> = p
            .biprofiles()
            .into_iter()
            .filter(|bp| bp.total_arity() <= self.bounds.graph_arity)
            .collect();
        let mut outers: Vec<ColoredGraph> = Vec::new();
        for bp in &outer {
            outers.extend(self.graphs(bp).iter().filter(|g| g.vertex_count() > 0).cloned());
        }
        let mut inner: Vec<Vec<Arc<Vec<ColoredGraph>>>> = Vec::new();
        for g in &outers {
            let per_vertex = (0..g.vertex_count()).map(|v| self.graphs(&g.vertex_profile(v))).collect();
            inner.push(per_vertex);
        }
        let mut out = Vec::new();
        let mut overflow = false;
        'outer: for (g, hs) in outers.iter().zip(&inner) {
            let mut stack: Vec<(Vec<ColoredGraph>, usize)> = vec![(Vec::new(), 0)];
            while let Some((chosen, used)) = stack.pop() {
                if chosen.len() == hs.len() {
                    if out.len() == budget {
                        overflow = true;
                        break 'outer;
                    }
                    out.push((g.clone(), chosen));
                    continue;
                }
                for h in hs[chosen.len()].iter() {
                    if used + h.vertex_count() <= n {
                        let mut next = chosen.clone();
                        next.push(h.clone());
                        stack.push((next, used + h.vertex_count()));
                    }
                }
            }
        }
        if !overflow {
            return out;
        }
        self.report.exhaustive = false;
        let mut sampled = Vec::with_capacity(budget);
        while sampled.len() < budget {
            let i = self.rng.gen_range(0..outers.len());
            let mut used = 0;
            let mut chosen = Vec::new();
            for options in inner[i].iter() {
                let fitting: Vec<&ColoredGraph> = options.iter().filter(|h| used + h.vertex_count() <= n).collect();
                let Some(h) = fitting.choose(&mut self.rng) else { break };
                used += h.vertex_count();
                chosen.push((*h).clone());
            }
            if chosen.len() == inner[i].len() {
                sampled.push((outers[i].clone(), chosen));
            }
        }
        sampled
    }

    fn associativity(&mut self) {
        let p = self.p;
        let d = self.bounds.degree;
        for (g, hs) in self.instances() {
            if hs.iter().enumerate().all(|(v, h)| *h == ColoredGraph::corolla(&g.vertex_profile(v))) {
                continue;
            }
            let data = SubstitutionData { target: g.clone(), assignment: hs.clone() };
            let k = match substitute(&data) {
                Ok(k) => k,
                Err(e) => {
                    self.report.record(Law::Associativity, Err(e.into()), || format!("substituting into {g:?}"));
                    continue;
                }
            };
            let decorations = match self.decorations(&k) {
                Ok(ds) => ds,
                Err(e) => {
                    self.report.record(Law::Associativity, Err(e), || format!("decorating {k:?}"));
                    continue;
                }
            };
            for labels in decorations {
                let ok = (|| {
                    let whole = p.gamma_uncached(&Decoration::new(k.clone(), labels.clone(), d))?;
                    let mut rest = labels.iter();
                    let mut inner = Vec::with_capacity(hs.len());
                    for h in &hs {
                        let part: Vec<Simplex> = rest.by_ref().take(h.vertex_count()).cloned().collect();
                        inner.push(p.gamma_uncached(&Decoration::new(h.clone(), part, d))?);
                    }
                    let stepwise = p.gamma_uncached(&Decoration::new(g.clone(), inner, d))?;
                    Ok(whole == stepwise)
                })();
                self.report.record(Law::Associativity, ok, || format!("{data:?} decorated by {labels:?}"));
            }
        }
    }

    fn equivariance(&mut self) {
        let p = self.p;
        let d = self.bounds.degree;
        let mut outers = Vec::new();
        for bp in p.biprofiles() {
            if bp.total_arity() <= self.bounds.graph_arity {
                outers.extend(self.graphs(&bp).iter().filter(|g| g.vertex_count() > 1).cloned());
            }
        }
        if outers.len() > self.bounds.instance_budget {
            self.report.exhaustive = false;
            outers.shuffle(&mut self.rng);
            outers.truncate(self.bounds.instance_budget);
        }
        for g in outers {
            let Ok(decorations) = self.decorations(&g) else { continue };
            let mut order: Vec<usize> = (0..g.vertex_count()).collect();
            let mut edges: Vec<usize> = (0..g.edge_count()).collect();
            order.shuffle(&mut self.rng);
            edges.shuffle(&mut self.rng);
            let moved = g.relabel(&order, &edges);
            for labels in decorations {
                let permuted: Vec<Simplex> = order.iter().map(|&v| labels[v].clone()).collect();
                let ok = p.gamma_uncached(&Decoration::new(g.clone(), labels.clone(), d)).and_then(|a| {
                    Ok(a == p.gamma_uncached(&Decoration::new(moved.clone(), permuted, d))?)
                });
                self.report.record(Law::Equivariance, ok, || format!("relabeling {g:?} by {order:?}"));
            }
        }
        // Acting by two leg permutations in turn equals acting by their composite.
        for bp in p.biprofiles() {
            if bp.total_arity() > self.bounds.graph_arity {
                continue;
            }
            let Ok(e) = p.entry(&bp) else { continue };
            let mut xs = e.simplices(d);
            xs.shuffle(&mut self.rng);
            xs.truncate(self.bounds.decorations_per_instance.max(1));
            let perms = leg_permutations(&bp);
            for x in &xs {
                for (s, t) in perms.iter().zip(perms.iter().rev()) {
                    let ok = (|| {
                        let first = permuted_corolla(&bp, s);
                        let y = p.gamma_uncached(&Decoration::new(first.clone(), vec![x.clone()], d))?;
                        let second = permuted_corolla(&first.biprofile(), t);
                        let z = p.gamma_uncached(&Decoration::new(second, vec![y], d))?;
                        let both = substitute(&SubstitutionData {
                            target: permuted_corolla(&first.biprofile(), t),
                            assignment: vec![first],
                        })?;
                        Ok(z == p.gamma_uncached(&Decoration::new(both, vec![x.clone()], d))?)
                    })();
                    self.report.record(Law::Equivariance, ok, || format!("leg permutations {s:?} then {t:?} on {bp}"));
                }
            }
        }
    }
}

/// Input and output leg permutations of a biprofile, as `(inputs, outputs)`.
fn leg_permutations(bp: &Biprofile) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (n, m) = bp.arity();
    let ins = permutations(n);
    let outs = permutations(m);
    ins.iter().flat_map(|i| outs.iter().map(move |o| (i.clone(), o.clone()))).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

/// The corolla on `bp` whose `i`-th input leg is port `perm.0[i]`, likewise
/// outputs.
pub fn permuted_corolla(bp: &Biprofile, perm: &(Vec<usize>, Vec<usize>)) -> ColoredGraph {
    let mut g = ColoredGraph::corolla(bp);
    let ins = g.vertices[0].inputs.clone();
    let outs = g.vertices[0].outputs.clone();
    g.inputs = perm.0.iter().map(|&i| ins[i]).collect();
    g.outputs = perm.1.iter().map(|&j| outs[j]).collect();
    g
}

/// The corolla on `bp` with a unary vertex on every leg. Vertex 0 is the
/// corolla, then the input legs, then the output legs.
pub fn with_units(bp: &Biprofile) -> ColoredGraph {
    let mut g = ColoredGraph::corolla(bp);
    for i in 0..bp.inputs.len() {
        let e = g.vertices[0].inputs[i];
        let fresh = g.edges.len();
        g.edges.push(Edge { color: bp.inputs[i] });
        g.vertices.push(Vertex { inputs: vec![fresh], outputs: vec![e] });
        g.inputs[i] = fresh;
    }
    for j in 0..bp.outputs.len() {
        let e = g.vertices[0].outputs[j];
        let fresh = g.edges.len();
        g.edges.push(Edge { color: bp.outputs[j] });
        g.vertices.push(Vertex { inputs: vec![e], outputs: vec![fresh] });
        g.outputs[j] = fresh;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{Color, Scheme};
    use crate::properads::{Endomorphism, PropShape, PropSpec, TableOverride};
    use crate::ssets::{CellId, FinSimplicialSet};

    fn small() -> AxiomBounds {
        AxiomBounds { vertices: 2, vertex_arity: (1, 1), graph_arity: 2, ..AxiomBounds::default() }
    }

    #[test]
    fn standard_props_satisfy_the_laws() {
        let props = [
            GrProp::terminal(Scheme::Prop, 2, false).unwrap(),
            GrProp::endomorphism(Scheme::Properad, vec![2]).unwrap(),
            GrProp::monoid(Scheme::Properad, FinSimplicialSet::simplex(1), false).unwrap(),
        ];
        for p in &props {
            let r = check_axioms(p, &small());
            assert!(r.is_clean(), "{}: {:?}", p.name(), r.violations);
            assert!(r.checks[&Law::Associativity] > 0);
        }
    }

    #[test]
    fn a_broken_unary_composition_is_caught() {
        let e = Endomorphism::new(vec![2]);
        let un = Biprofile::unary(Color(0));
        let id = e.encode(&un, &[0, 1]).unwrap();
        let konst = e.encode(&un, &[0, 0]).unwrap();
        let chain = crate::properads::unary_chain(Color(0), Color(0), Color(0));
        let v = |i| Simplex::nondegenerate(CellId { dim: 0, index: i });
        let spec = PropSpec {
            name: None,
            arity: 2,
            shape: PropShape::Table {
                base: Box::new(PropSpec {
                    name: None,
                    arity: 2,
                    shape: PropShape::Endomorphism { scheme: Scheme::Properad, sizes: vec![2] },
                }),
                overrides: vec![TableOverride::of(&chain, &[v(id), v(id)], 0, v(konst))],
            },
        };
        let p = spec.build().unwrap();
        let r = check_axioms(&p, &small());
        assert!(!r.is_clean());
        assert!(r.violations.iter().any(|v| v.law == Law::UnitGraft || v.law == Law::Associativity));
    }

    #[test]
    fn permuted_corollas_have_permuted_profiles() {
        let bp = Biprofile::new(vec![Color(0), Color(1)], vec![Color(2)]);
        let g = permuted_corolla(&bp, &(vec![1, 0], vec![0]));
        assert_eq!(g.biprofile(), Biprofile::new(vec![Color(1), Color(0)], vec![Color(2)]));
        assert_eq!(permutations(3).len(), 6);
    }
}
