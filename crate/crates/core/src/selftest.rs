//! Runners for the property suite shared by the `selftest` command and the
//! acceptance tests. Each runner checks one property over a bounded domain
//! and reports counts alongside the verdict.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fixtures::Corpus;
use crate::free::{
    beta_decomposition_check, compare_homs, horn_inclusion, materialize_gnm, unit_map, well_behaved_check, FreeBounds,
    FreeError, HomBounds, SchemePair,
};
use crate::graphs::enumerate::enumerate_graph_reps;
use crate::graphs::{canon::code_of, ArityBound, Biprofile, Color, ColorSet, ColoredGraph, GraphIso, IsoFlavor, Scheme};
use crate::lifting::{
    adjunction_check, classify_morphism, entrywise_fibration, local_lifting_equivalence, rlp_generators,
    two_of_three_check, BoxBounds, Flag, LiftBounds,
};
use crate::free::GeneratorFamily;
use crate::properads::{GrProp, PropMorphism};
use crate::ssets::{homology, FinSimplicialSet, SSetBuilder};
use crate::substitution::{compose_substitution_data_via, substitute, SubstitutionData};

/// Sizes of the domains the runners sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Scale {
    /// Vertices of every graph in a substitution triple.
    pub law_vertices: usize,
    pub law_scheme: Scheme,
    /// Wall-clock budget for the substitution laws.
    pub law_seconds: u64,
    /// Vertices of the graphs compared with the homology oracle.
    pub betti_vertices: usize,
    /// Vertices of each side of a graft.
    pub graft_vertices: usize,
    /// Largest outer graph of the truncated left adjoint.
    pub free_vertices: usize,
    pub free_max_elements: usize,
    /// Largest simplex dimension in lifting checks.
    pub p_max: usize,
}

impl Default for Scale {
    fn default() -> Self {
        Scale {
            law_vertices: 4,
            law_scheme: Scheme::Prop,
            law_seconds: 300,
            betti_vertices: 6,
            graft_vertices: 4,
            free_vertices: 3,
            free_max_elements: 400_000,
            p_max: 2,
        }
    }
}

impl Scale {
    /// Small domains for a fast smoke run.
    pub fn quick() -> Self {
        Scale { law_vertices: 2, betti_vertices: 4, graft_vertices: 2, free_vertices: 2, ..Scale::default() }
    }

    fn lift(&self) -> LiftBounds {
        LiftBounds { p_max: self.p_max, ..LiftBounds::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {}: {} ({:.1}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.seconds
        )
    }
}

fn timed(id: usize, name: &'static str, f: impl FnOnce() -> Result<(bool, String), String>) -> CriterionResult {
    let start = Instant::now();
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult { id, name, passed, detail, seconds: start.elapsed().as_secs_f64() }
}

pub const CRITERIA: [&str; 11] = [
    "substitution laws",
    "betti numbers",
    "bottom stratum",
    "unit injectivity",
    "generator lifting",
    "local liftings",
    "two out of three fails entrywise",
    "two out of three",
    "well-behavedness",
    "generated props",
    "lifting adjunction",
];

/// Runs criterion `id` (1-based).
pub fn run(id: usize, scale: &Scale, corpus: &Corpus) -> CriterionResult {
    let name = CRITERIA[id - 1];
    timed(id, name, || match id {
        1 => substitution_laws(scale),
        2 => betti_numbers(scale),
        3 => bottom_stratum(scale),
        4 => unit_injectivity(scale, corpus),
        5 => generator_lifting(scale, corpus),
        6 => local_liftings(scale, corpus),
        7 => counterexample(scale, corpus),
        8 => two_out_of_three(scale, corpus),
        9 => well_behavedness(scale, corpus),
        10 => generated_props(corpus),
        11 => lifting_adjunction(scale, corpus),
        _ => Err(format!("no criterion {id}")),
    })
}

pub fn run_all(scale: &Scale) -> Result<Vec<CriterionResult>, crate::fixtures::FixtureError> {
    let corpus = Corpus::standard()?;
    Ok((1..=CRITERIA.len()).map(|id| run(id, scale, &corpus)).collect())
}

fn one_color() -> ColorSet {
    ColorSet::range(1)
}

fn profiles(legs: usize) -> Vec<Biprofile> {
    let c = Color(0);
    (0..=legs).flat_map(|n| (0..=legs).map(move |m| Biprofile::new(vec![c; n], vec![c; m]))).collect()
}

/// Representatives of every graph with the given vertex profile and at most
/// `max` vertices, sorted by vertex count.
struct Fillers {
    scheme: Scheme,
    max: usize,
    arity: ArityBound,
    cache: Mutex<HashMap<Biprofile, Arc<Vec<ColoredGraph>>>>,
}

impl Fillers {
    fn get(&self, bp: &Biprofile) -> Arc<Vec<ColoredGraph>> {
        if let Some(v) = self.cache.lock().expect("no panics while held").get(bp) {
            return v.clone();
        }
        let mut gs = enumerate_graph_reps(self.scheme, &one_color(), bp, self.max, self.arity);
        gs.sort_by_key(ColoredGraph::vertex_count);
        let gs = Arc::new(gs);
        self.cache.lock().expect("no panics while held").insert(bp.clone(), gs.clone());
        gs
    }

    /// Calls `f` on every assignment to the vertices of `g` with at most
    /// `budget` vertices in total.
    fn assignments(&self, g: &ColoredGraph, budget: usize, f: &mut dyn FnMut(Vec<ColoredGraph>)) {
        let choices: Vec<Arc<Vec<ColoredGraph>>> = (0..g.vertex_count()).map(|v| self.get(&g.vertex_profile(v))).collect();
        fn go(
            choices: &[Arc<Vec<ColoredGraph>>],
            left: usize,
            cur: &mut Vec<ColoredGraph>,
            f: &mut dyn FnMut(Vec<ColoredGraph>),
        ) {
            if cur.len() == choices.len() {
                f(cur.clone());
                return;
            }
            for h in choices[cur.len()].iter() {
                if h.vertex_count() > left {
                    break;
                }
                cur.push(h.clone());
                go(choices, left - h.vertex_count(), cur, f);
                cur.pop();
            }
        }
        go(&choices, budget, &mut Vec::new(), f);
    }
}

/// Unit laws on every graph, then associativity on every triple `G`, `H`,
/// `I` in which `G`, `G{H}` and `G{H}{I}` have at most `n` vertices, for
/// `n = 1, 2, ...` up to the bound or until the deadline.
pub fn substitution_laws(scale: &Scale) -> Result<(bool, String), String> {
    let start = Instant::now();
    let deadline = std::time::Duration::from_secs(scale.law_seconds);
    let max = scale.law_vertices;
    let arity = ArityBound::new(2, 2);
    let graphs = |n: usize| -> Vec<(Biprofile, ColoredGraph)> {
        profiles(2)
            .into_iter()
            .flat_map(|bp| {
                enumerate_graph_reps(scale.law_scheme, &one_color(), &bp, n, arity).into_iter().map(move |g| (bp.clone(), g))
            })
            .collect()
    };
    let all = graphs(max);
    let mut failures: Vec<String> = all
        .par_iter()
        .filter_map(|(bp, g)| {
            let code = code_of(g);
            let right = SubstitutionData::identity(g.clone());
            let left = SubstitutionData { target: ColoredGraph::corolla(bp), assignment: vec![g.clone()] };
            let ok = |d: &SubstitutionData| substitute(d).map(|k| code_of(&k)) == Ok(code.clone());
            (!ok(&right) || !ok(&left)).then(|| format!("unit law fails on {code}"))
        })
        .collect();
    let mut completed = 0;
    let mut triples = 0;
    let stopped = AtomicBool::new(false);
    for n in 1..=max {
        let fillers = Fillers { scheme: scale.law_scheme, max: n, arity, cache: Mutex::default() };
        for bp in arity.profiles(&one_color()) {
            fillers.get(&bp);
        }
        let count = AtomicUsize::new(0);
        let bad: Vec<String> = graphs(n)
            .par_iter()
            .flat_map_iter(|(_, g)| {
                let mut bad = Vec::new();
                if stopped.load(Ordering::Relaxed) {
                    return bad;
                }
                let mut local = 0usize;
                fillers.assignments(g, n, &mut |hs| {
                    if stopped.load(Ordering::Relaxed) {
                        return;
                    }
                    let outer = SubstitutionData { target: g.clone(), assignment: hs };
                    let k = match substitute(&outer) {
                        Ok(k) => k,
                        Err(e) => {
                            bad.push(format!("{}: {e}", code_of(g)));
                            return;
                        }
                    };
                    let iso = GraphIso::identity(&k, IsoFlavor::Strict);
                    fillers.assignments(&k, n, &mut |is| {
                        local += 1;
                        if local % 4096 == 0 && start.elapsed() > deadline {
                            stopped.store(true, Ordering::Relaxed);
                        }
                        let inner = SubstitutionData { target: k.clone(), assignment: is };
                        let twice = substitute(&inner).map(|x| code_of(&x));
                        let once = compose_substitution_data_via(&inner, &outer, &iso)
                            .and_then(|d| substitute(&d))
                            .map(|x| code_of(&x));
                        if twice.is_err() || twice != once {
                            bad.push(format!("associativity fails on {} via {}", code_of(g), code_of(&k)));
                        }
                    });
                });
                count.fetch_add(local, Ordering::Relaxed);
                bad
            })
            .collect();
        failures.extend(bad);
        triples = count.into_inner();
        if stopped.load(Ordering::Relaxed) {
            break;
        }
        completed = n;
    }
    let finished = completed == max;
    let detail = format!(
        "unit laws on {} graphs; associativity complete through {completed} vertices ({}{triples} triples at the last level); {} failures{}",
        all.len(),
        if finished { "" } else { "deadline reached, " },
        failures.len(),
        failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
    );
    Ok((failures.is_empty() && finished, detail))
}

/// The graph as a one-dimensional simplicial set: a vertex per graph vertex
/// and per free end of an edge, an edge per edge.
pub fn realize(g: &ColoredGraph) -> FinSimplicialSet {
    let mut b = SSetBuilder::new();
    let vs = b.add_vertices(g.vertices.len());
    let mut ends: Vec<[Option<usize>; 2]> = vec![[None, None]; g.edges.len()];
    for (v, vx) in g.vertices.iter().enumerate() {
        for &e in &vx.inputs {
            ends[e][1] = Some(v);
        }
        for &e in &vx.outputs {
            ends[e][0] = Some(v);
        }
    }
    for [s, t] in ends {
        let from = s.map_or_else(|| b.add_vertex(), |v| vs[v]);
        let to = t.map_or_else(|| b.add_vertex(), |v| vs[v]);
        b.add_edge(from, to).expect("vertices just added");
    }
    b.build()
}

/// Reduced zeroth and first Betti numbers from simplicial homology.
pub fn homology_betti(g: &ColoredGraph) -> (usize, usize) {
    let x = realize(g);
    let h = homology(&x, 1);
    (h[0].rank.saturating_sub(1), h.get(1).map_or(0, |h| h.rank))
}

pub fn betti_numbers(scale: &Scale) -> Result<(bool, String), String> {
    let n = scale.betti_vertices;
    let families = [
        (Scheme::Properad, n, ArityBound::new(2, 2), 1),
        (Scheme::Prop, n, ArityBound::new(2, 1), 1),
        (Scheme::Prop, n.min(4), ArityBound::new(2, 2), 2),
    ];
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for (scheme, max, arity, legs) in families {
        for bp in profiles(legs) {
            let gs = enumerate_graph_reps(scheme, &one_color(), &bp, max, arity);
            checked += gs.len();
            mismatches.extend(gs.par_iter().filter(|g| g.betti() != homology_betti(g)).map(code_of).collect::<Vec<_>>());
        }
    }
    let m = scale.graft_vertices;
    let arity = ArityBound::new(2, 2);
    let c = Color(0);
    let firsts: Vec<ColoredGraph> = (0..=2)
        .flat_map(|k| enumerate_graph_reps(Scheme::Properad, &one_color(), &Biprofile::new(vec![c; k], vec![c]), m, arity))
        .collect();
    let seconds: Vec<ColoredGraph> = (0..=2)
        .flat_map(|k| enumerate_graph_reps(Scheme::Properad, &one_color(), &Biprofile::new(vec![c], vec![c; k]), m, arity))
        .collect();
    let graft_failures: usize = firsts
        .par_iter()
        .map(|a| {
            let (a0, a1) = a.betti();
            seconds
                .iter()
                .filter(|b| {
                    let (b0, b1) = b.betti();
                    match crate::substitution::graft(a, b) {
                        Ok(g) => g.betti() != (a0 + b0, a1 + b1),
                        Err(_) => true,
                    }
                })
                .count()
        })
        .sum();
    let grafts = firsts.len() * seconds.len();
    Ok((
        mismatches.is_empty() && graft_failures == 0,
        format!(
            "{checked} graphs, {} homology mismatches; {grafts} grafts, {graft_failures} not additive",
            mismatches.len()
        ),
    ))
}

/// Runs `check` at `N = max` and below until it fits the element bound.
fn largest_fitting<T>(
    max: usize,
    max_elements: usize,
    arity: ArityBound,
    mut check: impl FnMut(FreeBounds) -> Result<T, FreeError>,
) -> Result<(usize, T), FreeError> {
    let mut n = max;
    loop {
        let bounds = FreeBounds { max_elements, ..FreeBounds::new(n, arity) };
        match check(bounds) {
            Err(FreeError::Bound { .. }) if n > 1 => n -= 1,
            r => return r.map(|t| (n, t)),
        }
    }
}

fn both_pairs() -> [SchemePair; 2] {
    [SchemePair::DI_TO_C, SchemePair::C_TO_PROP]
}

pub fn bottom_stratum(scale: &Scale) -> Result<(bool, String), String> {
    let props = [
        GrProp::terminal(Scheme::Properad, 1, false).map_err(|e| e.to_string())?,
        GrProp::endomorphism(Scheme::Properad, vec![2]).map_err(|e| e.to_string())?,
    ];
    let arity = ArityBound::new(2, 2);
    let mut checks = 0;
    let mut failures = Vec::new();
    let mut reduced = Vec::new();
    for p in &props {
        for pair in both_pairs() {
            for bp in profiles(2) {
                let (n, r) = largest_fitting(scale.free_vertices, scale.free_max_elements, arity, |b| {
                    beta_decomposition_check(p, pair, &bp, b)
                })
                .map_err(|e| e.to_string())?;
                checks += 1;
                if n < scale.free_vertices {
                    reduced.push(format!("{}:{pair}:{bp}@{n}", p.name()));
                }
                if !r.holds() {
                    failures.push(format!("{}:{pair}:{bp}", p.name()));
                }
            }
        }
    }
    Ok((
        failures.is_empty(),
        format!(
            "{checks} entries, {} violations; smaller N on [{}]{}",
            failures.len(),
            reduced.join(", "),
            failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    ))
}

fn free_props(corpus: &Corpus) -> Vec<Arc<GrProp>> {
    corpus.props.values().filter(|p| !p.colors().is_empty()).cloned().collect()
}

pub fn unit_injectivity(scale: &Scale, corpus: &Corpus) -> Result<(bool, String), String> {
    let arity = ArityBound::new(2, 2);
    let mut checks = 0;
    let mut failures = Vec::new();
    let mut reduced = 0;
    for p in free_props(corpus) {
        for pair in both_pairs() {
            for bp in crate::free::biprofiles_up_to(p.colors(), 2, 2) {
                let (n, u) = largest_fitting(scale.free_vertices, scale.free_max_elements, arity, |b| {
                    unit_map(&p, pair, &bp, b)
                })
                .map_err(|e| e.to_string())?;
                checks += 1;
                reduced += usize::from(n < scale.free_vertices);
                if !u.injective {
                    failures.push(format!("{}:{pair}:{bp}", p.name()));
                }
            }
        }
    }
    Ok((
        failures.is_empty(),
        format!("{checks} entries, {reduced} at smaller N, {} not injective {:?}", failures.len(), failures),
    ))
}

pub fn generator_lifting(scale: &Scale, corpus: &Corpus) -> Result<(bool, String), String> {
    let lift = scale.lift();
    let mut decisive = 0;
    let mut disagreements = Vec::new();
    for f in &corpus.morphisms {
        let arity = f.dom().arity();
        let horns = GeneratorFamily::horns(arity, lift.p_max).map_err(|e| e.to_string())?;
        let boundaries = GeneratorFamily::boundaries(arity, lift.p_max).map_err(|e| e.to_string())?;
        let pairs = [
            (rlp_generators(f, &horns, lift), entrywise_fibration(f, lift.p_max, false)),
            (rlp_generators(f, &boundaries, lift), entrywise_fibration(f, lift.p_max, true)),
        ];
        let mut all_decisive = true;
        for (rlp, entry) in pairs {
            let (a, b) = (rlp.map_err(|e| e.to_string())?.verdict, entry.map_err(|e| e.to_string())?.verdict);
            if a == Flag::Unknown || b == Flag::Unknown {
                all_decisive = false;
            } else if a != b {
                disagreements.push(f.name().to_string());
            }
        }
        decisive += usize::from(all_decisive);
    }
    Ok((
        disagreements.is_empty() && decisive >= 20,
        format!("{decisive} of {} morphisms decisive, disagreements {:?}", corpus.morphisms.len(), disagreements),
    ))
}

pub fn local_liftings(scale: &Scale, corpus: &Corpus) -> Result<(bool, String), String> {
    let mut decisive = 0;
    let mut contradictions = Vec::new();
    for f in &corpus.morphisms {
        let r = local_lifting_equivalence(f, scale.lift()).map_err(|e| e.to_string())?;
        decisive += usize::from(r.decisive);
        if r.contradiction {
            contradictions.push(f.name().to_string());
        }
    }
    Ok((
        contradictions.is_empty() && decisive >= 15,
        format!("{decisive} decisive, contradictions {contradictions:?}"),
    ))
}

pub fn counterexample(scale: &Scale, corpus: &Corpus) -> Result<(bool, String), String> {
    let (g, f) = corpus.counterexample();
    let fg = g.then(f).map_err(|e| e.to_string())?;
    let w1 = |m: &PropMorphism| classify_morphism(m, scale.lift()).map(|c| c.w1.flag).map_err(|e| e.to_string());
    let (a, b, c) = (w1(g)?, w1(&fg)?, w1(f)?);
    Ok((a.is_yes() && b.is_yes() && c.is_no(), format!("first {a}, composite {b}, second {c}")))
}

pub fn two_out_of_three(scale: &Scale, corpus: &Corpus) -> Result<(bool, String), String> {
    let mut premises = 0;
    let mut failures = Vec::new();
    for (g, f) in corpus.composable_pairs() {
        let r = two_of_three_check(g, f, scale.lift()).map_err(|e| e.to_string())?;
        if r.premise.is_yes() {
            premises += 1;
            if !r.conclusion.is_yes() || !r.holds() {
                failures.push(format!("{} then {}", g.name(), f.name()));
            }
        }
    }
    Ok((failures.is_empty() && premises >= 10, format!("{premises} pairs meet the hypothesis, failures {failures:?}")))
}

pub fn well_behavedness(scale: &Scale, corpus: &Corpus) -> Result<(bool, String), String> {
    let arity = ArityBound::new(2, 2);
    let mut checks = 0;
    let mut grafts = 0;
    let mut failures = Vec::new();
    let mut at = Vec::new();
    for p in free_props(corpus) {
        for pair in both_pairs() {
            let (n, r) = largest_fitting(scale.free_vertices, scale.free_max_elements, arity, |b| {
                well_behaved_check(pair, &p, b)
            })
            .map_err(|e| e.to_string())?;
            checks += 1;
            grafts += r.graft_checks;
            if n < scale.free_vertices {
                at.push(format!("{}:{pair}@{n}", p.name()));
            }
            if !r.holds() {
                failures.push(format!("{}:{pair}", p.name()));
            }
        }
    }
    Ok((
        failures.is_empty(),
        format!("{checks} props and pairs, {grafts} grafts, smaller N on {at:?}, failures {failures:?}"),
    ))
}

pub fn generated_props(corpus: &Corpus) -> Result<(bool, String), String> {
    let xs = [FinSimplicialSet::empty(), FinSimplicialSet::point(), FinSimplicialSet::boundary(1)];
    let mut checks = 0;
    let mut failures = Vec::new();
    for (n, m) in [(1, 1), (2, 1)] {
        for x in &xs {
            for p in corpus.props.values() {
                let gen = materialize_gnm(n, m, x.clone(), p.scheme(), 1, 2).map_err(|e| e.to_string())?;
                let r = compare_homs(&gen, p, HomBounds::default()).map_err(|e| e.to_string())?;
                checks += 1;
                if !r.bijective {
                    failures.push(format!("({n},{m}) {}", p.name()));
                }
            }
        }
    }
    Ok((failures.is_empty(), format!("{checks} comparisons, failures {failures:?}")))
}

pub fn lifting_adjunction(scale: &Scale, corpus: &Corpus) -> Result<(bool, String), String> {
    let mut checks = 0;
    let mut disagreements = Vec::new();
    for p in 1..=scale.p_max {
        for k in 0..=p {
            let i = horn_inclusion(k, p).map_err(|e| e.to_string())?;
            for f in &corpus.morphisms {
                let r = adjunction_check(f, &i, BoxBounds::default(), HomBounds::default()).map_err(|e| e.to_string())?;
                checks += 1;
                if !r.agree {
                    disagreements.push(format!("{} against horn({k},{p})", f.name()));
                }
            }
        }
    }
    Ok((disagreements.is_empty(), format!("{checks} checks, disagreements {disagreements:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn realization_of_a_corolla_is_contractible() {
        let g = ColoredGraph::corolla(&Biprofile::new(vec![Color(0); 2], vec![Color(0)]));
        assert_eq!(homology_betti(&g), (0, 0));
        assert_eq!(homology_betti(&ColoredGraph::empty()), (0, 0));
    }

    #[test]
    fn quick_laws_pass() {
        let (ok, detail) = substitution_laws(&Scale::quick()).unwrap();
        assert!(ok, "{detail}");
    }
}
