//! Bounded lifting checks for simplicial maps against horn and boundary
//! inclusions, by direct enumeration of compatible face tuples.
//!
//! A map `Λ[k,p] -> X` is the same as a tuple `(x_i)_{i != k}` of
//! `(p-1)`-simplices with `d_i x_j = d_{j-1} x_i` for `i < j`, and a lift
//! exists for a square exactly when some `p`-simplex of `X` has those faces
//! and maps to the chosen `p`-simplex of `Y`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{FinSimplicialSet, SSetMap, Simplex};

/// Default cap on elementary steps for one check.
pub const DEFAULT_WORK_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum LiftVerdict<W> {
    /// Every square up to dimension `checked_up_to` has a lift.
    Yes { checked_up_to: usize },
    /// A square with no lift.
    No { witness: W },
    /// The work budget ran out while checking dimension `reached`.
    BoundExhausted { reached: usize },
}

impl<W> LiftVerdict<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, LiftVerdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, LiftVerdict::No { .. })
    }
}

/// A horn (or boundary, when `k` is `None`) in the domain and a simplex of the
/// codomain under it with no lift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KanWitness {
    pub p: usize,
    pub k: Option<usize>,
    /// Faces `x_i` of the horn, `None` at the missing index.
    pub faces: Vec<Option<Simplex>>,
    pub target: Simplex,
}

/// Default dimension bound: `dim X + dim Y + 2`.
pub fn default_p_max(f: &SSetMap) -> usize {
    f.dom().dimension().unwrap_or(0) + f.cod().dimension().unwrap_or(0) + 2
}

/// Right lifting against `Λ[k,p] -> Δ[p]` for `1 <= p <= p_max`.
pub fn is_kan_fibration(f: &SSetMap, p_max: usize) -> LiftVerdict<KanWitness> {
    is_kan_fibration_budget(f, p_max, DEFAULT_WORK_BUDGET)
}

pub fn is_kan_fibration_budget(f: &SSetMap, p_max: usize, budget: u64) -> LiftVerdict<KanWitness> {
    let mut work = Work { left: budget };
    for p in 1..=p_max {
        for k in 0..=p {
            match check_shape(f, p, Some(k), &mut work) {
                Ok(None) => {}
                Ok(Some(w)) => return LiftVerdict::No { witness: w },
                Err(()) => return LiftVerdict::BoundExhausted { reached: p },
            }
        }
    }
    LiftVerdict::Yes { checked_up_to: p_max }
}

/// Right lifting against `∂Δ[p] -> Δ[p]` for `0 <= p <= p_max`.
pub fn is_trivial_fibration(f: &SSetMap, p_max: usize) -> LiftVerdict<KanWitness> {
    is_trivial_fibration_budget(f, p_max, DEFAULT_WORK_BUDGET)
}

pub fn is_trivial_fibration_budget(f: &SSetMap, p_max: usize, budget: u64) -> LiftVerdict<KanWitness> {
    let mut work = Work { left: budget };
    for p in 0..=p_max {
        match check_shape(f, p, None, &mut work) {
            Ok(None) => {}
            Ok(Some(w)) => return LiftVerdict::No { witness: w },
            Err(()) => return LiftVerdict::BoundExhausted { reached: p },
        }
    }
    LiftVerdict::Yes { checked_up_to: p_max }
}

struct Work {
    left: u64,
}

impl Work {
    fn spend(&mut self, n: u64) -> Result<(), ()> {
        if self.left < n {
            return Err(());
        }
        self.left -= n;
        Ok(())
    }
}

/// Checks all squares of one shape. `k = None` means the boundary.
fn check_shape(f: &SSetMap, p: usize, k: Option<usize>, work: &mut Work) -> Result<Option<KanWitness>, ()> {
    let x = f.dom();
    let y = f.cod();
    if p == 0 {
        // boundary of a point is empty: surjectivity on vertices
        let hit: HashSet<usize> = f.vertex_map().into_iter().collect();
        work.spend(y.vertex_count() as u64)?;
        return Ok((0..y.vertex_count()).find(|v| !hit.contains(v)).map(|v| KanWitness {
            p: 0,
            k: None,
            faces: Vec::new(),
            target: Simplex::nondegenerate(super::CellId { dim: 0, index: v }),
        }));
    }
    let slots: Vec<usize> = (0..=p).filter(|&i| Some(i) != k).collect();
    let (xs, xidx) = x.simplex_index(p - 1);
    let xp = x.simplices(p);
    let yp = y.simplices(p);
    work.spend((xs.len() + xp.len() + yp.len()) as u64)?;
    let xfaces: Vec<Vec<Simplex>> = if p >= 2 {
        xs.iter().map(|s| (0..p).map(|i| x.face(i, s)).collect()).collect()
    } else {
        vec![Vec::new(); xs.len()]
    };
    let image: Vec<Simplex> = xs.iter().map(|s| f.apply(s)).collect();

    // fillers in X, keyed by their horn, as sets of images in Y
    let mut fillers: HashMap<Vec<usize>, HashSet<Simplex>> = HashMap::new();
    for s in &xp {
        let key: Vec<usize> = slots.iter().map(|&i| xidx[&x.face(i, s)]).collect();
        fillers.entry(key).or_default().insert(f.apply(s));
    }
    // Y-simplices keyed by their horn
    let mut targets: HashMap<Vec<Simplex>, Vec<Simplex>> = HashMap::new();
    for s in &yp {
        let key: Vec<Simplex> = slots.iter().map(|&i| y.face(i, s)).collect();
        targets.entry(key).or_default().push(s.clone());
    }

    let mut chosen: Vec<usize> = Vec::with_capacity(slots.len());
    let mut found = None;
    enumerate_horns(&slots, &xfaces, xs.len(), &mut chosen, work, &mut |tuple| {
        let key: Vec<Simplex> = tuple.iter().map(|&t| image[t].clone()).collect();
        let Some(ys) = targets.get(&key) else { return true };
        let lifted = fillers.get(tuple);
        for yv in ys {
            if !lifted.is_some_and(|l| l.contains(yv)) {
                let mut faces = vec![None; p + 1];
                for (slot, &t) in slots.iter().zip(tuple) {
                    faces[*slot] = Some(xs[t].clone());
                }
                found = Some(KanWitness { p, k, faces, target: yv.clone() });
                return false;
            }
        }
        true
    })?;
    Ok(found)
}

/// Backtracking over compatible face tuples; `visit` returns false to stop.
fn enumerate_horns(
    slots: &[usize],
    xfaces: &[Vec<Simplex>],
    n: usize,
    chosen: &mut Vec<usize>,
    work: &mut Work,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<bool, ()> {
    let depth = chosen.len();
    if depth == slots.len() {
        return Ok(visit(chosen));
    }
    let j = slots[depth];
    work.spend(n as u64)?;
    for cand in 0..n {
        // d_i x_j = d_{j-1} x_i for every earlier slot i < j
        let ok = xfaces[cand].is_empty()
            || slots[..depth]
            .iter()
            .zip(chosen.iter())
            .all(|(&i, &xi)| xfaces[cand][i] == xfaces[xi][j - 1]);
        if !ok {
            continue;
        }
        chosen.push(cand);
        let go_on = enumerate_horns(slots, xfaces, n, chosen, work, visit)?;
        chosen.pop();
        if !go_on {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Is `x` a Kan complex (checked up to `p_max`)?
pub fn is_kan_complex(x: &FinSimplicialSet, p_max: usize) -> LiftVerdict<KanWitness> {
    is_kan_fibration(&SSetMap::to_point(x.clone()), p_max)
}
