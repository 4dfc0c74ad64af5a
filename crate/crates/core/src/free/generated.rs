//! The free prop `𝒢_{n,m}[X]` on one family of generators, and its maps.
//!
//! Colors are `n + m` formal colors, all distinct; the generators form the
//! entry `(c_1..c_n; d_1..d_m)`. Since no output color of a generator is an
//! input color, generators never connect, and an entry is a disjoint union
//! of powers `X^k` indexed by graphs with `k` generator vertices.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use super::FreeError;
use crate::graphs::canon::{canonical_representative, code_and_labeling, code_of};
use crate::graphs::enumerate::for_each_wiring;
use crate::graphs::iso::strict_automorphisms;
use crate::graphs::{Biprofile, CanonicalCode, Color, ColorSet, ColoredGraph, Edge, Scheme, Vertex};
use crate::properads::{
    permuted_corolla, recolor, Composer, Decoration, EntryMapper, EntryMaps, GrProp, PropError,
    PropMorphism,
};
use crate::ssets::{enumerate_maps, CellId, FinSimplicialSet, SSetMap, Simplex};
use crate::substitution::{for_each_choice, substitute_traced, SubstitutionData};

struct Summand {
    code: CanonicalCode,
    graph: ColoredGraph,
    generators: usize,
    /// First cell of the summand in each dimension of the entry.
    offsets: Vec<usize>,
}

struct Layout {
    summands: Vec<Summand>,
    by_code: HashMap<CanonicalCode, usize>,
    entry: FinSimplicialSet,
}

type Power = Arc<(FinSimplicialSet, Vec<SSetMap>)>;

/// Composer of `𝒢_{n,m}[X]`.
pub struct GeneratedComposer {
    x: FinSimplicialSet,
    generator: Biprofile,
    scheme: Scheme,
    max_generators: usize,
    dim_bound: usize,
    powers: RwLock<HashMap<usize, Power>>,
    tuples: RwLock<HashMap<(usize, usize), Arc<HashMap<Vec<Simplex>, Simplex>>>>,
    layouts: RwLock<HashMap<Biprofile, Arc<Layout>>>,
}

impl fmt::Debug for GeneratedComposer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GeneratedComposer({})", self.generator)
    }
}

impl GeneratedComposer {
    pub fn generator(&self) -> &Biprofile {
        &self.generator
    }

    fn power(&self, k: usize) -> Power {
        if let Some(p) = self.powers.read().unwrap().get(&k) {
            return p.clone();
        }
        let p = Arc::new(self.x.power(k));
        self.powers.write().unwrap().insert(k, p.clone());
        p
    }

    /// `q`-simplices of `X^k` by their tuple of projections.
    fn tuple_index(&self, k: usize, q: usize) -> Arc<HashMap<Vec<Simplex>, Simplex>> {
        if let Some(t) = self.tuples.read().unwrap().get(&(k, q)) {
            return t.clone();
        }
        let pw = self.power(k);
        let t: HashMap<Vec<Simplex>, Simplex> = pw
            .0
            .simplices(q)
            .into_iter()
            .map(|s| (pw.1.iter().map(|pr| pr.apply(&s)).collect(), s))
            .collect();
        let t = Arc::new(t);
        self.tuples.write().unwrap().insert((k, q), t.clone());
        t
    }

    fn layout(&self, bp: &Biprofile) -> Result<Arc<Layout>, PropError> {
        if let Some(l) = self.layouts.read().unwrap().get(bp) {
            return Ok(l.clone());
        }
        let mut graphs: BTreeMap<CanonicalCode, (ColoredGraph, usize)> = BTreeMap::new();
        for k in 0..=self.max_generators {
            let vs = vec![&self.generator; k];
            for_each_wiring(bp, &vs, &mut |g| {
                if self.scheme.contains(g) {
                    graphs.entry(code_of(g)).or_insert_with(|| (canonical_representative(g), k));
                }
            });
        }
        let mut summands = Vec::new();
        let mut entry = FinSimplicialSet::empty();
        for (code, (graph, k)) in graphs {
            if strict_automorphisms(&graph).len() > 1 {
                return Err(PropError::Unsupported(format!("a graph of {bp} has nontrivial automorphisms")));
            }
            let dims = entry.dimension().map_or(0, |d| d + 1).max(self.power(k).0.dimension().map_or(0, |d| d + 1));
            let offsets = (0..dims.max(1)).map(|d| entry.count(d)).collect();
            entry = entry.coproduct(&self.power(k).0).0;
            summands.push(Summand { code, graph, generators: k, offsets });
        }
        let by_code = summands.iter().enumerate().map(|(i, s)| (s.code.clone(), i)).collect();
        let l = Arc::new(Layout { summands, by_code, entry });
        self.layouts.write().unwrap().insert(bp.clone(), l.clone());
        Ok(l)
    }

    /// The summand containing `s` and the tuple of its projections.
    fn locate(&self, l: &Layout, s: &Simplex) -> (usize, Vec<Simplex>) {
        let d = s.cell.dim;
        let j = l
            .summands
            .iter()
            .rposition(|m| m.offsets.get(d).is_some_and(|&o| o <= s.cell.index))
            .expect("every cell lies in a summand");
        let local = Simplex { cell: CellId { dim: d, index: s.cell.index - l.summands[j].offsets[d] }, degeneracy: s.degeneracy.clone() };
        let pw = self.power(l.summands[j].generators);
        (j, pw.1.iter().map(|pr| pr.apply(&local)).collect())
    }

    fn place(&self, l: &Layout, j: usize, tuple: &[Simplex], q: usize) -> Simplex {
        let s = self.tuple_index(l.summands[j].generators, q)[tuple].clone();
        let off = l.summands[j].offsets.get(s.cell.dim).copied().unwrap_or(0);
        Simplex { cell: CellId { dim: s.cell.dim, index: s.cell.index + off }, degeneracy: s.degeneracy }
    }

    /// Summand index and decoration tuple of every nondegenerate cell of an
    /// entry, each tuple in the cell's own dimension.
    fn cells(&self, bp: &Biprofile) -> Result<Vec<(CellId, usize, Vec<Simplex>)>, PropError> {
        let l = self.layout(bp)?;
        Ok(l.entry.cells().map(|c| {
            let (j, t) = self.locate(&l, &Simplex::nondegenerate(c));
            (c, j, t)
        }).collect())
    }

    fn summand_graph(&self, bp: &Biprofile, j: usize) -> Result<ColoredGraph, PropError> {
        Ok(self.layout(bp)?.summands[j].graph.clone())
    }
}

impl Composer for GeneratedComposer {
    fn entry(&self, bp: &Biprofile) -> Result<FinSimplicialSet, PropError> {
        Ok(self.layout(bp)?.entry.clone())
    }

    fn unit(&self, c: Color) -> Result<CellId, PropError> {
        let l = self.layout(&Biprofile::unary(c))?;
        let edge = code_of(&ColoredGraph::edge(c));
        let j = l.by_code[&edge];
        Ok(CellId { dim: 0, index: l.summands[j].offsets[0] })
    }

    fn compose(&self, g: &ColoredGraph, labels: &[Simplex], degree: usize) -> Result<Simplex, PropError> {
        if degree > self.dim_bound {
            return Err(PropError::Unsupported(format!("degree {degree} above the bound {}", self.dim_bound)));
        }
        let mut pieces = Vec::with_capacity(labels.len());
        let mut tuples = Vec::with_capacity(labels.len());
        for (v, s) in labels.iter().enumerate() {
            let l = self.layout(&g.vertex_profile(v))?;
            let (j, t) = self.locate(&l, s);
            pieces.push(l.summands[j].graph.clone());
            tuples.push(t);
        }
        let (k, trace) = substitute_traced(&SubstitutionData { target: g.clone(), assignment: pieces })?;
        let flat: Vec<Simplex> = trace.vertex_origin.iter().map(|&(v, u)| tuples[v][u].clone()).collect();
        let (code, lab) = code_and_labeling(&k);
        let l = self.layout(&g.biprofile())?;
        let j = *l
            .by_code
            .get(&code)
            .ok_or_else(|| PropError::Inconsistent(format!("composite graph beyond {} generators", self.max_generators)))?;
        let ordered: Vec<Simplex> = lab.vertex_order.iter().map(|&i| flat[i].clone()).collect();
        Ok(self.place(&l, j, &ordered, degree))
    }
}

/// `𝒢_{n,m}[X]` with its composer.
#[derive(Clone, Debug)]
pub struct GeneratedProp {
    pub shape: (usize, usize),
    pub x: FinSimplicialSet,
    pub prop: Arc<GrProp>,
    pub composer: Arc<GeneratedComposer>,
}

impl GeneratedProp {
    pub fn generator(&self) -> &Biprofile {
        &self.composer.generator
    }

    /// The inclusion of `X` as the decorations of the standard corolla.
    pub fn generator_inclusion(&self) -> Result<SSetMap, FreeError> {
        let g = self.generator().clone();
        let l = self.composer.layout(&g)?;
        let j = l.by_code[&code_of(&ColoredGraph::corolla(&g))];
        let images = (0..=self.x.dimension().unwrap_or(0))
            .map(|d| {
                self.x
                    .cells_of_dim(d)
                    .map(|c| Simplex::nondegenerate(CellId { dim: d, index: c.index + l.summands[j].offsets[d] }))
                    .collect()
            })
            .collect();
        Ok(SSetMap::new(self.x.clone(), l.entry.clone(), images)?)
    }
}

/// Builds `𝒢_{n,m}[X]` in `scheme`: at most `max_generators` generator
/// vertices per graph, compositions up to simplicial degree `dim_bound`.
pub fn materialize_gnm(
    n: usize,
    m: usize,
    x: FinSimplicialSet,
    scheme: Scheme,
    dim_bound: usize,
    max_generators: usize,
) -> Result<GeneratedProp, FreeError> {
    if n + m == 0 && scheme == Scheme::Prop {
        return Err(FreeError::Unsupported("generators without legs form unboundedly many closed components".into()));
    }
    let colors = ColorSet::range((n + m) as u32);
    let generator = Biprofile::new((0..n as u32).map(Color).collect(), (n as u32..(n + m) as u32).map(Color).collect());
    let composer = Arc::new(GeneratedComposer {
        x: x.clone(),
        generator,
        scheme,
        max_generators,
        dim_bound,
        powers: RwLock::default(),
        tuples: RwLock::default(),
        layouts: RwLock::default(),
    });
    let arity = crate::properads::DEFAULT_ARITY.max(n + m);
    let prop = GrProp::new(format!("G[{n},{m}]"), scheme, colors, arity, composer.clone());
    Ok(GeneratedProp { shape: (n, m), x, prop: Arc::new(prop), composer })
}

/// Entry maps of the morphism out of `𝒢_{n,m}[X]` fixed by a color map and
/// the image of each generator cell.
#[derive(Debug)]
struct Extension {
    gen: Arc<GeneratedComposer>,
    colors: Vec<Color>,
    target: Arc<GrProp>,
    images: Vec<Vec<Simplex>>,
}

impl Extension {
    fn image_of(&self, s: &Simplex) -> Simplex {
        let y = &self.images[s.cell.dim][s.cell.index];
        let cod = self.target.entry(&self.generator_image()).expect("checked when built");
        cod.apply(&s.degeneracy, y)
    }

    fn generator_image(&self) -> Biprofile {
        self.gen.generator.map_colors(|c| self.colors[c.0 as usize])
    }
}

impl EntryMapper for Extension {
    fn map(&self, bp: &Biprofile, dom: Arc<FinSimplicialSet>, cod: Arc<FinSimplicialSet>) -> Result<SSetMap, PropError> {
        let cells = self.gen.cells(bp)?;
        let mut images: Vec<Vec<Simplex>> = vec![Vec::new(); dom.dimension().map_or(1, |d| d + 1)];
        for (c, j, tuple) in cells {
            let g = recolor(&self.gen.summand_graph(bp, j)?, |k| self.colors[k.0 as usize]);
            let labels: Vec<Simplex> = tuple.iter().map(|s| self.image_of(s)).collect();
            let y = self.target.gamma(&Decoration::new(g, labels, c.dim))?;
            images[c.dim].push(y);
        }
        Ok(SSetMap::new(dom, cod, images)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct HomBounds {
    /// Generator-image candidates tried before giving up.
    pub max_candidates: usize,
    /// Decorations tried per test graph when checking a candidate.
    pub decorations_per_graph: usize,
}

impl Default for HomBounds {
    fn default() -> Self {
        HomBounds { max_candidates: 200_000, decorations_per_graph: 64 }
    }
}

/// Candidate images of the generator cells, chosen cell by cell with the
/// face conditions enforced as soon as they can be evaluated.
fn generator_images(x: &FinSimplicialSet, y: &FinSimplicialSet, limit: usize) -> Result<Vec<Vec<Vec<Simplex>>>, FreeError> {
    let cells: Vec<CellId> = x.cells().collect();
    let by_dim: Vec<Vec<Simplex>> = (0..=x.dimension().unwrap_or(0)).map(|d| y.simplices(d)).collect();
    let mut out = Vec::new();
    let mut assigned: Vec<Vec<Option<Simplex>>> =
        (0..=x.dimension().unwrap_or(0)).map(|d| vec![None; x.count(d)]).collect();
    fn go(
        i: usize,
        cells: &[CellId],
        x: &FinSimplicialSet,
        y: &FinSimplicialSet,
        by_dim: &[Vec<Simplex>],
        assigned: &mut Vec<Vec<Option<Simplex>>>,
        out: &mut Vec<Vec<Vec<Simplex>>>,
        limit: usize,
    ) -> bool {
        if i == cells.len() {
            out.push(assigned.iter().map(|l| l.iter().map(|s| s.clone().unwrap()).collect()).collect());
            return out.len() <= limit;
        }
        let c = cells[i];
        for cand in &by_dim[c.dim] {
            let fits = x.cell_faces(c).iter().enumerate().all(|(k, f)| {
                let base = assigned[f.cell.dim][f.cell.index].as_ref().expect("faces come first");
                y.face(k, cand) == y.apply(&f.degeneracy, base)
            });
            if fits {
                assigned[c.dim][c.index] = Some(cand.clone());
                if !go(i + 1, cells, x, y, by_dim, assigned, out, limit) {
                    return false;
                }
            }
        }
        assigned[c.dim][c.index] = None;
        true
    }
    if !go(0, &cells, x, y, &by_dim, &mut assigned, &mut out, limit) {
        return Err(FreeError::Bound { what: "generator image candidates".into(), bound: limit });
    }
    Ok(out)
}

/// One- and two-vertex graphs over the nonempty entries of `𝒢`, used to
/// test candidate morphisms. Two vertices are joined by a color-respecting
/// matching of outputs of the first to inputs of the second.
fn test_graphs(gen: &GeneratedProp) -> Result<Vec<ColoredGraph>, FreeError> {
    let p = &gen.prop;
    let scheme = p.scheme();
    let mut profiles = Vec::new();
    for bp in p.biprofiles() {
        if !p.entry(&bp)?.is_empty() {
            profiles.push(bp);
        }
    }
    let mut out = Vec::new();
    for bp in &profiles {
        let (n, m) = bp.arity();
        for pi in permutations(n) {
            for po in permutations(m) {
                out.push(permuted_corolla(bp, &(pi.clone(), po)));
            }
        }
    }
    for a in &profiles {
        for b in &profiles {
            for joins in matchings(&a.outputs, &b.inputs) {
                let g = join_two(a, b, &joins);
                if scheme.contains(&g) && g.biprofile().total_arity() <= p.arity() {
                    out.push(g);
                }
            }
        }
    }
    Ok(out)
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

/// Partial injections from outputs to inputs preserving colors.
fn matchings(outs: &[Color], ins: &[Color]) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    fn go(i: usize, outs: &[Color], ins: &[Color], used: &mut Vec<bool>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if i == outs.len() {
            out.push(cur.clone());
            return;
        }
        go(i + 1, outs, ins, used, cur, out);
        for j in 0..ins.len() {
            if !used[j] && ins[j] == outs[i] {
                used[j] = true;
                cur.push((i, j));
                go(i + 1, outs, ins, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    go(0, outs, ins, &mut vec![false; ins.len()], &mut Vec::new(), &mut out);
    out
}

fn join_two(a: &Biprofile, b: &Biprofile, joins: &[(usize, usize)]) -> ColoredGraph {
    let mut edges = Vec::new();
    let fresh = |c: Color, edges: &mut Vec<Edge>| {
        edges.push(Edge { color: c });
        edges.len() - 1
    };
    let a_in: Vec<usize> = a.inputs.iter().map(|&c| fresh(c, &mut edges)).collect();
    let a_out: Vec<usize> = a.outputs.iter().map(|&c| fresh(c, &mut edges)).collect();
    let b_in: Vec<usize> = (0..b.inputs.len())
        .map(|j| match joins.iter().find(|&&(_, jj)| jj == j) {
            Some(&(i, _)) => a_out[i],
            None => fresh(b.inputs[j], &mut edges),
        })
        .collect();
    let b_out: Vec<usize> = b.outputs.iter().map(|&c| fresh(c, &mut edges)).collect();
    let joined: HashSet<usize> = joins.iter().map(|&(i, _)| i).collect();
    let taken: HashSet<usize> = joins.iter().map(|&(_, j)| j).collect();
    let mut inputs = a_in.clone();
    inputs.extend((0..b.inputs.len()).filter(|j| !taken.contains(j)).map(|j| b_in[j]));
    let mut outputs: Vec<usize> = (0..a.outputs.len()).filter(|i| !joined.contains(i)).map(|i| a_out[i]).collect();
    outputs.extend(b_out.iter().copied());
    ColoredGraph {
        vertices: vec![Vertex { inputs: a_in, outputs: a_out }, Vertex { inputs: b_in, outputs: b_out }],
        edges,
        inputs,
        outputs,
    }
}

/// Every morphism `𝒢_{n,m}[X] -> P`: each color map and each choice of
/// generator images is extended through the compositions of `P`, and kept
/// when the extension is simplicial, preserves units and commutes with
/// composition on the test graphs.
pub fn homs_from_generated(
    gen: &GeneratedProp,
    p: &Arc<GrProp>,
    bounds: HomBounds,
) -> Result<(Vec<PropMorphism>, usize), FreeError> {
    let k = gen.prop.colors().len();
    let targets: Vec<Color> = p.colors().iter().collect();
    let tests = test_graphs(gen)?;
    let mut homs = Vec::new();
    let mut rejected = 0;
    let mut color_maps: Vec<Vec<Color>> = Vec::new();
    for_each_choice(&vec![targets.clone(); k], &mut |cm| color_maps.push(cm));
    if k == 0 {
        color_maps = vec![Vec::new()];
    }
    for cm in color_maps {
        let g_bp = gen.generator().map_colors(|c| cm[c.0 as usize]);
        if g_bp.total_arity() > p.arity() {
            return Err(FreeError::Bound { what: format!("generator image {g_bp}"), bound: p.arity() });
        }
        let y = p.entry(&g_bp)?;
        for images in generator_images(&gen.x, &y, bounds.max_candidates)? {
            let ext = Extension { gen: gen.composer.clone(), colors: cm.clone(), target: p.clone(), images };
            let f = PropMorphism::new(
                "extension",
                gen.prop.clone(),
                p.clone(),
                cm.clone(),
                EntryMaps::Custom(Arc::new(ext)),
            )?;
            if verify(&f, &tests, bounds)? {
                homs.push(f);
            } else {
                rejected += 1;
            }
        }
    }
    Ok((homs, rejected))
}

fn verify(f: &PropMorphism, tests: &[ColoredGraph], bounds: HomBounds) -> Result<bool, FreeError> {
    if f.dom().biprofiles().iter().any(|bp| f.map_biprofile(bp).total_arity() > f.cod().arity()) {
        return Err(FreeError::Bound { what: "image biprofiles".into(), bound: f.cod().arity() });
    }
    for bp in f.dom().biprofiles() {
        match f.entry_map(&bp) {
            Ok(_) => {}
            Err(PropError::SSet(_)) => return Ok(false),
            Err(e) => return Err(e.into()),
        }
    }
    if !f.preserves_units()? {
        return Ok(false);
    }
    for g in tests {
        let choices: Vec<Vec<Simplex>> = (0..g.vertex_count())
            .map(|v| Ok(f.dom().entry(&g.vertex_profile(v))?.simplices(0)))
            .collect::<Result<_, PropError>>()?;
        let mut decorations = Vec::new();
        for_each_choice(&choices, &mut |ls| {
            if decorations.len() < bounds.decorations_per_graph {
                decorations.push(ls)
            }
        });
        for ls in decorations {
            if !f.commutes_on(&Decoration::new(g.clone(), ls, 0))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The map `𝒢_{n,m}[A] -> 𝒢_{n,m}[B]` induced by `i: A -> B`.
pub fn generated_map(a: &GeneratedProp, b: &GeneratedProp, i: &SSetMap) -> Result<PropMorphism, FreeError> {
    if a.shape != b.shape || a.prop.scheme() != b.prop.scheme() {
        return Err(FreeError::Unsupported("maps between different generator shapes".into()));
    }
    let cm: Vec<Color> = a.prop.colors().iter().collect();
    let mapper = Induced { a: a.composer.clone(), b: b.composer.clone(), i: i.clone() };
    Ok(PropMorphism::new("induced", a.prop.clone(), b.prop.clone(), cm, EntryMaps::Custom(Arc::new(mapper)))?)
}

#[derive(Debug)]
struct Induced {
    a: Arc<GeneratedComposer>,
    b: Arc<GeneratedComposer>,
    i: SSetMap,
}

impl EntryMapper for Induced {
    fn map(&self, bp: &Biprofile, dom: Arc<FinSimplicialSet>, cod: Arc<FinSimplicialSet>) -> Result<SSetMap, PropError> {
        let lb = self.b.layout(bp)?;
        let mut images: Vec<Vec<Simplex>> = vec![Vec::new(); dom.dimension().map_or(1, |d| d + 1)];
        for (c, j, tuple) in self.a.cells(bp)? {
            let mapped: Vec<Simplex> = tuple.iter().map(|s| self.i.apply(s)).collect();
            images[c.dim].push(self.b.place(&lb, j, &mapped, c.dim));
        }
        Ok(SSetMap::new(dom, cod, images)?)
    }
}

/// Morphisms out of `𝒢_{n,m}[X]` against pairs of a biprofile and a map
/// from `X` into its entry.
#[derive(Clone, Debug, Serialize)]
pub struct HomComparison {
    pub homs: usize,
    pub rejected_candidates: usize,
    pub direct: usize,
    /// Restricting to the generators is injective with image the direct set.
    pub bijective: bool,
}

pub fn compare_homs(gen: &GeneratedProp, p: &Arc<GrProp>, bounds: HomBounds) -> Result<HomComparison, FreeError> {
    let (homs, rejected) = homs_from_generated(gen, p, bounds)?;
    let incl = gen.generator_inclusion()?;
    let mut restricted: HashSet<(Biprofile, Vec<Vec<Simplex>>)> = HashSet::new();
    let mut injective = true;
    for f in &homs {
        let bp = f.map_biprofile(gen.generator());
        let r = incl.then(&*f.entry_map(gen.generator())?);
        if !restricted.insert((bp, r.images().to_vec())) {
            injective = false;
        }
    }
    let (n, m) = gen.shape;
    let x = Arc::new(gen.x.clone());
    let mut direct: HashSet<(Biprofile, Vec<Vec<Simplex>>)> = HashSet::new();
    for ins in p.colors().words(n) {
        for outs in p.colors().words(m) {
            let bp = Biprofile::new(ins.clone(), outs);
            let y = p.entry(&bp)?;
            for map in enumerate_maps(&x, &y, bounds.max_candidates) {
                direct.insert((bp.clone(), map.images().to_vec()));
            }
        }
    }
    Ok(HomComparison {
        homs: homs.len(),
        rejected_candidates: rejected,
        direct: direct.len(),
        bijective: injective && restricted == direct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_of_one_unary_generator() {
        let g = materialize_gnm(1, 1, FinSimplicialSet::point(), Scheme::Properad, 2, 2).unwrap();
        let p = &g.prop;
        assert_eq!(p.entry(&Biprofile::new(vec![Color(0)], vec![Color(1)])).unwrap().vertex_count(), 1);
        assert_eq!(p.entry(&Biprofile::unary(Color(0))).unwrap().vertex_count(), 1);
        assert!(p.entry(&Biprofile::new(vec![Color(1)], vec![Color(0)])).unwrap().is_empty());
        let u = p.unit(Color(0)).unwrap();
        assert_eq!(u.cell.dim, 0);
    }

    #[test]
    fn prop_entries_are_powers() {
        let x = FinSimplicialSet::boundary(1);
        let g = materialize_gnm(1, 1, x, Scheme::Prop, 1, 2).unwrap();
        let two = Biprofile::new(vec![Color(0), Color(0)], vec![Color(1), Color(1)]);
        // two generators, legs matched in either order
        assert_eq!(g.prop.entry(&two).unwrap().vertex_count(), 8);
    }

    #[test]
    fn point_generator_homs_are_vertices() {
        let g = materialize_gnm(1, 1, FinSimplicialSet::point(), Scheme::Properad, 1, 2).unwrap();
        let p = Arc::new(GrProp::endomorphism(Scheme::Properad, vec![2]).unwrap());
        let r = compare_homs(&g, &p, HomBounds::default()).unwrap();
        assert_eq!(r.homs, 4);
        assert!(r.bijective);
    }

    #[test]
    fn empty_generators_give_color_maps() {
        let g = materialize_gnm(2, 1, FinSimplicialSet::empty(), Scheme::Properad, 1, 2).unwrap();
        let p = Arc::new(GrProp::terminal(Scheme::Properad, 2, false).unwrap());
        let r = compare_homs(&g, &p, HomBounds::default()).unwrap();
        assert_eq!(r.homs, 8);
        assert!(r.bijective);
    }

    #[test]
    fn composition_concatenates_generators() {
        let g = materialize_gnm(1, 1, FinSimplicialSet::boundary(1), Scheme::Prop, 1, 2).unwrap();
        let a = Biprofile::new(vec![Color(0)], vec![Color(1)]);
        let two = ColoredGraph::corolla(&a).disjoint_union(&ColoredGraph::corolla(&a));
        let v = |i| Simplex::nondegenerate(CellId { dim: 0, index: i });
        let s = g.prop.gamma(&Decoration::new(two, vec![v(0), v(1)], 0)).unwrap();
        let t = Biprofile::new(vec![Color(0), Color(0)], vec![Color(1), Color(1)]);
        assert!(g.prop.entry(&t).unwrap().contains(s.cell));
    }
}
