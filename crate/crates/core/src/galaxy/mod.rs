//! Reachable fragments of the galaxy, the vertical core, spines, starlets
//! and the isomorphism decision pipeline.

mod decide;
mod export;

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::coxsys::{are_graph_isomorphic, canonical_form, CoxeterMatrix, GalaxyVertex, Label};
use crate::error::{Error, Result};
use crate::moves::{all_moves, blow_downs, blow_ups, Move, MoveRecord};

pub use decide::{decide_isomorphic, iso_rank_le3, Certificate, Decision, IsoWitness};
pub use export::{fragment_to_dot, fragment_to_json, system_summary, system_to_dot};

/// Exploration limits. `time_limit` is ignored on targets without a clock.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_vertices: usize,
    pub max_rank: usize,
    pub max_moves_per_vertex: usize,
    pub time_limit: Option<Duration>,
    /// Galaxy edges are materialized only up to this many.
    pub max_edges: usize,
    /// Group-size cap for the finite isomorphism search.
    pub oracle_cap: usize,
    /// Whether elementary twists are followed; blow-ups and blow-downs
    /// always are.
    pub horizontal: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: 10_000,
            max_rank: 16,
            max_moves_per_vertex: 10_000,
            time_limit: if cfg!(target_arch = "wasm32") {
                None
            } else {
                Some(Duration::from_secs(60))
            },
            max_edges: 1_000_000,
            oracle_cap: 100_000,
            horizontal: true,
        }
    }
}

impl Budget {
    pub fn with_max_vertices(mut self, n: usize) -> Self {
        self.max_vertices = n;
        self
    }
}

/// Why an exploration stopped early.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Truncation {
    Vertices,
    Rank,
    MovesPerVertex,
    Time,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragmentVertex {
    pub vertex: GalaxyVertex,
    pub representative: CoxeterMatrix,
}

impl FragmentVertex {
    pub fn layer(&self) -> usize {
        self.vertex.rank()
    }
}

/// How a galaxy edge of a fragment is witnessed: a single recorded move, or
/// a path of moves through the fragment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Move(usize),
    Composite,
}

/// An edge between fragment vertices `a < b` (indices into `vertices`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentEdge {
    pub a: usize,
    pub b: usize,
    pub provenance: Provenance,
}

/// A finite piece of the galaxy. `moves` are the recorded moves, each
/// applying to the representative of its source; `edges` is the 1-skeleton,
/// where any two vertices joined by a path of moves span an edge.
#[derive(Clone, Debug)]
pub struct GalaxyFragment {
    pub seed: GalaxyVertex,
    pub vertices: Vec<FragmentVertex>,
    pub moves: Vec<MoveRecord>,
    pub edges: Vec<FragmentEdge>,
    /// False when the 1-skeleton was too large and `edges` only holds moves.
    pub edges_complete: bool,
    pub truncated: Option<Truncation>,
    index: HashMap<GalaxyVertex, usize>,
}

/// A spanning forest, as indices into the fragment's `edges`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpineForest {
    pub edges: Vec<usize>,
    pub trees: usize,
}

/// The rank-`n` starlet: hub `s0` joined to `s_i` by `4k_i + 2`, spokes
/// pairwise joined by `∞`.
pub fn starlet(ks: &[u32]) -> Result<CoxeterMatrix> {
    if ks.is_empty() || ks.contains(&0) {
        return Err(Error::InvalidParameter);
    }
    let mut seen = HashSet::new();
    for &k in ks {
        if !seen.insert(k) {
            return Err(Error::DuplicateParameter(k));
        }
        if k > (u32::MAX - 2) / 4 {
            return Err(Error::InvalidParameter);
        }
    }
    CoxeterMatrix::from_fn(ks.len() + 1, |i, j| {
        if i == 0 {
            Label::Finite(4 * ks[j - 1] + 2)
        } else {
            Label::Infinity
        }
    })
}

struct Clock {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
    limit: Option<Duration>,
}

impl Clock {
    fn new(limit: Option<Duration>) -> Clock {
        Clock {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
            limit,
        }
    }

    fn expired(&self) -> bool {
        #[cfg(not(target_arch = "wasm32"))]
        {
            self.limit.is_some_and(|l| self.start.elapsed() > l)
        }
        #[cfg(target_arch = "wasm32")]
        {
            let _ = self.limit;
            false
        }
    }
}

/// Breadth-first closure of `seed` under blow-ups, blow-downs and
/// nontrivial twists, deduplicated by canonical form.
pub fn explore(seed: &CoxeterMatrix, budget: &Budget) -> GalaxyFragment {
    let clock = Clock::new(budget.time_limit);
    let seed_vertex = canonical_form(seed);
    let mut f = GalaxyFragment {
        seed: seed_vertex.clone(),
        vertices: vec![FragmentVertex {
            vertex: seed_vertex.clone(),
            representative: seed.clone(),
        }],
        moves: Vec::new(),
        edges: Vec::new(),
        edges_complete: true,
        truncated: None,
        index: HashMap::from([(seed_vertex, 0)]),
    };
    let mut pairs: HashSet<(usize, usize)> = HashSet::new();
    let mut queue = VecDeque::from([0usize]);
    if seed.rank() > budget.max_rank {
        f.truncated = Some(Truncation::Rank);
        queue.clear();
    }
    while let Some(k) = queue.pop_front() {
        if clock.expired() {
            f.truncated = Some(Truncation::Time);
            break;
        }
        let rep = f.vertices[k].representative.clone();
        let mut moves = if budget.horizontal {
            all_moves(&rep)
        } else {
            let mut v = blow_ups(&rep);
            v.extend(blow_downs(&rep));
            v
        };
        if moves.len() > budget.max_moves_per_vertex {
            moves.truncate(budget.max_moves_per_vertex);
            f.truncated.get_or_insert(Truncation::MovesPerVertex);
        }
        for am in moves {
            let target = am.record.target.clone();
            let t = match f.index.get(&target) {
                Some(&t) => t,
                None => {
                    if am.result.rank() > budget.max_rank {
                        f.truncated.get_or_insert(Truncation::Rank);
                        continue;
                    }
                    if f.vertices.len() >= budget.max_vertices {
                        f.truncated.get_or_insert(Truncation::Vertices);
                        continue;
                    }
                    let t = f.vertices.len();
                    f.index.insert(target.clone(), t);
                    f.vertices.push(FragmentVertex {
                        vertex: target,
                        representative: am.result,
                    });
                    queue.push_back(t);
                    t
                }
            };
            if t != k && pairs.insert((k.min(t), k.max(t))) {
                f.moves.push(am.record);
            }
        }
    }
    f.rebuild_edges(budget.max_edges);
    debug_assert!(f.check_layers().is_ok(), "{:?}", f.check_layers());
    f
}

impl GalaxyFragment {
    pub fn vertex_index(&self, v: &GalaxyVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &GalaxyVertex) -> bool {
        self.index.contains_key(v)
    }

    pub fn layer(&self, i: usize) -> usize {
        self.vertices[i].layer()
    }

    fn move_endpoints(&self, r: &MoveRecord) -> (usize, usize) {
        (self.index[&r.source], self.index[&r.target])
    }

    /// Connected components of the move graph, as a component id per vertex.
    pub fn component_ids(&self) -> Vec<usize> {
        let adj: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (e.a, e.b))
            .chain(self.moves.iter().map(|r| self.move_endpoints(r)))
            .collect();
        components(self.vertices.len(), &adj)
    }

    /// Number of connected components of the 1-skeleton.
    pub fn component_count(&self) -> usize {
        let adj: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.a, e.b)).collect();
        let ids = components(self.vertices.len(), &adj);
        ids.iter().copied().max().map_or(0, |m| m + 1)
    }

    fn rebuild_edges(&mut self, max_edges: usize) {
        let ids = {
            let adj: Vec<(usize, usize)> = self.moves.iter().map(|r| self.move_endpoints(r)).collect();
            components(self.vertices.len(), &adj)
        };
        let mut direct: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, r) in self.moves.iter().enumerate() {
            let (a, b) = self.move_endpoints(r);
            direct.entry((a.min(b), a.max(b))).or_insert(i);
        }
        let mut sizes: HashMap<usize, usize> = HashMap::new();
        for &c in &ids {
            *sizes.entry(c).or_default() += 1;
        }
        let total: usize = sizes.values().map(|&s| s * (s - 1) / 2).sum();
        self.edges.clear();
        if total > max_edges {
            self.edges_complete = false;
            let mut d: Vec<_> = direct.into_iter().collect();
            d.sort();
            self.edges = d
                .into_iter()
                .map(|((a, b), i)| FragmentEdge {
                    a,
                    b,
                    provenance: Provenance::Move(i),
                })
                .collect();
            return;
        }
        self.edges_complete = true;
        for a in 0..self.vertices.len() {
            for b in a + 1..self.vertices.len() {
                if ids[a] == ids[b] {
                    let provenance = direct
                        .get(&(a, b))
                        .map_or(Provenance::Composite, |&i| Provenance::Move(i));
                    self.edges.push(FragmentEdge { a, b, provenance });
                }
            }
        }
    }

    /// The distinct layers present, ascending.
    pub fn layers(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self.vertices.iter().map(FragmentVertex::layer).collect();
        l.sort_unstable();
        l.dedup();
        l
    }

    /// Number of vertices per layer.
    pub fn layer_counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for v in &self.vertices {
            *out.entry(v.layer()).or_insert(0) += 1;
        }
        out
    }

    /// Each component has its layers forming an interval inside
    /// `[n0, 2·n0 − 1]`, `n0` its lowest layer.
    pub fn check_layers(&self) -> std::result::Result<(), String> {
        let ids = self.component_ids();
        let mut per: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &c) in ids.iter().enumerate() {
            per.entry(c).or_default().push(self.layer(i));
        }
        for layers in per.values_mut() {
            layers.sort_unstable();
            layers.dedup();
            let n0 = layers[0];
            let top = *layers.last().expect("nonempty component");
            if n0 > 0 && top > 2 * n0 - 1 {
                return Err(format!("layer {top} above 2·{n0}−1"));
            }
            if layers.len() != top - n0 + 1 {
                return Err(format!("layers {layers:?} skip a value"));
            }
        }
        Ok(())
    }

    /// The union of two fragments, recomputing the 1-skeleton.
    pub fn union(&self, other: &GalaxyFragment, max_edges: usize) -> GalaxyFragment {
        let mut f = self.clone();
        for v in &other.vertices {
            if !f.index.contains_key(&v.vertex) {
                f.index.insert(v.vertex.clone(), f.vertices.len());
                f.vertices.push(v.clone());
            }
        }
        let mut pairs: HashSet<(usize, usize)> = f
            .moves
            .iter()
            .map(|r| {
                let (a, b) = f.move_endpoints(r);
                (a.min(b), a.max(b))
            })
            .collect();
        for r in &other.moves {
            let from = &other.vertices[other.index[&r.source]].representative;
            let to = &f.vertices[f.index[&r.source]].representative;
            let Some(r) = transport(r, from, to) else { continue };
            let (a, b) = f.move_endpoints(&r);
            if pairs.insert((a.min(b), a.max(b))) {
                f.moves.push(r);
            }
        }
        f.truncated = self.truncated.or(other.truncated);
        f.rebuild_edges(max_edges);
        f
    }

    /// A shortest sequence of moves from the representative of `from` to a
    /// system in vertex `to`, each move applying to the result of the
    /// previous one.
    pub fn path(&self, from: usize, to: usize) -> Result<Option<Vec<MoveRecord>>> {
        let Some(steps) = self.abstract_path(from, to) else {
            return Ok(None);
        };
        let steps: Vec<Step<'_>> = steps
            .into_iter()
            .map(|(i, forward)| {
                let r = &self.moves[i];
                Step {
                    record: r,
                    base: &self.vertices[self.index[&r.source]].representative,
                    forward,
                }
            })
            .collect();
        concretize(&self.vertices[from].representative, &steps).map(Some)
    }

    fn abstract_path(&self, from: usize, to: usize) -> Option<Vec<(usize, bool)>> {
        let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); self.vertices.len()];
        for (i, r) in self.moves.iter().enumerate() {
            let (a, b) = self.move_endpoints(r);
            adj[a].push((b, i, true));
            adj[b].push((a, i, false));
        }
        let mut prev: Vec<Option<(usize, usize, bool)>> = vec![None; self.vertices.len()];
        let mut seen = vec![false; self.vertices.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &(w, i, fwd) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((u, i, fwd));
                    queue.push_back(w);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut out = Vec::new();
        let mut cur = to;
        while let Some((p, i, fwd)) = prev[cur] {
            out.push((i, fwd));
            cur = p;
        }
        out.reverse();
        Some(out)
    }
}

fn transport(r: &MoveRecord, from: &CoxeterMatrix, to: &CoxeterMatrix) -> Option<MoveRecord> {
    let f = are_graph_isomorphic(from, to)?;
    Some(MoveRecord {
        mv: r.mv.relabel(&f),
        source: r.source.clone(),
        target: r.target.clone(),
    })
}

pub(crate) struct Step<'a> {
    pub record: &'a MoveRecord,
    /// The system the recorded move applies to.
    pub base: &'a CoxeterMatrix,
    pub forward: bool,
}

/// Replays abstract steps starting from `start`, transporting each move onto
/// the current system.
pub(crate) fn concretize(start: &CoxeterMatrix, steps: &[Step<'_>]) -> Result<Vec<MoveRecord>> {
    let mut cur = start.clone();
    let mut cur_v = canonical_form(&cur);
    let mut out = Vec::with_capacity(steps.len());
    for step in steps {
        let (src, mv): (CoxeterMatrix, Move) = if step.forward {
            (step.base.clone(), step.record.mv)
        } else {
            (
                step.record.mv.apply(step.base)?,
                step.record.mv.inverse(step.base.rank()),
            )
        };
        let f = are_graph_isomorphic(&src, &cur)
            .ok_or_else(|| Error::InvalidMove("path step does not start at the current system".into()))?;
        let mv = mv.relabel(&f);
        let next = mv.apply(&cur)?;
        let next_v = canonical_form(&next);
        out.push(MoveRecord {
            mv,
            source: cur_v,
            target: next_v.clone(),
        });
        cur = next;
        cur_v = next_v;
    }
    Ok(out)
}

fn components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    for &(a, b) in edges {
        uf.union(a, b);
    }
    let mut ids = HashMap::new();
    (0..n)
        .map(|i| {
            let r = uf.find(i);
            let next = ids.len();
            *ids.entry(r).or_insert(next)
        })
        .collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Removes the vertical edges of height greater than one.
pub fn vertical_core(f: &GalaxyFragment) -> GalaxyFragment {
    let mut out = f.clone();
    out.edges.retain(|e| f.layer(e.a).abs_diff(f.layer(e.b)) <= 1);
    out
}

/// Kruskal's algorithm over the edges ordered by the canonical forms of
/// their endpoints.
pub fn spine(f: &GalaxyFragment) -> SpineForest {
    let key = |e: &FragmentEdge| {
        let (x, y) = (&f.vertices[e.a].vertex, &f.vertices[e.b].vertex);
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    };
    let mut order: Vec<usize> = (0..f.edges.len()).collect();
    order.sort_by(|&i, &j| key(&f.edges[i]).cmp(&key(&f.edges[j])));
    let mut uf = UnionFind::new(f.vertices.len());
    let edges: Vec<usize> = order
        .into_iter()
        .filter(|&i| uf.union(f.edges[i].a, f.edges[i].b))
        .collect();
    SpineForest {
        trees: f.vertices.len() - edges.len(),
        edges,
    }
}

/// Number of cliques of each size `1..=max_size` in the 1-skeleton (the
/// simplices of the flag complex by dimension + 1), or `None` when more
/// than `work_cap` cliques would be listed.
pub fn clique_counts(f: &GalaxyFragment, max_size: usize, work_cap: u64) -> Option<Vec<u64>> {
    let n = f.vertices.len();
    let adj: Vec<HashSet<usize>> = (0..n)
        .map(|i| {
            f.edges
                .iter()
                .filter(|e| e.a == i || e.b == i)
                .map(|e| e.a + e.b - i)
                .collect()
        })
        .collect();
    let mut counts = vec![0u64; max_size];
    let mut work = 0u64;
    fn grow(
        cands: &[usize],
        size: usize,
        adj: &[HashSet<usize>],
        counts: &mut [u64],
        work: &mut u64,
        cap: u64,
    ) -> bool {
        if size > counts.len() {
            return true;
        }
        for (k, &v) in cands.iter().enumerate() {
            *work += 1;
            if *work > cap {
                return false;
            }
            counts[size - 1] += 1;
            let next: Vec<usize> = cands[k + 1..].iter().copied().filter(|u| adj[v].contains(u)).collect();
            if !grow(&next, size + 1, adj, counts, work, cap) {
                return false;
            }
        }
        true
    }
    let all: Vec<usize> = (0..n).collect();
    grow(&all, 1, &adj, &mut counts, &mut work, work_cap).then_some(counts)
}
