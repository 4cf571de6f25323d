//! Exact branch-and-bound for `K_t` and `K_{s,t}` minors.
//!
//! A graph has an `H` minor iff contracting some forest `F` leaves `H` as a
//! subgraph. Each search node picks a contractible edge `e` and branches on
//! "contract `e`" versus "freeze `e`" (keep it, never contract it); every
//! forest lands in exactly one branch. Frozen edges stay in the graph and
//! still provide adjacency.
//!
//! Reductions, with `d` the least degree a singleton branch set can have:
//! a vertex of degree at most 1 is deleted when `d ≥ 2`, a vertex of degree
//! 2 is contracted into a neighbour when `d ≥ 3`, and a vertex below `d`
//! whose edges are all frozen is deleted. None of them can destroy a model
//! compatible with the frozen edges.

use fixedbitset::FixedBitSet;

use super::{verify_kst_model, verify_model, KstModel, Model, Pattern};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::search::{Budget, Search};

#[derive(Debug, Clone)]
struct Work {
    alive: FixedBitSet,
    adj: Vec<FixedBitSet>,
    frozen: Vec<FixedBitSet>,
    groups: Vec<Vec<Vertex>>,
}

impl Work {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in g.edges() {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        let mut alive = FixedBitSet::with_capacity(n);
        alive.insert_range(..);
        Work {
            alive,
            adj,
            frozen: vec![FixedBitSet::with_capacity(n); n],
            groups: (0..n).map(|v| vec![v]).collect(),
        }
    }

    fn order(&self) -> usize {
        self.alive.count_ones(..)
    }

    fn size(&self) -> usize {
        self.alive.ones().map(|u| self.degree(u)).sum::<usize>() / 2
    }

    fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones(..)
    }

    fn remove(&mut self, u: usize) {
        self.alive.set(u, false);
        let nbrs: Vec<usize> = self.adj[u].ones().collect();
        for w in nbrs {
            self.adj[w].set(u, false);
            self.frozen[w].set(u, false);
        }
        self.adj[u].clear();
        self.frozen[u].clear();
    }

    /// Merges `v` into `u`. A merged edge stays contractible if either of
    /// its sources was.
    fn contract(&mut self, u: usize, v: usize) {
        let nbrs: Vec<usize> = self.adj[v].ones().filter(|&w| w != u).collect();
        for w in nbrs {
            let frozen = self.frozen[v][w] && (!self.adj[u][w] || self.frozen[u][w]);
            self.adj[u].insert(w);
            self.adj[w].insert(u);
            self.frozen[u].set(w, frozen);
            self.frozen[w].set(u, frozen);
        }
        let moved = std::mem::take(&mut self.groups[v]);
        self.groups[u].extend(moved);
        self.remove(v);
    }

    fn freeze(&mut self, u: usize, v: usize) {
        self.frozen[u].insert(v);
        self.frozen[v].insert(u);
    }

    fn all_frozen(&self, u: usize) -> bool {
        self.adj[u].is_subset(&self.frozen[u])
    }

    fn reduce(&mut self, singleton_degree: usize) {
        loop {
            let mut changed = false;
            let live: Vec<usize> = self.alive.ones().collect();
            for u in live {
                if !self.alive[u] {
                    continue;
                }
                let d = self.degree(u);
                if d >= singleton_degree {
                    continue;
                }
                if d == 0 || (d == 1 && singleton_degree >= 2) || self.all_frozen(u) {
                    self.remove(u);
                    changed = true;
                } else if d == 2 && singleton_degree >= 3 {
                    let a = self.adj[u].ones().next().expect("degree 2");
                    self.contract(a, u);
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }

    /// Contractible edge with fewest common neighbours, ties to the
    /// lexicographically smallest pair.
    fn pick_edge(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, (usize, usize))> = None;
        for u in self.alive.ones() {
            for v in self.adj[u].ones().filter(|&v| v > u && !self.frozen[u][v]) {
                let common = self.adj[u].intersection_count(&self.adj[v]);
                if best.map_or(true, |(c, _)| common < c) {
                    best = Some((common, (u, v)));
                }
            }
        }
        best.map(|(_, e)| e)
    }

    fn lift(&self, sets: Vec<usize>) -> Vec<Vec<Vertex>> {
        sets.into_iter()
            .map(|u| {
                let mut g = self.groups[u].clone();
                g.sort_unstable();
                g
            })
            .collect()
    }
}

trait Target {
    /// Least degree a singleton branch set can have.
    fn singleton_degree(&self) -> usize;
    fn too_small(&self, w: &Work) -> bool;
    /// Working vertices forming the pattern as a subgraph.
    fn find(&self, w: &Work) -> Option<Vec<usize>>;
}

struct Clique(usize);

impl Target for Clique {
    fn singleton_degree(&self) -> usize {
        self.0 - 1
    }

    fn too_small(&self, w: &Work) -> bool {
        w.order() < self.0 || w.size() < self.0 * (self.0 - 1) / 2
    }

    fn find(&self, w: &Work) -> Option<Vec<usize>> {
        let mut cands = w.alive.clone();
        for u in w.alive.ones() {
            if w.degree(u) + 1 < self.0 {
                cands.set(u, false);
            }
        }
        clique_in(&w.adj, &cands, self.0)
    }
}

fn clique_in(adj: &[FixedBitSet], cands: &FixedBitSet, need: usize) -> Option<Vec<usize>> {
    if need == 0 {
        return Some(Vec::new());
    }
    if cands.count_ones(..) < need {
        return None;
    }
    for v in cands.ones() {
        let mut next = cands.clone();
        next.intersect_with(&adj[v]);
        next.remove_range(..v + 1);
        if let Some(mut rest) = clique_in(adj, &next, need - 1) {
            rest.insert(0, v);
            return Some(rest);
        }
    }
    None
}

/// `K_{s,t}` with `s ≤ t`.
struct Biclique(usize, usize);

impl Target for Biclique {
    fn singleton_degree(&self) -> usize {
        self.0
    }

    fn too_small(&self, w: &Work) -> bool {
        w.order() < self.0 + self.1 || w.size() < self.0 * self.1
    }

    fn find(&self, w: &Work) -> Option<Vec<usize>> {
        let (s, t) = (self.0, self.1);
        let mut cands = w.alive.clone();
        for u in w.alive.ones() {
            if w.degree(u) < t {
                cands.set(u, false);
            }
        }
        let (a, common) = biclique_side(&w.adj, &cands, &w.alive, s, t)?;
        Some(a.into_iter().chain(common.ones().take(t)).collect())
    }
}

/// An `s`-set inside `cands` whose common neighbourhood within `pool` has at
/// least `t` vertices.
fn biclique_side(
    adj: &[FixedBitSet],
    cands: &FixedBitSet,
    pool: &FixedBitSet,
    s: usize,
    t: usize,
) -> Option<(Vec<usize>, FixedBitSet)> {
    if pool.count_ones(..) < t {
        return None;
    }
    if s == 0 {
        return Some((Vec::new(), pool.clone()));
    }
    for v in cands.ones() {
        let mut next_pool = pool.clone();
        next_pool.intersect_with(&adj[v]);
        let mut next_cands = cands.clone();
        next_cands.remove_range(..v + 1);
        if let Some((mut a, common)) = biclique_side(adj, &next_cands, &next_pool, s - 1, t) {
            a.insert(0, v);
            return Some((a, common));
        }
    }
    None
}

fn branch(w: Work, target: &dyn Target, budget: &mut Budget) -> Option<Vec<Vec<Vertex>>> {
    let mut w = w;
    loop {
        if !budget.tick() {
            return None;
        }
        w.reduce(target.singleton_degree());
        if target.too_small(&w) {
            return None;
        }
        if let Some(sets) = target.find(&w) {
            return Some(w.lift(sets));
        }
        let (u, v) = w.pick_edge()?;
        let mut merged = w.clone();
        merged.contract(u, v);
        if let Some(found) = branch(merged, target, budget) {
            return Some(found);
        }
        if budget.tripped() {
            return None;
        }
        w.freeze(u, v);
    }
}

/// Exact search for a `K_t` model, counting search nodes against `budget`.
pub fn find_clique_minor(g: &Graph, t: usize, budget: u64) -> Result<Search<Model>> {
    let mut budget = Budget::new(budget)?;
    if t == 0 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    let sets = if t == 1 {
        (g.n() > 0).then(|| vec![vec![0]])
    } else {
        branch(Work::new(g), &Clique(t), &mut budget)
    };
    let model = sets.map(|sets| Model::new(Pattern::Complete { t }, sets));
    if let Some(m) = &model {
        debug_assert!(verify_model(g, m).is_ok_and(|v| v.is_valid()));
    }
    Ok(budget.conclude(model))
}

/// Exact search for a `K_{s,t}` model.
pub fn find_biclique_minor(g: &Graph, s: usize, t: usize, budget: u64) -> Result<Search<KstModel>> {
    let mut budget = Budget::new(budget)?;
    let (lo, hi) = (s.min(t), s.max(t));
    let sets = if lo == 0 {
        (g.n() >= hi).then(|| (0..hi).map(|v| vec![v]).collect())
    } else {
        branch(Work::new(g), &Biclique(lo, hi), &mut budget)
    };
    let model = sets.map(|mut sets| {
        let b_part = sets.split_off(lo);
        let (a_sets, b_sets) = if s <= t { (sets, b_part) } else { (b_part, sets) };
        KstModel { a_sets, b_sets }
    });
    if let Some(m) = &model {
        debug_assert!(verify_kst_model(g, m).is_ok_and(|v| v.is_valid()));
    }
    Ok(budget.conclude(model))
}

/// Node budget for the exact stage of [`density_extract_minor`].
const EXTRACT_BUDGET: u64 = 1_000_000;

/// Greedy contraction towards a small dense minor, then exact search. An
/// absent result is a heuristic miss, not a proof.
pub fn density_extract_minor(g: &Graph, t: usize) -> Result<Option<Model>> {
    if t < 2 {
        return Err(Error::InvalidParameter("t must be at least 2".into()));
    }
    let mut w = Work::new(g);
    while w.order() > 3 * t {
        let Some((u, v)) = w.pick_edge() else { break };
        w.contract(u, v);
    }
    let mut budget = Budget::new(EXTRACT_BUDGET)?;
    let found = branch(w, &Clique(t), &mut budget);
    let model = found.map(|sets| Model::new(Pattern::Complete { t }, sets));
    if let Some(m) = &model {
        debug_assert!(verify_model(g, m).is_ok_and(|v| v.is_valid()));
    }
    Ok(model)
}
