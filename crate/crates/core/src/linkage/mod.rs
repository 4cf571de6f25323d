//! Disjoint-path linkages: verification, backtracking search, geodesic path
//! systems and the two-fan path variant.

mod geodesic;
mod menger;

pub use geodesic::{
    dense_witness, find_geodesic_ab_paths, geodesic_descent, geodesic_descent_linkage, improve_cycle_rewire,
    improve_shortcut, is_express, shortcut_witness, total_length, verify_ab_paths, Descent, ExpressMode,
    LinkageDescent, Move,
};
pub use menger::{check_fan_hypothesis, menger_variant_paths, Fans, MengerOutcome};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::search::{ensure, Budget, Search, Verdict, DEFAULT_BUDGET};

/// Vertex sequence from one end to the other.
pub type Path = Vec<Vertex>;

/// Largest order accepted by the exhaustive linkedness checks.
pub const LINKED_BOUND: usize = 8;

/// Terminal pairs plus an optional parity pattern: the 0-based indices of the
/// pairs whose path must have an odd number of edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkageSpec {
    pub pairs: Vec<(Vertex, Vertex)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Vec<usize>>,
}

impl LinkageSpec {
    pub fn new(pairs: Vec<(Vertex, Vertex)>) -> Self {
        LinkageSpec { pairs, parity: None }
    }

    pub fn with_parity(pairs: Vec<(Vertex, Vertex)>, odd: Vec<usize>) -> Result<Self> {
        let spec = LinkageSpec {
            pairs,
            parity: Some(odd),
        };
        spec.check_pattern()?;
        Ok(spec)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_degenerate(&self, i: usize) -> bool {
        self.pairs[i].0 == self.pairs[i].1
    }

    /// Required parity of path `i`: `Some(true)` for odd.
    pub fn wants_odd(&self, i: usize) -> Option<bool> {
        self.parity.as_ref().map(|odd| odd.contains(&i))
    }

    fn check_pattern(&self) -> Result<()> {
        if let Some(odd) = &self.parity {
            for &i in odd {
                if i >= self.pairs.len() {
                    return Err(Error::InvalidParameter(format!("parity index {i} out of range")));
                }
                if self.is_degenerate(i) {
                    return Err(Error::InvalidParameter(format!(
                        "parity index {i} names a pair with equal ends"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        for &(s, t) in &self.pairs {
            g.check_vertex(s)?;
            g.check_vertex(t)?;
        }
        self.check_pattern()
    }

    /// Every terminal occurrence, sources then sinks.
    pub fn terminals(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.pairs.iter().flat_map(|&(s, t)| [s, t])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Linkage {
    pub paths: Vec<Path>,
}

impl Linkage {
    pub fn total_length(&self) -> usize {
        total_length(&self.paths)
    }

    pub fn vertices(&self) -> std::collections::BTreeSet<Vertex> {
        self.paths.iter().flatten().copied().collect()
    }
}

/// Checks that `p` is a path of `g`: non-empty, no repeated vertex, and
/// consecutive vertices adjacent.
pub(crate) fn check_path(g: &Graph, p: &[Vertex]) -> std::result::Result<(), String> {
    if p.is_empty() {
        return Err("empty path".into());
    }
    let mut seen = vec![false; g.n()];
    for &v in p {
        if v >= g.n() {
            return Err(format!("vertex {v} out of range"));
        }
        if seen[v] {
            return Err(format!("vertex {v} repeated"));
        }
        seen[v] = true;
    }
    for w in p.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(format!("{} and {} are not adjacent", w[0], w[1]));
        }
    }
    Ok(())
}

fn interior(p: &[Vertex]) -> &[Vertex] {
    if p.len() <= 2 {
        &[]
    } else {
        &p[1..p.len() - 1]
    }
}

/// Checks every linkage clause in order, reporting the first violated one.
pub fn verify_linkage(g: &Graph, spec: &LinkageSpec, l: &Linkage) -> Result<Verdict> {
    spec.validate(g)?;
    Ok(verify_linkage_unchecked(g, spec, l))
}

fn verify_linkage_unchecked(g: &Graph, spec: &LinkageSpec, l: &Linkage) -> Verdict {
    ensure!(
        l.paths.len() == spec.len(),
        "path count",
        "{} paths for {} pairs",
        l.paths.len(),
        spec.len()
    );
    for (i, p) in l.paths.iter().enumerate() {
        if let Err(why) = check_path(g, p) {
            return Verdict::fail("not a path", format!("path {i}: {why}"));
        }
        let (s, t) = spec.pairs[i];
        let (a, b) = (p[0], p[p.len() - 1]);
        ensure!(
            (a, b) == (s, t) || (a, b) == (t, s),
            "path ends",
            "path {i} joins {a} and {b}, expected {s} and {t}"
        );
    }
    let mut owner = vec![usize::MAX; g.n()];
    for (i, p) in l.paths.iter().enumerate() {
        for &v in interior(p) {
            owner[v] = i;
        }
    }
    for (j, p) in l.paths.iter().enumerate() {
        for &v in p {
            let i = owner[v];
            ensure!(
                i == usize::MAX || i == j,
                "interior overlap",
                "vertex {v} is inside path {i} and on path {j}"
            );
        }
    }
    for (i, p) in l.paths.iter().enumerate() {
        if let Some(odd) = spec.wants_odd(i) {
            let edges = p.len() - 1;
            ensure!(
                (edges % 2 == 1) == odd,
                "parity",
                "path {i} has {edges} edges but should be {}",
                if odd { "odd" } else { "even" }
            );
        }
    }
    Verdict::Valid
}

/// Whether a path with `edges` edges meets the required parity.
fn parity_ok(odd: Option<bool>, edges: usize) -> bool {
    odd.map_or(true, |o| o == (edges % 2 == 1))
}

/// Called on every complete path system; returning `true` stops the search.
pub(crate) type Visit<'v> = dyn FnMut(&[Path], &mut Budget) -> bool + 'v;

struct Router<'a, 'v> {
    g: &'a Graph,
    spec: &'a LinkageSpec,
    /// Non-degenerate pair indices in routing order.
    order: Vec<usize>,
    /// Vertices no interior may use: every terminal plus routed interiors.
    blocked: Vec<bool>,
    paths: Vec<Path>,
    budget: &'a mut Budget,
    visit: &'a mut Visit<'v>,
}

impl Router<'_, '_> {
    /// BFS layers from `t` through unblocked vertices; `t` itself is 0.
    fn distances_to(&self, t: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.g.n()];
        dist[t] = 0;
        let mut queue = VecDeque::from([t]);
        while let Some(u) = queue.pop_front() {
            for &w in self.g.neighbors(u) {
                if dist[w] == usize::MAX && !self.blocked[w] {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Whether `s` can still reach `t` with the right parity, as a walk in
    /// the unblocked graph. Necessary for a path, cheap to test.
    fn reachable(&self, s: Vertex, t: Vertex, odd: Option<bool>) -> bool {
        let n = self.g.n();
        let mut seen = vec![[false; 2]; n];
        seen[s][0] = true;
        let mut queue = VecDeque::from([(s, 0usize)]);
        while let Some((u, p)) = queue.pop_front() {
            for &w in self.g.neighbors(u) {
                let q = p ^ 1;
                if w == t {
                    if parity_ok(odd, q) {
                        return true;
                    }
                    continue;
                }
                if !self.blocked[w] && !seen[w][q] {
                    seen[w][q] = true;
                    queue.push_back((w, q));
                }
            }
        }
        false
    }

    fn later_pairs_feasible(&self, k: usize) -> bool {
        self.order[k..].iter().all(|&i| {
            let (s, t) = self.spec.pairs[i];
            self.reachable(s, t, self.spec.wants_odd(i))
        })
    }

    fn route(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return (self.visit)(&self.paths, self.budget);
        }
        if !self.later_pairs_feasible(k) {
            return false;
        }
        let i = self.order[k];
        let s = self.spec.pairs[i].0;
        let mut path = vec![s];
        self.extend(k, &mut path)
    }

    fn extend(&mut self, k: usize, path: &mut Path) -> bool {
        if !self.budget.tick() {
            return false;
        }
        let i = self.order[k];
        let (_, t) = self.spec.pairs[i];
        let odd = self.spec.wants_odd(i);
        let u = *path.last().expect("paths start at their source");
        let rest = odd.map(|o| o ^ (path.len() % 2 == 0));
        if !self.reachable(u, t, rest) {
            return false;
        }
        if self.g.has_edge(u, t) && parity_ok(odd, path.len()) {
            path.push(t);
            self.paths[i] = path.clone();
            if self.route(k + 1) {
                return true;
            }
            path.pop();
            if self.budget.tripped() {
                return false;
            }
        }
        let dist = self.distances_to(t);
        let mut next: Vec<Vertex> = self
            .g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| !self.blocked[w] && dist[w] != usize::MAX)
            .collect();
        next.sort_by_key(|&w| (dist[w], w));
        for w in next {
            self.blocked[w] = true;
            path.push(w);
            let done = self.extend(k, path);
            path.pop();
            self.blocked[w] = false;
            if done {
                return true;
            }
            if self.budget.tripped() {
                return false;
            }
        }
        false
    }
}

/// Enumerates linkages for `spec` whose interiors also avoid `avoid`,
/// shortest-first at each branching, until `visit` returns `true`.
pub(crate) fn for_each_linkage(
    g: &Graph,
    spec: &LinkageSpec,
    avoid: &[Vertex],
    budget: &mut Budget,
    visit: &mut Visit<'_>,
) -> bool {
    let mut blocked = vec![false; g.n()];
    for v in spec.terminals().chain(avoid.iter().copied()) {
        blocked[v] = true;
    }
    let mut paths: Vec<Path> = spec.pairs.iter().map(|&(s, _)| vec![s]).collect();
    let order: Vec<usize> = (0..spec.len()).filter(|&i| !spec.is_degenerate(i)).collect();
    for &i in &order {
        paths[i].clear();
    }
    let mut router = Router {
        g,
        spec,
        order,
        blocked,
        paths,
        budget,
        visit,
    };
    router.route(0)
}

/// Backtracking over path systems, one pair at a time, pruned by a
/// parity-aware reachability test for every unrouted pair.
pub fn find_linkage(g: &Graph, spec: &LinkageSpec, budget: u64) -> Result<Search<Linkage>> {
    spec.validate(g)?;
    let mut budget = Budget::new(budget)?;
    let mut hit = None;
    for_each_linkage(g, spec, &[], &mut budget, &mut |paths, _| {
        hit = Some(Linkage { paths: paths.to_vec() });
        true
    });
    if let Some(l) = &hit {
        debug_assert!(verify_linkage_unchecked(g, spec, l).is_valid());
    }
    Ok(budget.conclude(hit))
}

/// Every multiset of `k` unordered terminal pairs, each listed once. Order of
/// pairs and orientation within a pair do not affect linkability.
pub fn canonical_pair_lists(n: usize, k: usize) -> Vec<Vec<(Vertex, Vertex)>> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|s| (s..n).map(move |t| (s, t))).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    if k == 0 {
        return vec![Vec::new()];
    }
    if pairs.is_empty() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| pairs[i]).collect());
        // Next non-decreasing index vector.
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == pairs.len() - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return out;
        }
        idx[pos - 1] += 1;
        let base = idx[pos - 1];
        for slot in &mut idx[pos..] {
            *slot = base;
        }
    }
}

/// First terminal specification (and parity pattern, when `parity` is set)
/// that has no linkage, or `None` when `g` is k-(parity-)linked.
pub fn linkedness_counterexample(g: &Graph, k: usize, parity: bool) -> Result<Option<LinkageSpec>> {
    if g.n() > LINKED_BOUND {
        return Err(Error::ExceedsExactBound {
            n: g.n(),
            bound: LINKED_BOUND,
        });
    }
    if k == 0 || k > g.n() {
        return Err(Error::InvalidParameter(format!(
            "k = {k} outside 1..={} for linkedness",
            g.n()
        )));
    }
    for pairs in canonical_pair_lists(g.n(), k) {
        let free: Vec<usize> = (0..k).filter(|&i| pairs[i].0 != pairs[i].1).collect();
        let patterns: Vec<Option<Vec<usize>>> = if parity {
            (0u32..1 << free.len())
                .map(|mask| {
                    Some(
                        free.iter()
                            .enumerate()
                            .filter(|&(b, _)| mask >> b & 1 == 1)
                            .map(|(_, &i)| i)
                            .collect(),
                    )
                })
                .collect()
        } else {
            vec![None]
        };
        for pattern in patterns {
            let spec = LinkageSpec {
                pairs: pairs.clone(),
                parity: pattern,
            };
            match find_linkage(g, &spec, DEFAULT_BUDGET)? {
                Search::Found(_) => {}
                Search::ProvenAbsent => return Ok(Some(spec)),
                Search::Exhausted => {
                    return Err(Error::Domain(format!(
                        "linkage search exhausted its budget on {:?}",
                        spec.pairs
                    )))
                }
            }
        }
    }
    Ok(None)
}

/// Exhaustive k-linkedness. A value of `k` outside `1..=v(g)` is not linked.
pub fn is_k_linked(g: &Graph, k: usize) -> Result<bool> {
    if k == 0 || k > g.n() {
        return Ok(false);
    }
    Ok(linkedness_counterexample(g, k, false)?.is_none())
}

/// Exhaustive k-parity-linkedness.
pub fn is_k_parity_linked(g: &Graph, k: usize) -> Result<bool> {
    if k == 0 || k > g.n() {
        return Ok(false);
    }
    Ok(linkedness_counterexample(g, k, true)?.is_none())
}
