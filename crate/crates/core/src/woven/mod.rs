//! Rooted clique models that coexist with linkages: exhaustive certification
//! on tiny graphs, and rerouting a linkage through a woven subgraph.

mod compose;

pub use compose::{
    compose_through_parity_woven, compose_through_woven, BruteForceOracle, CliqueOracle, Composition, WovenOracle,
};

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::linkage::{canonical_pair_lists, for_each_linkage, verify_linkage, Linkage, LinkageSpec, Path};
use crate::minors::{verify_expansion, verify_model, BranchEdge, Colouring, Expansion, Model, Pattern, Tree};
use crate::search::{ensure, Budget, Search, Verdict};

/// Largest order accepted by [`is_woven`] and [`is_parity_woven`].
pub const WOVEN_BOUND: usize = 7;

/// Roots `r_1..r_a` and terminal pairs. In the parity case `root_classes`
/// lists the root indices that must fall in colour class A (colour 0), and
/// `odd` the pairs whose path must have odd length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WovenQuery {
    pub roots: Vec<Vertex>,
    pub pairs: Vec<(Vertex, Vertex)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_classes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub odd: Option<Vec<usize>>,
}

impl WovenQuery {
    pub fn new(roots: Vec<Vertex>, pairs: Vec<(Vertex, Vertex)>) -> Self {
        WovenQuery {
            roots,
            pairs,
            root_classes: None,
            odd: None,
        }
    }

    pub fn with_parity(
        roots: Vec<Vertex>,
        pairs: Vec<(Vertex, Vertex)>,
        root_classes: Vec<usize>,
        odd: Vec<usize>,
    ) -> Self {
        WovenQuery {
            roots,
            pairs,
            root_classes: Some(root_classes),
            odd: Some(odd),
        }
    }

    pub fn is_parity(&self) -> bool {
        self.root_classes.is_some() || self.odd.is_some()
    }

    pub fn linkage_spec(&self) -> LinkageSpec {
        LinkageSpec {
            pairs: self.pairs.clone(),
            parity: self.is_parity().then(|| self.odd.clone().unwrap_or_default()),
        }
    }

    /// Whether root `j` must be coloured 0.
    fn in_class_a(&self, j: usize) -> bool {
        self.root_classes.as_ref().is_some_and(|c| c.contains(&j))
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        g.check_vertices(&self.roots)?;
        let distinct: BTreeSet<Vertex> = self.roots.iter().copied().collect();
        if distinct.len() != self.roots.len() {
            return Err(Error::InvalidParameter("roots must be distinct".into()));
        }
        if let Some(classes) = &self.root_classes {
            if let Some(&j) = classes.iter().find(|&&j| j >= self.roots.len()) {
                return Err(Error::InvalidParameter(format!("root class index {j} out of range")));
            }
        }
        self.linkage_spec().validate(g)
    }

    /// Vertices the model and the linkage must share: roots that are terminals.
    pub fn shared(&self) -> BTreeSet<Vertex> {
        let terms: BTreeSet<Vertex> = self.pairs.iter().flat_map(|&(s, t)| [s, t]).collect();
        self.roots.iter().copied().filter(|r| terms.contains(r)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootedMinor {
    /// Rooted `K_a` model; branch set `i` holds root `i`.
    Model(Model),
    /// Rooted bipartite `K_a` expansion with its colour classes.
    Expansion(Expansion),
}

impl RootedMinor {
    pub fn vertices(&self) -> BTreeSet<Vertex> {
        match self {
            RootedMinor::Model(m) => m.vertices(),
            RootedMinor::Expansion(e) => e.vertices(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WovenWitness {
    #[serde(flatten)]
    pub minor: RootedMinor,
    pub linkage: Linkage,
}

/// Rooted model checks shared by the plain and parity witnesses.
pub(crate) fn rooted_model_verdict(g: &Graph, m: &Model, roots: &[Vertex]) -> Result<Verdict> {
    let base = verify_model(g, m)?;
    Ok(base.and_then(|| {
        ensure!(
            m.pattern == Pattern::Complete { t: roots.len() },
            "pattern",
            "expected K_{}",
            roots.len()
        );
        let root_set: BTreeSet<Vertex> = roots.iter().copied().collect();
        for (i, set) in m.branch_sets.iter().enumerate() {
            let hits = set.iter().filter(|v| root_set.contains(v)).count();
            ensure!(
                hits == 1,
                "root multiplicity",
                "branch set {i} meets the roots {hits} times"
            );
            ensure!(
                set.contains(&roots[i]),
                "root placement",
                "branch set {i} misses root {}",
                roots[i]
            );
        }
        Verdict::Valid
    }))
}

pub(crate) fn rooted_expansion_verdict(
    g: &Graph,
    e: &Expansion,
    roots: &[Vertex],
    class_a: impl Fn(usize) -> bool,
) -> Result<Verdict> {
    let base = verify_expansion(g, e)?;
    Ok(base.and_then(|| {
        ensure!(
            e.pattern == Pattern::Complete { t: roots.len() },
            "pattern",
            "expected K_{}",
            roots.len()
        );
        ensure!(e.roots.as_deref() == Some(roots), "root count", "roots not recorded");
        let Some(c) = &e.bipartite else {
            return Verdict::fail("bipartite coloring", "no colouring supplied");
        };
        for (j, &r) in roots.iter().enumerate() {
            ensure!(
                e.trees[j].vertices.contains(&r),
                "root placement",
                "tree {j} misses root {r}"
            );
            let want = if class_a(j) { 0 } else { 1 };
            ensure!(
                c.get(&r) == Some(&want),
                "root classes",
                "root {r} should have colour {want}"
            );
        }
        Verdict::Valid
    }))
}

/// Checks a witness against its query, including the intersection equation
/// `V(M) ∩ V(P) = R ∩ (S ∪ T)`.
pub fn verify_woven_witness(g: &Graph, q: &WovenQuery, w: &WovenWitness) -> Result<Verdict> {
    q.validate(g)?;
    let minor = match (&w.minor, q.is_parity()) {
        (RootedMinor::Model(m), false) => rooted_model_verdict(g, m, &q.roots)?,
        (RootedMinor::Expansion(e), true) => rooted_expansion_verdict(g, e, &q.roots, |j| q.in_class_a(j))?,
        _ => Verdict::fail("witness kind", "parity queries need an expansion, plain ones a model"),
    };
    let link = verify_linkage(g, &q.linkage_spec(), &w.linkage)?;
    Ok(minor.and_then(|| link).and_then(|| {
        let both: BTreeSet<Vertex> = w
            .minor
            .vertices()
            .intersection(&w.linkage.vertices())
            .copied()
            .collect();
        let shared = q.shared();
        ensure!(
            both == shared,
            "intersection",
            "model and linkage share {both:?}, expected {shared:?}"
        );
        Verdict::Valid
    }))
}

/// Brute-force rooted `K_a` search inside `allowed`: every assignment of the
/// free vertices to a branch set or to none, fewest vertices used first.
struct ModelSearch<'a> {
    g: &'a Graph,
    q: &'a WovenQuery,
    free: Vec<Vertex>,
    owner: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl ModelSearch<'_> {
    fn new<'a>(g: &'a Graph, q: &'a WovenQuery, allowed: &[bool]) -> ModelSearch<'a> {
        let mut owner = vec![NONE; g.n()];
        for (i, &r) in q.roots.iter().enumerate() {
            owner[r] = i;
        }
        let free = g.vertices().filter(|&v| allowed[v] && owner[v] == NONE).collect();
        ModelSearch { g, q, free, owner }
    }

    fn sets(&self) -> Vec<Vec<Vertex>> {
        let mut sets = vec![Vec::new(); self.q.roots.len()];
        for v in self.g.vertices() {
            if self.owner[v] != NONE {
                sets[self.owner[v]].push(v);
            }
        }
        sets
    }

    fn run(&mut self, k: usize, budget: &mut Budget) -> Option<RootedMinor> {
        if !budget.tick() {
            return None;
        }
        if k == self.free.len() {
            return self.complete(budget);
        }
        let v = self.free[k];
        for choice in std::iter::once(NONE).chain(0..self.q.roots.len()) {
            self.owner[v] = choice;
            if let Some(hit) = self.run(k + 1, budget) {
                self.owner[v] = NONE;
                return Some(hit);
            }
            if budget.tripped() {
                break;
            }
        }
        self.owner[v] = NONE;
        None
    }

    fn complete(&self, budget: &mut Budget) -> Option<RootedMinor> {
        let sets = self.sets();
        if self.q.is_parity() {
            return self.colour(&sets, budget).map(RootedMinor::Expansion);
        }
        let ok = sets.iter().all(|s| self.g.is_connected_within(s))
            && (0..sets.len()).all(|i| (i + 1..sets.len()).all(|j| adjacent_sets(self.g, &sets[i], &sets[j], None)));
        ok.then(|| RootedMinor::Model(Model::new(Pattern::Complete { t: sets.len() }, sets)))
    }

    /// Searches 2-colourings of the model vertices with the roots fixed, such
    /// that every branch set is connected by bichromatic edges and every two
    /// sets are joined by one.
    fn colour(&self, sets: &[Vec<Vertex>], budget: &mut Budget) -> Option<Expansion> {
        let roots = &self.q.roots;
        let mut c: BTreeMap<Vertex, u8> = BTreeMap::new();
        for (j, &r) in roots.iter().enumerate() {
            c.insert(r, if self.q.in_class_a(j) { 0 } else { 1 });
        }
        let others: Vec<Vertex> = sets.iter().flatten().copied().filter(|v| !c.contains_key(v)).collect();
        for mask in 0u64..1 << others.len() {
            if !budget.tick() {
                return None;
            }
            for (b, &v) in others.iter().enumerate() {
                c.insert(v, (mask >> b & 1) as u8);
            }
            let ok = sets.iter().all(|s| bichromatic_tree(self.g, s, &c).is_some())
                && (0..sets.len())
                    .all(|i| (i + 1..sets.len()).all(|j| adjacent_sets(self.g, &sets[i], &sets[j], Some(&c))));
            if ok {
                return Some(build_bipartite_expansion(self.g, sets, roots, &c));
            }
        }
        None
    }
}

fn adjacent_sets(g: &Graph, a: &[Vertex], b: &[Vertex], c: Option<&Colouring>) -> bool {
    first_cross_edge(g, a, b, c).is_some()
}

/// First edge from `a` to `b`, bichromatic under `c` when given.
fn first_cross_edge(g: &Graph, a: &[Vertex], b: &[Vertex], c: Option<&Colouring>) -> Option<(Vertex, Vertex)> {
    a.iter().find_map(|&x| {
        b.iter()
            .copied()
            .find(|&y| g.has_edge(x, y) && c.map_or(true, |c| c[&x] != c[&y]))
            .map(|y| (x, y))
    })
}

/// BFS spanning tree of `set` using only bichromatic edges.
fn bichromatic_tree(g: &Graph, set: &[Vertex], c: &Colouring) -> Option<Tree> {
    let inside: BTreeSet<Vertex> = set.iter().copied().collect();
    let &start = set.first()?;
    let mut seen = BTreeSet::from([start]);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if inside.contains(&w) && c[&u] != c[&w] && seen.insert(w) {
                edges.push((u.min(w), u.max(w)));
                queue.push_back(w);
            }
        }
    }
    (seen.len() == inside.len()).then(|| Tree {
        vertices: inside.into_iter().collect(),
        edges,
    })
}

pub(crate) fn build_bipartite_expansion(g: &Graph, sets: &[Vec<Vertex>], roots: &[Vertex], c: &Colouring) -> Expansion {
    let trees: Vec<Tree> = sets
        .iter()
        .map(|s| bichromatic_tree(g, s, c).expect("sets are bichromatically connected"))
        .collect();
    let mut branch_edges = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let edge = first_cross_edge(g, &sets[i], &sets[j], Some(c)).expect("sets are joined");
            branch_edges.push(BranchEdge {
                pattern_edge: (i, j),
                edge,
            });
        }
    }
    let used: BTreeSet<Vertex> = sets.iter().flatten().copied().collect();
    Expansion {
        pattern: Pattern::Complete { t: sets.len() },
        trees,
        branch_edges,
        roots: Some(roots.to_vec()),
        bipartite: Some(
            c.iter()
                .filter(|(v, _)| used.contains(v))
                .map(|(&v, &k)| (v, k))
                .collect(),
        ),
        odd: None,
    }
}

/// Joint search: enumerate linkages whose interiors avoid the roots, and for
/// each look for a rooted model disjoint from everything on the linkage
/// except the shared roots.
pub fn answer_woven_query(g: &Graph, q: &WovenQuery, budget: u64) -> Result<Search<WovenWitness>> {
    q.validate(g)?;
    let mut budget = Budget::new(budget)?;
    Ok(solve_query(g, q, &mut budget))
}

fn solve_query(g: &Graph, q: &WovenQuery, budget: &mut Budget) -> Search<WovenWitness> {
    let spec = q.linkage_spec();
    let mut is_root = vec![false; g.n()];
    for &r in &q.roots {
        is_root[r] = true;
    }
    let mut hit = None;
    for_each_linkage(
        g,
        &spec,
        &q.roots,
        budget,
        &mut |paths: &[Path], budget: &mut Budget| {
            let mut allowed = vec![true; g.n()];
            for &v in paths.iter().flatten() {
                if !is_root[v] {
                    allowed[v] = false;
                }
            }
            let mut search = ModelSearch::new(g, q, &allowed);
            match search.run(0, budget) {
                Some(minor) => {
                    hit = Some(WovenWitness {
                        minor,
                        linkage: Linkage { paths: paths.to_vec() },
                    });
                    true
                }
                None => false,
            }
        },
    );
    if let Some(w) = &hit {
        debug_assert!(verify_woven_witness(g, q, w).is_ok_and(|v| v.is_valid()));
    }
    budget.conclude(hit)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum WovenVerdict {
    Woven,
    NotWoven {
        query: WovenQuery,
    },
    /// Some query ran out of budget and no failing query was found.
    Exhausted {
        query: WovenQuery,
    },
}

impl WovenVerdict {
    pub fn is_woven(&self) -> bool {
        matches!(self, WovenVerdict::Woven)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0u32..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|&(b, _)| mask >> b & 1 == 1)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// Every query of the definition up to reordering: root sets in increasing
/// order, pair multisets in canonical order, and in the parity case every
/// root class set and every admissible parity pattern.
pub fn all_queries(n: usize, a: usize, b: usize, parity: bool) -> Vec<WovenQuery> {
    let mut out = Vec::new();
    for roots in combinations(n, a) {
        for pairs in canonical_pair_lists(n, b) {
            if !parity {
                out.push(WovenQuery::new(roots.clone(), pairs));
                continue;
            }
            let free: Vec<usize> = (0..b).filter(|&i| pairs[i].0 != pairs[i].1).collect();
            for classes in subsets(&(0..a).collect::<Vec<_>>()) {
                for odd in subsets(&free) {
                    out.push(WovenQuery::with_parity(
                        roots.clone(),
                        pairs.clone(),
                        classes.clone(),
                        odd,
                    ));
                }
            }
        }
    }
    out
}

fn woven(g: &Graph, a: usize, b: usize, budget: u64, parity: bool) -> Result<WovenVerdict> {
    if g.n() > WOVEN_BOUND {
        return Err(Error::ExceedsExactBound {
            n: g.n(),
            bound: WOVEN_BOUND,
        });
    }
    Budget::new(budget)?;
    let queries = all_queries(g.n(), a, b, parity);
    // First failing query in enumeration order, so the verdict does not
    // depend on scheduling.
    let outcomes: Vec<Option<WovenVerdict>> = queries
        .par_iter()
        .map(|q| {
            let mut budget = Budget::new(budget).expect("budget checked above");
            match solve_query(g, q, &mut budget) {
                Search::Found(_) => None,
                Search::ProvenAbsent => Some(WovenVerdict::NotWoven { query: q.clone() }),
                Search::Exhausted => Some(WovenVerdict::Exhausted { query: q.clone() }),
            }
        })
        .collect();
    let mut exhausted = None;
    for o in outcomes.into_iter().flatten() {
        match o {
            WovenVerdict::NotWoven { .. } => return Ok(o),
            other => {
                exhausted.get_or_insert(other);
            }
        }
    }
    Ok(exhausted.unwrap_or(WovenVerdict::Woven))
}

/// `(a, b)`-wovenness by answering every query. Graphs with fewer than `a`
/// vertices have no root set and are vacuously woven.
pub fn is_woven(g: &Graph, a: usize, b: usize, budget: u64) -> Result<WovenVerdict> {
    woven(g, a, b, budget, false)
}

pub fn is_parity_woven(g: &Graph, a: usize, b: usize, budget: u64) -> Result<WovenVerdict> {
    woven(g, a, b, budget, true)
}
