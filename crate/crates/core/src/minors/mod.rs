//! Minor certificates: branch-set models, tree expansions with rooted,
//! bipartite and odd decorations, and `K_{s,t}` models.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::search::{ensure, Verdict};

mod search;

pub use search::{density_extract_minor, find_biclique_minor, find_clique_minor};

/// Target graph of a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Pattern {
    Complete {
        t: usize,
    },
    /// Parts `0..s` and `s..s+t`.
    CompleteBipartite {
        s: usize,
        t: usize,
    },
    Graph {
        graph: Graph,
    },
}

impl Pattern {
    pub fn graph(&self) -> Graph {
        match self {
            Pattern::Complete { t } => crate::generate::complete(*t),
            Pattern::CompleteBipartite { s, t } => crate::generate::complete_bipartite(*s, *t),
            Pattern::Graph { graph } => graph.clone(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Pattern::Complete { t } => *t,
            Pattern::CompleteBipartite { s, t } => s + t,
            Pattern::Graph { graph } => graph.n(),
        }
    }
}

/// Branch sets `X_1..X_h` and a bijection from pattern vertices onto them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Model {
    pub pattern: Pattern,
    pub branch_sets: Vec<Vec<Vertex>>,
    /// `assignment[u]` is the index of the branch set of pattern vertex `u`.
    pub assignment: Vec<usize>,
}

impl Model {
    /// Pattern vertex `i` goes to branch set `i`.
    pub fn new(pattern: Pattern, branch_sets: Vec<Vec<Vertex>>) -> Self {
        let assignment = (0..branch_sets.len()).collect();
        Model {
            pattern,
            branch_sets,
            assignment,
        }
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.branch_sets.iter().flatten().copied().collect()
    }

    /// Spanning BFS trees inside each branch set and the smallest available
    /// edge between the sets of every pattern edge. The model must verify.
    pub fn to_expansion(&self, g: &Graph) -> Expansion {
        let h = self.pattern.graph();
        let trees = self
            .assignment
            .iter()
            .map(|&i| spanning_tree(g, &self.branch_sets[i]))
            .collect();
        let branch_edges = h
            .edges()
            .filter_map(|(u, v)| {
                let (x, y) = (
                    &self.branch_sets[self.assignment[u]],
                    &self.branch_sets[self.assignment[v]],
                );
                edge_between(g, x, y).map(|edge| BranchEdge {
                    pattern_edge: (u, v),
                    edge,
                })
            })
            .collect();
        Expansion {
            pattern: self.pattern.clone(),
            trees,
            branch_edges,
            roots: None,
            bipartite: None,
            odd: None,
        }
    }
}

fn spanning_tree(g: &Graph, set: &[Vertex]) -> Tree {
    let inside: BTreeSet<Vertex> = set.iter().copied().collect();
    let mut vertices: Vec<Vertex> = inside.iter().copied().collect();
    let mut edges = Vec::new();
    if let Some(&start) = vertices.first() {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if inside.contains(&w) && seen.insert(w) {
                    edges.push((u.min(w), u.max(w)));
                    queue.push_back(w);
                }
            }
        }
    }
    vertices.sort_unstable();
    Tree { vertices, edges }
}

/// Lexicographically smallest edge `(x, y)` with `x ∈ a`, `y ∈ b`.
pub(crate) fn edge_between(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Option<Edge> {
    let bs: BTreeSet<Vertex> = b.iter().copied().collect();
    let mut a_sorted = a.to_vec();
    a_sorted.sort_unstable();
    a_sorted
        .into_iter()
        .find_map(|x| g.neighbors(x).iter().find(|y| bs.contains(y)).map(|&y| (x, y)))
}

fn sets_adjacent(g: &Graph, a: &[Vertex], b: &[Vertex]) -> bool {
    edge_between(g, a, b).is_some()
}

/// Checks range first (an error), then pairwise disjointness, returning the
/// first repeated vertex.
fn first_overlap<'a>(sets: impl IntoIterator<Item = &'a [Vertex]>) -> Option<Vertex> {
    let mut seen = BTreeSet::new();
    for set in sets {
        let mut local = BTreeSet::new();
        for &v in set {
            if local.insert(v) && !seen.insert(v) {
                return Some(v);
            }
        }
    }
    None
}

/// First violated clause of the model conditions, or `Valid`.
pub fn verify_model(g: &Graph, m: &Model) -> Result<Verdict> {
    for set in &m.branch_sets {
        g.check_vertices(set)?;
    }
    Ok(model_verdict(g, m))
}

fn model_verdict(g: &Graph, m: &Model) -> Verdict {
    let h = m.pattern.graph();
    ensure!(
        m.branch_sets.len() == h.n() && m.assignment.len() == h.n(),
        "branch set count",
        "pattern has {} vertices, model has {} sets and {} assignments",
        h.n(),
        m.branch_sets.len(),
        m.assignment.len()
    );
    let targets: BTreeSet<usize> = m.assignment.iter().copied().collect();
    ensure!(
        targets.len() == h.n() && targets.iter().all(|&i| i < h.n()),
        "assignment not a bijection",
        "assignment {:?}",
        m.assignment
    );
    for (i, set) in m.branch_sets.iter().enumerate() {
        ensure!(!set.is_empty(), "branch set empty", "set {i}");
    }
    if let Some(v) = first_overlap(m.branch_sets.iter().map(Vec::as_slice)) {
        return Verdict::fail("branch sets not disjoint", format!("vertex {v} repeated"));
    }
    for (i, set) in m.branch_sets.iter().enumerate() {
        ensure!(
            g.is_connected_within(set),
            "branch set not connected",
            "set {i} = {set:?}"
        );
    }
    for (u, v) in h.edges() {
        let (x, y) = (&m.branch_sets[m.assignment[u]], &m.branch_sets[m.assignment[v]]);
        ensure!(
            sets_adjacent(g, x, y),
            "missing adjacency",
            "branch sets of pattern edge {u}-{v} are not adjacent"
        );
    }
    Verdict::Valid
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tree {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl Tree {
    pub fn singleton(v: Vertex) -> Self {
        Tree {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }
}

/// The edge of `G` realising one edge of the pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchEdge {
    pub pattern_edge: Edge,
    pub edge: Edge,
}

/// Colour (0 or 1) per vertex of the union of the expansion.
pub type Colouring = BTreeMap<Vertex, u8>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expansion {
    pub pattern: Pattern,
    /// `trees[u]` is the node tree of pattern vertex `u`.
    pub trees: Vec<Tree>,
    pub branch_edges: Vec<BranchEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<Vertex>>,
    /// Proper 2-colouring of the union.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bipartite: Option<Colouring>,
    /// Tree edges bichromatic, branch edges monochromatic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub odd: Option<Colouring>,
}

impl Expansion {
    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.trees.iter().flat_map(|t| t.vertices.iter().copied()).collect()
    }

    /// Edges of the union: every tree edge followed by every branch edge.
    pub fn union_edges(&self) -> Vec<Edge> {
        self.trees
            .iter()
            .flat_map(|t| t.edges.iter().copied())
            .chain(self.branch_edges.iter().map(|b| b.edge))
            .collect()
    }

    /// Branch edge of pattern edge `{u, v}`, in either orientation.
    pub fn branch_edge(&self, u: Vertex, v: Vertex) -> Option<&BranchEdge> {
        self.branch_edges
            .iter()
            .find(|b| b.pattern_edge == (u, v) || b.pattern_edge == (v, u))
    }
}

fn check_expansion_shape(g: &Graph, e: &Expansion, h: &Graph) -> Result<()> {
    let bad = |msg: String| Err(Error::MalformedCertificate(msg));
    if e.trees.len() != h.n() {
        return bad(format!("{} trees for a pattern on {} vertices", e.trees.len(), h.n()));
    }
    for (i, tree) in e.trees.iter().enumerate() {
        g.check_vertices(&tree.vertices)?;
        let own: BTreeSet<Vertex> = tree.vertices.iter().copied().collect();
        if own.len() != tree.vertices.len() {
            return bad(format!("tree {i} lists a vertex twice"));
        }
        for &(x, y) in &tree.edges {
            if !own.contains(&x) || !own.contains(&y) {
                return bad(format!("tree {i} edge {x}-{y} leaves its vertex list"));
            }
        }
    }
    let mut seen = BTreeSet::new();
    for b in &e.branch_edges {
        let (u, v) = b.pattern_edge;
        if !h.has_edge(u, v) {
            return bad(format!("{u}-{v} is not a pattern edge"));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return bad(format!("pattern edge {u}-{v} has two branch edges"));
        }
        g.check_vertices(&[b.edge.0, b.edge.1])?;
    }
    for colouring in [&e.bipartite, &e.odd].into_iter().flatten() {
        for (&v, &c) in colouring {
            g.check_vertex(v)?;
            if c > 1 {
                return bad(format!("colour {c} at vertex {v} is not 0 or 1"));
            }
        }
    }
    if let Some(roots) = &e.roots {
        g.check_vertices(roots)?;
    }
    Ok(())
}

/// First violated clause of the expansion conditions and active flags.
pub fn verify_expansion(g: &Graph, e: &Expansion) -> Result<Verdict> {
    let h = e.pattern.graph();
    check_expansion_shape(g, e, &h)?;
    Ok(expansion_verdict(g, e, &h))
}

fn expansion_verdict(g: &Graph, e: &Expansion, h: &Graph) -> Verdict {
    for (i, tree) in e.trees.iter().enumerate() {
        for &(x, y) in &tree.edges {
            ensure!(g.has_edge(x, y), "tree edge not in graph", "tree {i} edge {x}-{y}");
        }
        let spanned = Graph::from_edges(g.n(), tree.edges.iter().copied());
        let connected = spanned.is_ok_and(|s| s.is_connected_within(&tree.vertices));
        ensure!(
            !tree.vertices.is_empty() && tree.edges.len() + 1 == tree.vertices.len() && connected,
            "not a tree",
            "tree {i}"
        );
    }
    if let Some(v) = first_overlap(e.trees.iter().map(|t| t.vertices.as_slice())) {
        return Verdict::fail("trees not disjoint", format!("vertex {v} repeated"));
    }
    for (u, v) in h.edges() {
        let Some(b) = e.branch_edge(u, v) else {
            return Verdict::fail("branch edge missing", format!("pattern edge {u}-{v}"));
        };
        let (x, y) = b.edge;
        ensure!(g.has_edge(x, y), "branch edge not in graph", "{x}-{y}");
        let (pu, pv) = b.pattern_edge;
        let (tu, tv) = (&e.trees[pu].vertices, &e.trees[pv].vertices);
        ensure!(
            (tu.contains(&x) && tv.contains(&y)) || (tu.contains(&y) && tv.contains(&x)),
            "branch edge ends",
            "{x}-{y} does not join the trees of {pu} and {pv}"
        );
    }
    if let Some(roots) = &e.roots {
        let root_set: BTreeSet<Vertex> = roots.iter().copied().collect();
        for (i, tree) in e.trees.iter().enumerate() {
            let hits = tree.vertices.iter().filter(|v| root_set.contains(v)).count();
            ensure!(hits == 1, "root multiplicity", "tree {i} meets the roots {hits} times");
        }
        ensure!(
            roots.len() == h.n() && root_set.len() == roots.len(),
            "root count",
            "{} roots for {} pattern vertices",
            roots.len(),
            h.n()
        );
    }
    let tree_edges: Vec<Edge> = e.trees.iter().flat_map(|t| t.edges.iter().copied()).collect();
    let branch: Vec<Edge> = e.branch_edges.iter().map(|b| b.edge).collect();
    if let Some(c) = &e.bipartite {
        for (x, y) in tree_edges.iter().chain(&branch) {
            let (cx, cy) = (c.get(x), c.get(y));
            ensure!(
                cx.is_some() && cy.is_some() && cx != cy,
                "bipartite coloring",
                "edge {x}-{y} is not properly coloured"
            );
        }
    }
    if let Some(c) = &e.odd {
        for v in e.vertices() {
            ensure!(c.contains_key(&v), "odd coloring", "vertex {v} uncoloured");
        }
        for (x, y) in &tree_edges {
            ensure!(c[x] != c[y], "odd coloring", "tree edge {x}-{y} is monochromatic");
        }
        for (x, y) in &branch {
            ensure!(c[x] == c[y], "odd coloring", "branch edge {x}-{y} is bichromatic");
        }
    }
    Verdict::Valid
}

/// A colouring satisfying the odd-minor condition for the trees and branch
/// edges of `e`, if one exists. Each tree is 2-coloured, then the per-tree
/// flips are solved as a parity system over the branch edges.
pub fn odd_colouring(e: &Expansion) -> Option<Colouring> {
    let mut base = Colouring::new();
    let mut owner = BTreeMap::new();
    for (i, tree) in e.trees.iter().enumerate() {
        let local = tree_colouring(tree)?;
        for (v, c) in local {
            base.insert(v, c);
            owner.insert(v, i);
        }
    }
    // flip[i] xor flip[j] = base[x] xor base[y] for each branch edge xy.
    let k = e.trees.len();
    let mut constraints = vec![Vec::new(); k];
    for b in &e.branch_edges {
        let (x, y) = b.edge;
        let (i, j) = (*owner.get(&x)?, *owner.get(&y)?);
        let parity = base[&x] ^ base[&y];
        if i == j {
            if parity != 0 {
                return None;
            }
            continue;
        }
        constraints[i].push((j, parity));
        constraints[j].push((i, parity));
    }
    let mut flip: Vec<Option<u8>> = vec![None; k];
    for s in 0..k {
        if flip[s].is_some() {
            continue;
        }
        flip[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            let fi = flip[i]?;
            for &(j, p) in &constraints[i] {
                match flip[j] {
                    None => {
                        flip[j] = Some(fi ^ p);
                        queue.push_back(j);
                    }
                    Some(fj) if fj != fi ^ p => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(
        base.into_iter()
            .map(|(v, c)| (v, c ^ flip[owner[&v]].unwrap_or(0)))
            .collect(),
    )
}

fn tree_colouring(tree: &Tree) -> Option<Colouring> {
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &(x, y) in &tree.edges {
        adj.entry(x).or_default().push(y);
        adj.entry(y).or_default().push(x);
    }
    let mut colour = Colouring::new();
    for &s in &tree.vertices {
        if colour.contains_key(&s) {
            continue;
        }
        colour.insert(s, 0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let cu = colour[&u];
            for &w in adj.get(&u).into_iter().flatten() {
                match colour.get(&w) {
                    None => {
                        colour.insert(w, 1 - cu);
                        queue.push_back(w);
                    }
                    Some(&cw) if cw == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(colour)
}

/// Proper 2-colouring of the union of `e`, if it is bipartite.
pub fn bipartite_colouring(e: &Expansion) -> Option<Colouring> {
    let verts: Vec<Vertex> = e.vertices().into_iter().collect();
    let index: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges = e
        .union_edges()
        .into_iter()
        .filter_map(|(x, y)| Some((*index.get(&x)?, *index.get(&y)?)));
    let local = Graph::from_edges(verts.len(), edges).ok()?;
    let side = local.two_colouring()?;
    Some(verts.iter().enumerate().map(|(i, &v)| (v, side[i] as u8)).collect())
}

/// `A_1..A_s` and `B_1..B_t`, pairwise disjoint and connected, with every
/// `A_i` adjacent to every `B_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KstModel {
    pub a_sets: Vec<Vec<Vertex>>,
    pub b_sets: Vec<Vec<Vertex>>,
}

impl KstModel {
    /// The same certificate as a branch-set model of `K_{s,t}`.
    pub fn to_model(&self) -> Model {
        Model::new(
            Pattern::CompleteBipartite {
                s: self.a_sets.len(),
                t: self.b_sets.len(),
            },
            self.a_sets.iter().chain(&self.b_sets).cloned().collect(),
        )
    }
}

pub fn verify_kst_model(g: &Graph, m: &KstModel) -> Result<Verdict> {
    for set in m.a_sets.iter().chain(&m.b_sets) {
        g.check_vertices(set)?;
    }
    Ok(kst_verdict(g, m))
}

fn kst_verdict(g: &Graph, m: &KstModel) -> Verdict {
    let all = || m.a_sets.iter().chain(&m.b_sets);
    for set in all() {
        ensure!(!set.is_empty(), "branch set empty", "{set:?}");
    }
    if let Some(v) = first_overlap(all().map(Vec::as_slice)) {
        return Verdict::fail("branch sets not disjoint", format!("vertex {v} repeated"));
    }
    for set in all() {
        ensure!(g.is_connected_within(set), "branch set not connected", "{set:?}");
    }
    for (i, a) in m.a_sets.iter().enumerate() {
        for (j, b) in m.b_sets.iter().enumerate() {
            ensure!(sets_adjacent(g, a, b), "missing adjacency", "A_{i} and B_{j}");
        }
    }
    Verdict::Valid
}

/// `h` avoids every `A_i` and meets every `B_j` exactly once.
pub fn check_b_tangent(m: &KstModel, h: &[Vertex]) -> bool {
    let hs: BTreeSet<Vertex> = h.iter().copied().collect();
    m.a_sets.iter().all(|a| a.iter().all(|v| !hs.contains(v)))
        && m.b_sets.iter().all(|b| {
            b.iter()
                .collect::<BTreeSet<_>>()
                .iter()
                .filter(|v| hs.contains(v))
                .count()
                == 1
        })
}

/// Any minor certificate, tagged for JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
/// Adjacent tagging keeps vertex-keyed maps readable: internally tagged
/// content is buffered, and buffered map keys stay strings.
#[serde(tag = "type", content = "data", rename_all = "kebab-case")]
pub enum Certificate {
    Model(Model),
    Expansion(Expansion),
    Biclique(KstModel),
}

pub fn verify_certificate(g: &Graph, c: &Certificate) -> Result<Verdict> {
    match c {
        Certificate::Model(m) => verify_model(g, m),
        Certificate::Expansion(e) => verify_expansion(g, e),
        Certificate::Biclique(m) => verify_kst_model(g, m),
    }
}
