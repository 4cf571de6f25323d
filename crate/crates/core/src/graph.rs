//! Immutable simple graphs on dense vertex labels `0..n`.

use std::collections::{BTreeSet, VecDeque};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, SplitLayout, INF};

pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

/// A finite simple undirected graph. Adjacency lists are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<Edge>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::from_edges(r.n, r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n(),
            edges: g.edges().collect(),
        }
    }
}

/// An induced (or otherwise derived) graph with its labels in the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    pub to_parent: Vec<Vertex>,
}

impl Subgraph {
    pub fn lift(&self, vertices: &[Vertex]) -> Vec<Vertex> {
        vertices.iter().map(|&v| self.to_parent[v]).collect()
    }
}

/// Result of contracting an edge set: the quotient graph and, for every old
/// vertex, the vertex it was merged into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub graph: Graph,
    pub map: Vec<Vertex>,
}

impl Contraction {
    /// Old vertices grouped by the new vertex they collapse onto.
    pub fn fibres(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.graph.n()];
        for (old, &new) in self.map.iter().enumerate() {
            out[new].push(old);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyOrder {
    /// Elimination order; each vertex has at most `d` neighbours after it.
    pub order: Vec<Vertex>,
    pub d: usize,
}

impl DegeneracyOrder {
    pub fn position(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph, silently merging repeated edges. Loops and
    /// out-of-range endpoints are errors.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        Self::from_edges_counting(n, edges).map(|(g, _)| g)
    }

    /// Like [`Graph::from_edges`] but also reports how many duplicates were
    /// dropped.
    pub fn from_edges_counting<I>(n: usize, edges: I) -> Result<(Self, usize)>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut dropped = 0;
        let mut m2 = 0;
        for list in &mut adj {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            dropped += before - list.len();
            m2 += list.len();
        }
        Ok((Graph { adj, m: m2 / 2 }, dropped / 2))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_null(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.m == n * n.saturating_sub(1) / 2
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn check_vertices<'a>(&self, vs: impl IntoIterator<Item = &'a Vertex>) -> Result<()> {
        vs.into_iter().try_for_each(|&v| self.check_vertex(v))
    }

    /// `e(G)/v(G)` as an exact fraction.
    pub fn density(&self) -> Result<Ratio<u64>> {
        if self.is_null() {
            return Err(Error::DensityUndefined);
        }
        Ok(Ratio::new(self.m as u64, self.n() as u64))
    }

    /// Induced subgraph on `vertices` (taken in the given order, duplicates
    /// ignored).
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Subgraph {
        let mut index = vec![usize::MAX; self.n()];
        let mut to_parent = Vec::with_capacity(vertices.len());
        for &v in vertices {
            if index[v] == usize::MAX {
                index[v] = to_parent.len();
                to_parent.push(v);
            }
        }
        let mut adj = vec![Vec::new(); to_parent.len()];
        let mut m2 = 0;
        for (i, &v) in to_parent.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX {
                    adj[i].push(index[w]);
                }
            }
            adj[i].sort_unstable();
            m2 += adj[i].len();
        }
        Subgraph {
            graph: Graph { adj, m: m2 / 2 },
            to_parent,
        }
    }

    pub fn remove_vertices(&self, removed: &[Vertex]) -> Subgraph {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            if v < self.n() {
                gone[v] = true;
            }
        }
        let keep: Vec<Vertex> = self.vertices().filter(|&v| !gone[v]).collect();
        self.induced_subgraph(&keep)
    }

    pub fn without_edges(&self, removed: &[Edge]) -> Graph {
        let drop: BTreeSet<Edge> = removed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        Graph::from_edges(self.n(), self.edges().filter(|e| !drop.contains(e))).expect("subgraph of a valid graph")
    }

    /// `G/F`. New labels follow the smallest old vertex of each fibre.
    pub fn contract_edges(&self, f: &[Edge]) -> Result<Contraction> {
        for &(u, v) in f {
            self.check_vertex(u)?;
            self.check_vertex(v)?;
            if !self.has_edge(u, v) {
                return Err(Error::NotAnEdge(u, v));
            }
        }
        let mut parent: Vec<Vertex> = self.vertices().collect();
        fn find(parent: &mut [Vertex], mut x: Vertex) -> Vertex {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v) in f {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
            }
        }
        let mut label = vec![usize::MAX; self.n()];
        let mut next = 0;
        let mut map = vec![0; self.n()];
        for v in self.vertices() {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            map[v] = label[r];
        }
        let edges = self.edges().map(|(u, v)| (map[u], map[v])).filter(|(a, b)| a != b);
        let graph = Graph::from_edges(next, edges)?;
        Ok(Contraction { graph, map })
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Whether `G[set]` is connected. The empty set counts as disconnected.
    pub fn is_connected_within(&self, set: &[Vertex]) -> bool {
        let Some(&start) = set.first() else {
            return false;
        };
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        seen[start] = true;
        let mut count = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        let distinct = inside.iter().filter(|&&b| b).count();
        count == distinct
    }

    /// Proper 2-colouring. Within each component the smallest vertex goes to
    /// the first part.
    pub fn bipartition(&self) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
        let side = self.two_colouring()?;
        let a = self.vertices().filter(|&v| !side[v]).collect();
        let b = self.vertices().filter(|&v| side[v]).collect();
        Some((a, b))
    }

    pub(crate) fn two_colouring(&self) -> Option<Vec<bool>> {
        let mut colour: Vec<Option<bool>> = vec![None; self.n()];
        for s in self.vertices() {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].expect("coloured when queued");
                for &w in &self.adj[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_colouring().is_some()
    }

    /// Iterated minimum-degree removal, ties to the smallest label.
    pub fn degeneracy(&self) -> DegeneracyOrder {
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut alive = vec![true; self.n()];
        let mut queue: BTreeSet<(usize, Vertex)> = self.vertices().map(|v| (deg[v], v)).collect();
        let mut order = Vec::with_capacity(self.n());
        let mut d = 0;
        while let Some((k, v)) = queue.pop_first() {
            d = d.max(k);
            alive[v] = false;
            order.push(v);
            for &w in &self.adj[v] {
                if alive[w] {
                    queue.remove(&(deg[w], w));
                    deg[w] -= 1;
                    queue.insert((deg[w], w));
                }
            }
        }
        DegeneracyOrder { order, d }
    }

    /// Vertices of the maximal subgraph with minimum degree at least `k`.
    pub fn core_vertices(&self, k: usize) -> Vec<Vertex> {
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut alive = vec![true; self.n()];
        let mut stack: Vec<Vertex> = self.vertices().filter(|&v| deg[v] < k).collect();
        for &v in &stack {
            alive[v] = false;
        }
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if alive[w] {
                    deg[w] -= 1;
                    if deg[w] < k {
                        alive[w] = false;
                        stack.push(w);
                    }
                }
            }
        }
        self.vertices().filter(|&v| alive[v]).collect()
    }

    /// Maximum number of internally disjoint `s`-`t` paths for non-adjacent
    /// `s != t`, capped at `limit`, together with the residual network.
    fn local_connectivity(&self, s: Vertex, t: Vertex, limit: i64) -> (i64, FlowNetwork, SplitLayout) {
        let layout = SplitLayout { n: self.n() };
        let mut net = FlowNetwork::new(layout.nodes());
        for v in self.vertices() {
            let cap = if v == s || v == t { INF } else { 1 };
            net.add_edge(layout.vin(v), layout.vout(v), cap, 0);
        }
        for (u, v) in self.edges() {
            net.add_edge(layout.vout(u), layout.vin(v), INF, 0);
            net.add_edge(layout.vout(v), layout.vin(u), INF, 0);
        }
        let flow = net.max_flow(layout.vout(s), layout.vin(t), limit);
        (flow, net, layout)
    }

    /// κ(G) together with a minimum separating set. Complete graphs have
    /// no separator and κ(K_n) = n − 1; disconnected graphs give κ = 0 with an
    /// empty separator.
    pub fn min_vertex_cut(&self) -> (usize, Option<Vec<Vertex>>) {
        let n = self.n();
        if n <= 1 {
            return (0, None);
        }
        if !self.is_connected() {
            return (0, Some(Vec::new()));
        }
        if self.is_complete() {
            return (n - 1, None);
        }
        let mut best = n - 1;
        let mut best_pair = None;
        let mut i = 0;
        while i < n && i <= best {
            for j in 0..n {
                if j == i || self.has_edge(i, j) {
                    continue;
                }
                let (flow, _, _) = self.local_connectivity(i, j, best as i64);
                if (flow as usize) < best {
                    best = flow as usize;
                    best_pair = Some((i, j));
                }
            }
            i += 1;
        }
        let (s, t) = best_pair.expect("a non-complete connected graph has a separable pair");
        let (_, net, layout) = self.local_connectivity(s, t, best as i64);
        let reach = net.reachable(layout.vout(s));
        let cut: Vec<Vertex> = self
            .vertices()
            .filter(|&v| v != s && v != t && reach[layout.vin(v)] && !reach[layout.vout(v)])
            .collect();
        (best, Some(cut))
    }

    pub fn vertex_connectivity(&self) -> usize {
        self.min_vertex_cut().0
    }

    /// Whether κ(G) ≥ k, with an early exit once a small cut is seen.
    pub fn is_k_connected(&self, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        if self.n() <= k || self.min_degree() < k {
            return false;
        }
        self.vertex_connectivity() >= k
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, empty, path, petersen, petersen_spokes};
    use proptest::prelude::*;

    #[test]
    fn density_examples() {
        assert_eq!(complete(5).density().unwrap(), Ratio::from_integer(2));
        assert_eq!(complete(2).density().unwrap(), Ratio::new(1, 2));
        assert_eq!(cycle(4).density().unwrap(), Ratio::from_integer(1));
        assert_eq!(Graph::new(0).density(), Err(Error::DensityUndefined));
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(path(6).degeneracy().d, 1);
        assert_eq!(complete(5).degeneracy().d, 4);
        assert_eq!(petersen().degeneracy().d, 3);
        assert_eq!(Graph::new(0).degeneracy().d, 0);
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(complete(6).vertex_connectivity(), 5);
        assert_eq!(path(4).vertex_connectivity(), 1);
        assert_eq!(petersen().vertex_connectivity(), 3);
        assert_eq!(empty(3).vertex_connectivity(), 0);
        assert_eq!(Graph::new(1).vertex_connectivity(), 0);
        let (k, cut) = path(4).min_vertex_cut();
        assert_eq!(k, 1);
        let cut = cut.unwrap();
        assert!(!path(4).remove_vertices(&cut).graph.is_connected());
    }

    #[test]
    fn contraction_examples() {
        let c = cycle(4).contract_edges(&[(0, 1)]).unwrap();
        assert_eq!((c.graph.n(), c.graph.m()), (3, 3));
        let k5 = petersen().contract_edges(&petersen_spokes()).unwrap();
        assert!(k5.graph.is_complete());
        assert_eq!(k5.graph.n(), 5);
        let same = petersen().contract_edges(&[]).unwrap();
        assert_eq!(same.graph, petersen());
        assert_eq!(cycle(4).contract_edges(&[(0, 2)]), Err(Error::NotAnEdge(0, 2)));
    }

    #[test]
    fn bipartition_examples() {
        let (a, b) = cycle(6).bipartition().unwrap();
        assert_eq!((a.len(), b.len()), (3, 3));
        assert!(cycle(5).bipartition().is_none());
        assert_eq!(empty(4).bipartition(), Some((vec![0, 1, 2, 3], vec![])));
    }

    #[test]
    fn serde_roundtrip() {
        let g = petersen();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<Graph>(&text).unwrap(), g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn contracting_one_edge_bookkeeping(g in arb_graph(9), pick in any::<prop::sample::Index>()) {
            let edges: Vec<Edge> = g.edges().collect();
            prop_assume!(!edges.is_empty());
            let (u, v) = edges[pick.index(edges.len())];
            let common = g.neighbors(u).iter().filter(|w| g.has_edge(**w, v)).count();
            let c = g.contract_edges(&[(u, v)]).unwrap();
            prop_assert_eq!(c.graph.n(), g.n() - 1);
            prop_assert_eq!(c.graph.m(), g.m() - 1 - common);
            prop_assert_eq!(
                c.graph.density().unwrap(),
                Ratio::new((g.m() - 1 - common) as u64, (g.n() - 1) as u64)
            );
        }

        #[test]
        fn degeneracy_order_witnesses(g in arb_graph(10)) {
            let order = g.degeneracy();
            let pos = order.position();
            for v in g.vertices() {
                let later = g.neighbors(v).iter().filter(|&&w| pos[w] > pos[v]).count();
                prop_assert!(later <= order.d);
            }
            // Greedy along the reverse order uses at most d + 1 colours.
            let mut colour = vec![usize::MAX; g.n()];
            for &v in order.order.iter().rev() {
                let used: BTreeSet<usize> = g.neighbors(v).iter().map(|&w| colour[w]).collect();
                colour[v] = (0..).find(|c| !used.contains(c)).unwrap();
            }
            prop_assert!(colour.iter().all(|&c| c <= order.d));
            // d is minimal: the d-core is non-empty.
            prop_assert!(!g.core_vertices(order.d).is_empty());
        }

        #[test]
        fn connectivity_properties(g in arb_graph(9)) {
            let (k, cut) = g.min_vertex_cut();
            if g.n() >= 2 {
                prop_assert!(k <= g.min_degree());
            }
            if let Some(cut) = cut {
                prop_assert_eq!(cut.len(), k);
                let rest = g.remove_vertices(&cut).graph;
                prop_assert!(!rest.is_connected() || rest.n() <= 1);
            }
            // Brute force: smallest set whose removal disconnects or leaves <= 1 vertex.
            let n = g.n();
            let brute = (0u32..1 << n)
                .filter(|mask| {
                    let removed: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                    let rest = g.remove_vertices(&removed).graph;
                    rest.n() <= 1 || !rest.is_connected()
                })
                .map(|mask| mask.count_ones() as usize)
                .min()
                .unwrap();
            let expect = if n >= 2 && g.is_complete() { n - 1 } else { brute.min(n.saturating_sub(1)) };
            prop_assert_eq!(k, if n <= 1 { 0 } else { expect });
        }
    }
}
