//! Unit-capacity flow machinery on split-vertex networks.
//!
//! Everything here is deterministic: edges are scanned in insertion order and
//! shortest augmenting paths are chosen by Bellman-Ford with a fixed relaxation
//! order, so identical inputs always give identical path systems.

use std::collections::VecDeque;

use crate::graph::{Graph, Vertex};

pub(crate) const INF: i64 = i64::MAX / 4;

#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    orig: Vec<i64>,
    cost: Vec<i64>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            orig: Vec::new(),
            cost: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, cap: i64, cost: i64) -> usize {
        let id = self.to.len();
        self.adj[u].push(id);
        self.to.push(v);
        self.cap.push(cap);
        self.orig.push(cap);
        self.cost.push(cost);
        self.adj[v].push(id + 1);
        self.to.push(u);
        self.cap.push(0);
        self.orig.push(0);
        self.cost.push(-cost);
        id
    }

    fn from(&self, e: usize) -> usize {
        self.to[e ^ 1]
    }

    fn bfs_path(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &e in &self.adj[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    prev[v] = e;
                    queue.push_back(v);
                }
            }
        }
        if !seen[t] {
            return None;
        }
        let mut path = Vec::new();
        let mut v = t;
        while v != s {
            let e = prev[v];
            path.push(e);
            v = self.from(e);
        }
        path.reverse();
        Some(path)
    }

    /// Augments along shortest residual paths until `limit` units are pushed
    /// or no path remains.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let mut total = 0;
        while total < limit {
            let Some(path) = self.bfs_path(s, t) else {
                break;
            };
            let push = path.iter().map(|&e| self.cap[e]).min().unwrap_or(0).min(limit - total);
            for &e in &path {
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
            }
            total += push;
        }
        total
    }

    /// Successive shortest paths. Returns the amount of flow pushed (at most
    /// `want`) and its total cost.
    pub fn min_cost_flow(&mut self, s: usize, t: usize, want: i64) -> (i64, i64) {
        let nodes = self.adj.len();
        let mut flow = 0;
        let mut cost = 0;
        while flow < want {
            let mut dist = vec![INF; nodes];
            let mut prev = vec![usize::MAX; nodes];
            let mut in_queue = vec![false; nodes];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            in_queue[s] = true;
            while let Some(u) = queue.pop_front() {
                in_queue[u] = false;
                for &e in &self.adj[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && dist[u] + self.cost[e] < dist[v] {
                        dist[v] = dist[u] + self.cost[e];
                        prev[v] = e;
                        if !in_queue[v] {
                            in_queue[v] = true;
                            queue.push_back(v);
                        }
                    }
                }
            }
            if dist[t] >= INF {
                break;
            }
            let mut push = want - flow;
            debug_assert!(push > 0);
            let mut v = t;
            while v != s {
                let e = prev[v];
                push = push.min(self.cap[e]);
                v = self.from(e);
            }
            let mut v = t;
            while v != s {
                let e = prev[v];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                v = self.from(e);
            }
            flow += push;
            cost += push * dist[t];
        }
        (flow, cost)
    }

    pub fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Splits the current flow into `s`-`t` paths of nodes. Cancels flow on
    /// any cycles it walks into so every returned path is simple.
    pub fn decompose(&self, s: usize, t: usize) -> Vec<Vec<usize>> {
        let mut carried: Vec<i64> = (0..self.to.len())
            .map(|e| {
                if e % 2 == 0 {
                    (self.orig[e] - self.cap[e]).max(0)
                } else {
                    0
                }
            })
            .collect();
        let mut paths = Vec::new();
        loop {
            let mut path = vec![s];
            let mut edges = Vec::new();
            let mut pos = vec![usize::MAX; self.adj.len()];
            pos[s] = 0;
            let mut u = s;
            while u != t {
                let Some(&e) = self.adj[u].iter().find(|&&e| carried[e] > 0) else {
                    break;
                };
                let v = self.to[e];
                if pos[v] != usize::MAX {
                    // Drop the cycle and keep walking from v.
                    let cut = pos[v];
                    for &ce in &edges[cut..] {
                        carried[ce] -= 1;
                    }
                    carried[e] -= 1;
                    for &node in &path[cut + 1..] {
                        pos[node] = usize::MAX;
                    }
                    path.truncate(cut + 1);
                    edges.truncate(cut);
                    u = v;
                    continue;
                }
                pos[v] = path.len();
                path.push(v);
                edges.push(e);
                u = v;
            }
            if u != t {
                break;
            }
            for &e in &edges {
                carried[e] -= 1;
            }
            paths.push(path);
        }
        paths
    }
}

/// Split-vertex layout: `in(v) = 2v`, `out(v) = 2v + 1`, then source and sink.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SplitLayout {
    pub n: usize,
}

impl SplitLayout {
    pub fn vin(self, v: Vertex) -> usize {
        2 * v
    }
    pub fn vout(self, v: Vertex) -> usize {
        2 * v + 1
    }
    pub fn source(self) -> usize {
        2 * self.n
    }
    pub fn sink(self) -> usize {
        2 * self.n + 1
    }
    pub fn nodes(self) -> usize {
        2 * self.n + 2
    }
    pub fn vertex(self, node: usize) -> Option<Vertex> {
        (node < 2 * self.n).then_some(node / 2)
    }

    /// Projects a node path onto graph vertices, collapsing in/out pairs.
    pub fn project(self, path: &[usize]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = Vec::new();
        for &node in path {
            if let Some(v) = self.vertex(node) {
                if out.last() != Some(&v) {
                    out.push(v);
                }
            }
        }
        out
    }
}

/// Builds the network for vertex-disjoint paths from `sources` to `sinks`.
/// Source vertices can only be entered from the super source and sink
/// vertices can only be left towards the super sink, so every flow path is a
/// genuine source-to-sink path meeting the terminal sets only at its ends.
/// Only the split arcs are capacitated, so a saturated cut is a vertex cut.
pub(crate) fn disjoint_paths_network(
    g: &Graph,
    sources: &[(Vertex, i64)],
    sinks: &[Vertex],
    blocked: &[bool],
    edge_cost: i64,
) -> (FlowNetwork, SplitLayout) {
    let layout = SplitLayout { n: g.n() };
    let mut net = FlowNetwork::new(layout.nodes());
    let mut is_source = vec![false; g.n()];
    let mut is_sink = vec![false; g.n()];
    for &(v, _) in sources {
        is_source[v] = true;
    }
    for &v in sinks {
        is_sink[v] = true;
    }
    for v in g.vertices() {
        if blocked[v] {
            continue;
        }
        let cap = sources.iter().find(|&&(s, _)| s == v).map_or(1, |&(_, c)| c);
        net.add_edge(layout.vin(v), layout.vout(v), cap, 0);
    }
    for &(v, _) in sources {
        if !blocked[v] {
            net.add_edge(layout.source(), layout.vin(v), INF, 0);
        }
    }
    for &v in sinks {
        if !blocked[v] {
            net.add_edge(layout.vout(v), layout.sink(), INF, 0);
        }
    }
    for u in g.vertices() {
        if blocked[u] || is_sink[u] {
            continue;
        }
        for &v in g.neighbors(u) {
            if blocked[v] || is_source[v] {
                continue;
            }
            net.add_edge(layout.vout(u), layout.vin(v), INF, edge_cost);
        }
    }
    (net, layout)
}
