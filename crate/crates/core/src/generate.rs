//! Graph families and seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, Graph, Vertex};

/// The generator behind every seeded run.
pub type SeededRng = ChaCha8Rng;

/// Counter-based generator: `(seed, stream)` pins the whole sequence.
pub fn rng(seed: u64, stream: u64) -> SeededRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn build(n: usize, edges: impl IntoIterator<Item = Edge>) -> Graph {
    Graph::from_edges(n, edges).expect("generated edges are valid")
}

pub fn empty(n: usize) -> Graph {
    Graph::new(n)
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|v| (v - 1, v)))
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    build(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    build(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

/// `K_{1,k}` centred at vertex 0.
pub fn star(k: usize) -> Graph {
    complete_bipartite(1, k)
}

/// `rows × cols` grid; vertex `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    build(rows * cols, edges)
}

/// Outer 5-cycle on `0..5`, inner pentagram on `5..10`, spokes `i ~ i + 5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
        edges.push((i, i + 5));
    }
    build(10, edges)
}

pub fn petersen_spokes() -> Vec<Edge> {
    (0..5).map(|i| (i, i + 5)).collect()
}

/// `K_{m*r}`: `r` independent parts of size `m`, all cross edges present.
pub fn complete_multipartite(m: usize, r: usize) -> Graph {
    let n = m * r;
    build(
        n,
        (0..n).flat_map(|u| (u + 1..n).filter(move |&v| u / m != v / m).map(move |v| (u, v))),
    )
}

/// Replaces every vertex by an independent set of `m` copies; copies of
/// adjacent vertices are fully joined. Copy `j` of `v` is `v * m + j`.
pub fn blowup(base: &Graph, m: usize) -> Graph {
    let mut edges = Vec::new();
    for (u, v) in base.edges() {
        for i in 0..m {
            for j in 0..m {
                edges.push((u * m + i, v * m + j));
            }
        }
    }
    build(base.n() * m, edges)
}

pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build(n, edges)
}

/// Random bipartite graph with parts `0..a`, `a..a+b`.
pub fn random_bipartite<R: Rng>(a: usize, b: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build(a + b, edges)
}

/// Uniform attachment tree: vertex `v` hooks onto a random earlier vertex.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    build(n, (1..n).map(|v| (rng.random_range(0..v), v)))
}

/// `G(n, p)` plus a random spanning tree, so the result is connected.
pub fn connected_gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let tree = random_tree(n, rng);
    let extra = gnp(n, p, rng);
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    build(n, tree.edges().map(|(u, v)| (perm[u], perm[v])).chain(extra.edges()))
}
