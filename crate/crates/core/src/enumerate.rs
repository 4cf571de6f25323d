//! All graphs on a few vertices, one per isomorphism class.
//!
//! Graphs on `n` vertices are grown from those on `n - 1` by adding a vertex
//! with every possible neighbourhood; duplicates are removed by a canonical
//! code (the minimum adjacency bitstring over all orderings compatible with
//! the colour-refined partition).

use std::collections::BTreeSet;

use crate::graph::Graph;

/// Largest order handled; the upper triangle must fit in a `u64`.
pub const MAX_ORDER: usize = 11;

fn bit(n: usize, i: usize, j: usize) -> u32 {
    // Position of pair (i, j), i < j, in row-major upper-triangle order.
    (i * (2 * n - i - 1) / 2 + (j - i - 1)) as u32
}

fn masks(g: &Graph) -> Vec<u32> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

/// Ordered cells of the stable colour refinement, cells sorted by an
/// isomorphism-invariant key.
fn refined_cells(adj: &[u32]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut colour: Vec<usize> = adj.iter().map(|m| m.count_ones() as usize).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let distinct: Vec<&(usize, Vec<usize>)> = sigs.iter().collect::<BTreeSet<_>>().into_iter().collect();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(&s).expect("present"))
            .collect();
        let before = colour.iter().collect::<BTreeSet<_>>().len();
        colour = next;
        if distinct.len() == before {
            break;
        }
    }
    let mut cells = vec![Vec::new(); colour.iter().max().map_or(0, |&c| c + 1)];
    for (v, &c) in colour.iter().enumerate() {
        cells[c].push(v);
    }
    cells
}

/// Canonical code of a graph given by neighbour masks.
pub fn canonical_code(adj: &[u32]) -> u64 {
    let n = adj.len();
    let cells = refined_cells(adj);
    let mut order = Vec::with_capacity(n);
    let mut best = u64::MAX;
    permute_cells(adj, &cells, 0, &mut order, &mut best);
    best
}

fn permute_cells(adj: &[u32], cells: &[Vec<usize>], k: usize, order: &mut Vec<usize>, best: &mut u64) {
    if k == cells.len() {
        let n = adj.len();
        let mut code = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                if adj[order[i]] >> order[j] & 1 == 1 {
                    code |= 1 << bit(n, i, j);
                }
            }
        }
        *best = (*best).min(code);
        return;
    }
    let mut cell = cells[k].clone();
    heap_permutations(&mut cell, &mut |perm| {
        let base = order.len();
        order.extend_from_slice(perm);
        permute_cells(adj, cells, k + 1, order, best);
        order.truncate(base);
    });
}

fn heap_permutations(items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    fn go(k: usize, items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            f(items);
            return;
        }
        for i in 0..k {
            go(k - 1, items, f);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let k = items.len();
    go(k, items, f);
}

fn from_code(n: usize, code: u64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if code >> bit(n, i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid code")
}

/// Canonical code of `g` (at most [`MAX_ORDER`] vertices).
pub fn canonical_form(g: &Graph) -> u64 {
    assert!(g.n() <= MAX_ORDER, "canonical codes need at most {MAX_ORDER} vertices");
    canonical_code(&masks(g))
}

/// Whether two small graphs are isomorphic.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.m() == b.m() && canonical_form(a) == canonical_form(b)
}

/// One representative per isomorphism class on exactly `n` vertices, in
/// increasing canonical-code order. Representatives are relabelled into
/// their canonical ordering.
pub fn graphs_on(n: usize) -> Vec<Graph> {
    assert!(n <= 9, "exhaustive enumeration is limited to 9 vertices");
    let mut level: BTreeSet<u64> = BTreeSet::from([0]);
    for k in 1..n {
        let mut next = BTreeSet::new();
        for &code in &level {
            let base = masks(&from_code(k, code));
            for nbhd in 0u32..1 << k {
                let mut adj = base.clone();
                for (w, m) in adj.iter_mut().enumerate() {
                    if nbhd >> w & 1 == 1 {
                        *m |= 1 << k;
                    }
                }
                adj.push(nbhd);
                next.insert(canonical_code(&adj));
            }
        }
        level = next;
    }
    if n == 0 {
        return vec![Graph::new(0)];
    }
    level.into_iter().map(|code| from_code(n, code)).collect()
}

/// Every graph on `0..=max_n` vertices up to isomorphism (the null graph
/// excluded), ordered by vertex count.
pub fn graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(graphs_on).collect()
}
