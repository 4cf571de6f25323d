//! Exact parameters of tiny graphs: list chromatic number, independence
//! number and Hall ratio.

use super::{solve, Color};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Largest graph accepted by [`list_chromatic_number`].
pub const CHOOSABILITY_BOUND: usize = 8;
/// Largest graph accepted by [`hall_ratio`].
pub const HALL_RATIO_BOUND: usize = 16;

/// Least `k` such that every assignment of `k`-subsets of `[palette]` is
/// colourable. Assignments are enumerated up to permutations of the palette
/// (colours are introduced in first-use order) and a branch stops as soon as
/// its partial assignment is already uncolourable. `k ≥ d + 1` always works,
/// so no enumeration is needed there.
pub fn list_chromatic_number(g: &Graph, palette: Color) -> Result<usize> {
    if g.n() > CHOOSABILITY_BOUND {
        return Err(Error::ExceedsExactBound {
            n: g.n(),
            bound: CHOOSABILITY_BOUND,
        });
    }
    if g.is_null() {
        return Ok(0);
    }
    let d = g.degeneracy().d;
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for k in 1.. {
        if k > d {
            return Ok(k);
        }
        if (palette as usize) < k {
            return Err(Error::PaletteTooSmall(palette));
        }
        let mut lists = vec![Vec::new(); g.n()];
        if every_assignment_colourable(g, &order, 0, 0, k, palette, &mut lists) {
            return Ok(k);
        }
    }
    unreachable!("k = d + 1 always succeeds")
}

fn every_assignment_colourable(
    g: &Graph,
    order: &[Vertex],
    i: usize,
    used: Color,
    k: usize,
    palette: Color,
    lists: &mut Vec<Vec<Color>>,
) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    let max_new = k.min((palette - used) as usize);
    for fresh in 0..=max_new {
        let old = k - fresh;
        if old > used as usize {
            continue;
        }
        let mut ok = true;
        for_each_subset(used, old, &mut |subset| {
            if !ok {
                return;
            }
            let mut list = subset.to_vec();
            list.extend((1..=fresh as Color).map(|j| used + j));
            lists[v] = list;
            let assigned = &order[..=i];
            if !partial_colourable(g, assigned, lists)
                || !every_assignment_colourable(g, order, i + 1, used + fresh as Color, k, palette, lists)
            {
                ok = false;
            }
        });
        if !ok {
            lists[v].clear();
            return false;
        }
    }
    lists[v].clear();
    true
}

fn partial_colourable(g: &Graph, assigned: &[Vertex], lists: &[Vec<Color>]) -> bool {
    let sub = g.induced_subgraph(assigned);
    let local: Vec<Vec<Color>> = sub.to_parent.iter().map(|&v| lists[v].clone()).collect();
    solve(&sub.graph, &local).is_some()
}

/// Calls `f` with every `size`-subset of `1..=n` in lexicographic order.
fn for_each_subset(n: Color, size: usize, f: &mut dyn FnMut(&[Color])) {
    fn go(start: Color, n: Color, size: usize, cur: &mut Vec<Color>, f: &mut dyn FnMut(&[Color])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for c in start..=n {
            if (n - c + 1) as usize + cur.len() < size {
                break;
            }
            cur.push(c);
            go(c + 1, n, size, cur, f);
            cur.pop();
        }
    }
    go(1, n, size, &mut Vec::new(), f);
}

fn masks(g: &Graph) -> Vec<u64> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn alpha(adj: &[u64], p: u64) -> u32 {
    if p == 0 {
        return 0;
    }
    let mut best_v = 0;
    let mut best_d = 0;
    let mut rest = p;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & p).count_ones();
        if d <= 1 {
            // A vertex of degree at most one is in some maximum independent set.
            return 1 + alpha(adj, p & !adj[v] & !(1 << v));
        }
        if d > best_d {
            best_d = d;
            best_v = v;
        }
    }
    let without = alpha(adj, p & !(1 << best_v));
    let with = 1 + alpha(adj, p & !adj[best_v] & !(1 << best_v));
    without.max(with)
}

/// α(G) by branch and bound; at most 64 vertices.
pub fn independence_number(g: &Graph) -> Result<usize> {
    if g.n() > 64 {
        return Err(Error::ExceedsExactBound { n: g.n(), bound: 64 });
    }
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    Ok(alpha(&masks(g), all) as usize)
}

fn connected_mask(adj: &[u64], set: u64) -> bool {
    let start = set & set.wrapping_neg();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & set & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == set
}

/// `max ⌈v(H)/α(H)⌉` over induced subgraphs `H`. Only connected ones are
/// scanned: the ratio of a disjoint union never beats its best component.
pub fn hall_ratio(g: &Graph) -> Result<usize> {
    if g.is_null() {
        return Err(Error::DensityUndefined);
    }
    if g.n() > HALL_RATIO_BOUND {
        return Err(Error::ExceedsExactBound {
            n: g.n(),
            bound: HALL_RATIO_BOUND,
        });
    }
    let adj = masks(g);
    let mut best = 1;
    for set in 1u64..1 << g.n() {
        if !connected_mask(&adj, set) {
            continue;
        }
        let v = set.count_ones() as usize;
        let a = alpha(&adj, set) as usize;
        best = best.max(v.div_ceil(a));
    }
    Ok(best)
}
