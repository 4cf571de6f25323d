//! Highly connected subgraphs: a separator-recursion extractor, an
//! exhaustive oracle, non-colourable connected cores and disjoint covers.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{eval_f, ConstantsConfig};
use crate::coloring::{is_list_colorable, Color, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::search::{Budget, Search};

/// Largest graph the exhaustive connectivity oracle accepts.
pub const BRUTE_CONNECTIVITY_BOUND: usize = 10;
/// Largest graph the exhaustive core search accepts.
pub const CORE_BOUND: usize = 8;

fn sorted(mut v: Vec<Vertex>) -> Vec<Vertex> {
    v.sort_unstable();
    v
}

/// Compares `e/v` of two vertex sets, densest first.
fn denser(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Ordering {
    let (ea, eb) = (g.induced_subgraph(a).graph.m(), g.induced_subgraph(b).graph.m());
    (eb * a.len()).cmp(&(ea * b.len())).then_with(|| a.cmp(b))
}

fn extract(g: &Graph, verts: &[Vertex], k: usize) -> Option<Vec<Vertex>> {
    let sub = g.induced_subgraph(verts);
    let core = sub.lift(&sub.graph.core_vertices(k));
    if core.len() <= k {
        return None;
    }
    let sub = g.induced_subgraph(&core);
    let (kappa, cut) = sub.graph.min_vertex_cut();
    if kappa >= k {
        return Some(sorted(core));
    }
    let cut = cut.expect("a non-complete graph with a small connectivity has a separator");
    let rest = sub.graph.remove_vertices(&cut);
    let cut = sub.lift(&cut);
    let mut pieces: Vec<Vec<Vertex>> = rest
        .graph
        .components()
        .into_iter()
        .map(|c| {
            sorted(
                sub.lift(&rest.lift(&c))
                    .into_iter()
                    .chain(cut.iter().copied())
                    .collect(),
            )
        })
        .collect();
    pieces.sort_by(|a, b| denser(g, a, b));
    pieces.into_iter().find_map(|p| extract(g, &p, k))
}

/// A `k`-connected subgraph, as a sorted vertex set, found by deleting
/// vertices of degree below `k` and recursing across small separators,
/// densest side first.
///
/// A `k`-connected subgraph survives the deletions and, minus a separator
/// of size below `k`, stays inside one side, so trying every side makes the
/// search complete.
pub fn mader_extract(g: &Graph, k: usize) -> Option<Vec<Vertex>> {
    if k == 0 {
        return (!g.is_null()).then(|| g.vertices().collect());
    }
    extract(g, &g.vertices().collect::<Vec<_>>(), k)
}

/// An induced subgraph of maximum connectivity, with that connectivity.
/// Ties go to the smallest vertex bitmask.
pub fn brute_max_connectivity_subgraph(g: &Graph) -> Result<(Vec<Vertex>, usize)> {
    let n = g.n();
    if n > BRUTE_CONNECTIVITY_BOUND {
        return Err(Error::ExceedsExactBound {
            n,
            bound: BRUTE_CONNECTIVITY_BOUND,
        });
    }
    if n == 0 {
        return Ok((Vec::new(), 0));
    }
    let adj: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
        .collect();
    let mut best = (vec![0], 0);
    for mask in 1u32..1 << n {
        let size = mask.count_ones() as usize;
        // κ ≤ min(|H| − 1, δ(H)).
        if size < best.1 + 2 {
            continue;
        }
        let members: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if members
            .iter()
            .any(|&v| ((adj[v] & mask).count_ones() as usize) <= best.1)
        {
            continue;
        }
        let kappa = g.induced_subgraph(&members).graph.vertex_connectivity();
        if kappa > best.1 {
            best = (members, kappa);
        }
    }
    Ok(best)
}

/// An induced subgraph with lists (in the parent's labels) on which it is
/// not colourable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoncolorableCore {
    pub vertices: Vec<Vertex>,
    pub lists: ListAssignment,
}

fn combinations(items: &[Color], size: usize) -> Vec<Vec<Color>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(items: &[Color], size: usize, from: usize, cur: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in from..items.len() {
            cur.push(items[i]);
            go(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    go(items, size, 0, &mut cur, &mut out);
    out
}

/// A `k`-connected induced subgraph `H` and sublists `L' ⊆ L` with
/// `|L'| ≥ |L| − 4k` such that `H` is not `L'`-colourable.
///
/// Subgraphs are tried largest first. For each, `L` itself is tried, then
/// every choice of sublists of the smallest allowed size; shrinking lists
/// never helps colourability, so no larger reduction is missed.
pub fn find_noncolorable_connected_core(
    g: &Graph,
    lists: &ListAssignment,
    k: usize,
    budget: u64,
) -> Result<Search<NoncolorableCore>> {
    let n = g.n();
    if n > CORE_BOUND {
        return Err(Error::ExceedsExactBound { n, bound: CORE_BOUND });
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let reduced = lists.min_size(g)?.saturating_sub(4 * k);
    let mut budget = Budget::new(budget)?;
    let mut masks: Vec<u32> = (1u32..1 << n).filter(|m| m.count_ones() as usize > k).collect();
    masks.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
    for mask in masks {
        let members: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let sub = g.induced_subgraph(&members);
        if !sub.graph.is_k_connected(k) {
            continue;
        }
        let own = lists.restrict(&members);
        if !budget.tick() {
            return Ok(Search::Exhausted);
        }
        if is_list_colorable(&sub.graph, &own)?.is_none() {
            let lists =
                ListAssignment::from_lists(members.iter().map(|&v| (v, lists.get(v).expect("covered").clone())));
            return Ok(Search::Found(NoncolorableCore {
                vertices: members,
                lists,
            }));
        }
        let options: Vec<Vec<Vec<Color>>> = members
            .iter()
            .map(|&v| {
                combinations(
                    &lists.get(v).expect("covered").iter().copied().collect::<Vec<_>>(),
                    reduced,
                )
            })
            .collect();
        let mut idx = vec![0usize; members.len()];
        loop {
            if !budget.tick() {
                return Ok(Search::Exhausted);
            }
            let trial = ListAssignment::from_lists(idx.iter().enumerate().map(|(i, &c)| (i, options[i][c].clone())));
            if is_list_colorable(&sub.graph, &trial)?.is_none() {
                let lists = ListAssignment::from_lists(
                    members
                        .iter()
                        .zip(&idx)
                        .enumerate()
                        .map(|(i, (&v, &c))| (v, options[i][c].clone())),
                );
                return Ok(Search::Found(NoncolorableCore {
                    vertices: members,
                    lists,
                }));
            }
            let mut i = 0;
            while i < idx.len() {
                idx[i] += 1;
                if idx[i] < options[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == idx.len() {
                break;
            }
        }
    }
    Ok(Search::ProvenAbsent)
}

/// Disjoint `k`-connected subgraphs, or the stage at which the loop stopped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum CoverOutcome {
    Cover { parts: Vec<Vec<Vertex>> },
    Absent { stage: usize, parts: Vec<Vec<Vertex>> },
}

/// Removes vertices one at a time, in order, while `g` stays not
/// colourable; the result has no non-colourable proper induced subgraph
/// obtained by deleting one more vertex.
fn minimal_noncolourable(g: &Graph, lists: &ListAssignment) -> Result<Vec<Vertex>> {
    let mut keep: Vec<Vertex> = g.vertices().collect();
    for v in g.vertices() {
        let trial: Vec<Vertex> = keep.iter().copied().filter(|&w| w != v).collect();
        let sub = g.induced_subgraph(&trial);
        if is_list_colorable(&sub.graph, &lists.restrict(&trial))?.is_none() {
            keep = trial;
        }
    }
    Ok(keep)
}

/// Up to `r` disjoint `k`-connected subgraphs of at most `t·f(t)·log t`
/// vertices each.
///
/// Each stage colours the removed part `X`, takes `L'(v) = L(v)` minus the
/// colours on `v`'s neighbours in `X`, and mines the residue `G − X`: a
/// vertex-minimal non-`L'`-colourable subgraph when there is one, else the
/// `k`-core. The extractor runs on that core.
pub fn small_conn_cover(
    g: &Graph,
    lists: &ListAssignment,
    k: usize,
    t: usize,
    r: usize,
    cfg: &ConstantsConfig,
) -> Result<CoverOutcome> {
    lists.check_covers(g)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let f = eval_f(cfg, t as f64).map_err(|e| Error::Threshold(e.to_string()))?;
    let cap = t as f64 * f * (t as f64).ln();
    if cap < (k + 1) as f64 {
        return Err(Error::Threshold(format!(
            "size cap {cap:.3} cannot hold a {k}-connected subgraph"
        )));
    }
    let mut parts: Vec<Vec<Vertex>> = Vec::new();
    let mut removed: BTreeSet<Vertex> = BTreeSet::new();
    for stage in 1..=r {
        let x: Vec<Vertex> = removed.iter().copied().collect();
        let x_sub = g.induced_subgraph(&x);
        let phi = is_list_colorable(&x_sub.graph, &lists.restrict(&x))?;
        let residue: Vec<Vertex> = g.vertices().filter(|v| !removed.contains(v)).collect();
        let reduced = ListAssignment::from_lists(residue.iter().enumerate().map(|(i, &v)| {
            let used: BTreeSet<Color> = match &phi {
                Some(c) => g
                    .neighbors(v)
                    .iter()
                    .filter_map(|w| x.binary_search(w).ok().map(|j| c[&j]))
                    .collect(),
                None => BTreeSet::new(),
            };
            (
                i,
                lists
                    .get(v)
                    .expect("covered")
                    .difference(&used)
                    .copied()
                    .collect::<Vec<_>>(),
            )
        }));
        let sub = g.induced_subgraph(&residue);
        let core = if is_list_colorable(&sub.graph, &reduced)?.is_none() {
            minimal_noncolourable(&sub.graph, &reduced)?
        } else {
            sub.graph.core_vertices(k)
        };
        let core_sub = sub.graph.induced_subgraph(&core);
        let found = mader_extract(&core_sub.graph, k)
            .map(|h| sorted(sub.lift(&core_sub.lift(&h))))
            .filter(|h| h.len() as f64 <= cap);
        match found {
            Some(h) => {
                removed.extend(h.iter().copied());
                parts.push(h);
            }
            None => return Ok(CoverOutcome::Absent { stage, parts }),
        }
    }
    Ok(CoverOutcome::Cover { parts })
}
