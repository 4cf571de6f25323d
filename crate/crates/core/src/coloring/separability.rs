//! `s`-chromatic separability at desk scale.
//!
//! Induced subgraphs suffice: a non-colourable subgraph stays non-colourable
//! when the missing edges on its vertex set are added back. A set `H` is
//! `s`-noncolourable when some choice of `|L(v)| − s` colours per vertex
//! makes `G[H]` uncolourable; this is monotone under supersets, so only
//! inclusion-minimal sets are needed to decide whether two disjoint ones
//! exist. In a minimal set every vertex has at least `|L(v)| − s`
//! neighbours inside it (otherwise it could be coloured last and dropped),
//! which prunes almost every subset.

use serde::{Deserialize, Serialize};

use super::{is_list_colorable, solve, Color, ColourMap, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::search::{ensure, Verdict};

/// Largest graph accepted by [`chromatic_separability`].
pub const SEPARABILITY_BOUND: usize = 12;

/// A vertex set with shrunken lists (keyed by the original vertices) under
/// which the induced subgraph is not colourable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub vertices: Vec<Vertex>,
    pub lists: ListAssignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "kebab-case")]
pub enum SeparabilityVerdict {
    Colorable {
        colouring: ColourMap,
    },
    Separable {
        first: Witness,
        second: Witness,
    },
    /// Exhaustion record: how many vertex sets were scanned and how many
    /// minimal noncolourable sets turned up (none pairwise disjoint).
    Inseparable {
        scanned: usize,
        minimal_witnesses: usize,
    },
}

/// Shrunken lists for `set` that make `G[set]` uncolourable, if any.
pub fn is_s_noncolourable(
    g: &Graph,
    lists: &ListAssignment,
    set: &[Vertex],
    s: usize,
) -> Result<Option<ListAssignment>> {
    lists.check_covers(g)?;
    g.check_vertices(set)?;
    let sub = g.induced_subgraph(set);
    let full: Vec<Vec<Color>> = sub
        .to_parent
        .iter()
        .map(|&v| lists.get(v).expect("covered").iter().copied().collect())
        .collect();
    let keep: Vec<usize> = full.iter().map(|l| l.len().saturating_sub(s)).collect();
    let mut chosen = vec![Vec::new(); full.len()];
    let found = choose(&sub.graph, &full, &keep, 0, &mut chosen);
    Ok(found.then(|| ListAssignment::from_lists(sub.to_parent.iter().copied().zip(chosen))))
}

fn choose(g: &Graph, full: &[Vec<Color>], keep: &[usize], i: usize, chosen: &mut [Vec<Color>]) -> bool {
    if i == full.len() {
        return solve(g, chosen).is_none();
    }
    let mut hit = false;
    subsets(&full[i], keep[i], &mut |sub| {
        if hit {
            return;
        }
        chosen[i] = sub.to_vec();
        hit = choose(g, full, keep, i + 1, chosen);
    });
    hit
}

fn subsets(items: &[Color], size: usize, f: &mut dyn FnMut(&[Color])) {
    fn go(items: &[Color], start: usize, size: usize, cur: &mut Vec<Color>, f: &mut dyn FnMut(&[Color])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i + cur.len() < size {
                break;
            }
            cur.push(items[i]);
            go(items, i + 1, size, cur, f);
            cur.pop();
        }
    }
    go(items, 0, size, &mut Vec::new(), f);
}

/// Colourable first; otherwise separable with re-verified witnesses, else
/// inseparable. `s` is a count, so negative values are unrepresentable.
pub fn chromatic_separability(g: &Graph, lists: &ListAssignment, s: usize) -> Result<SeparabilityVerdict> {
    let n = g.n();
    if n > SEPARABILITY_BOUND {
        return Err(Error::ExceedsExactBound {
            n,
            bound: SEPARABILITY_BOUND,
        });
    }
    if let Some(colouring) = is_list_colorable(g, lists)? {
        return Ok(SeparabilityVerdict::Colorable { colouring });
    }
    let need: Vec<usize> = g
        .vertices()
        .map(|v| lists.get(v).expect("covered").len().saturating_sub(s))
        .collect();
    let adj: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let mut masks: Vec<u32> = (1u32..1 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut minimal: Vec<(u32, ListAssignment)> = Vec::new();
    let mut scanned = 0;
    for mask in masks {
        if minimal.iter().any(|(m, _)| mask & m == *m) {
            continue;
        }
        let members: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if members
            .iter()
            .any(|&v| ((adj[v] & mask).count_ones() as usize) < need[v])
        {
            continue;
        }
        scanned += 1;
        if let Some(shrunk) = is_s_noncolourable(g, lists, &members, s)? {
            if let Some((other, other_lists)) = minimal.iter().find(|(m, _)| m & mask == 0) {
                let first = Witness {
                    vertices: (0..n).filter(|&v| other >> v & 1 == 1).collect(),
                    lists: other_lists.clone(),
                };
                let second = Witness {
                    vertices: members,
                    lists: shrunk,
                };
                debug_assert!(verify_separation(g, lists, s, &first, &second).is_valid());
                return Ok(SeparabilityVerdict::Separable { first, second });
            }
            minimal.push((mask, shrunk));
        }
    }
    Ok(SeparabilityVerdict::Inseparable {
        scanned,
        minimal_witnesses: minimal.len(),
    })
}

/// Re-checks a separable verdict from scratch.
pub fn verify_separation(g: &Graph, lists: &ListAssignment, s: usize, first: &Witness, second: &Witness) -> Verdict {
    ensure!(
        first.vertices.iter().all(|v| !second.vertices.contains(v)),
        "witnesses not disjoint",
        "{:?} and {:?}",
        first.vertices,
        second.vertices
    );
    for w in [first, second] {
        for &v in &w.vertices {
            let (Some(small), Some(big)) = (w.lists.get(v), lists.get(v)) else {
                return Verdict::fail("witness lists", format!("vertex {v} lacks a list"));
            };
            ensure!(small.is_subset(big), "witness lists", "vertex {v} gained colours");
            ensure!(
                small.len() + s >= big.len(),
                "witness lists",
                "vertex {v} lost more than {s} colours"
            );
        }
        let sub = g.induced_subgraph(&w.vertices);
        let local: Vec<Vec<Color>> = sub
            .to_parent
            .iter()
            .map(|&v| w.lists.get(v).expect("checked").iter().copied().collect())
            .collect();
        ensure!(
            solve(&sub.graph, &local).is_none(),
            "witness colourable",
            "{:?}",
            w.vertices
        );
    }
    Verdict::Valid
}
