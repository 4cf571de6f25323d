//! Disjoint paths from two source sets, and the two-fan condition that
//! guarantees them.

use serde::{Deserialize, Serialize};

use super::Path;
use crate::error::{Error, Result};
use crate::flow::disjoint_paths_network;
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum MengerOutcome {
    Paths {
        paths: Vec<Path>,
    },
    /// A vertex set of size below `|a1| + |a2|` meeting every path.
    Cut {
        cut: Vec<Vertex>,
    },
}

/// Per-side fans: `2|A_i|` paths from `A_i` to `b` avoiding `A_{3-i}`,
/// disjoint away from `A_i`, with every vertex of `A_i` on exactly two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fans {
    pub first: Vec<Path>,
    pub second: Vec<Path>,
}

fn check_disjoint(g: &Graph, sets: &[&[Vertex]]) -> Result<()> {
    let mut seen = vec![usize::MAX; g.n()];
    for (k, set) in sets.iter().enumerate() {
        g.check_vertices(set.iter())?;
        for &v in set.iter() {
            if seen[v] != usize::MAX && seen[v] != k {
                return Err(Error::NotDisjoint);
            }
            seen[v] = k;
        }
    }
    Ok(())
}

fn sorted(v: &[Vertex]) -> Vec<Vertex> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Flow from `sources` (with per-vertex multiplicity) to `sinks`. Returns
/// the paths when `want` units fit, else a minimum vertex cut.
fn route(g: &Graph, sources: &[(Vertex, i64)], sinks: &[Vertex], blocked: &[bool], want: i64) -> MengerOutcome {
    let (mut net, layout) = disjoint_paths_network(g, sources, sinks, blocked, 0);
    let flow = net.max_flow(layout.source(), layout.sink(), want);
    if flow == want {
        let mut paths: Vec<Path> = net
            .decompose(layout.source(), layout.sink())
            .iter()
            .map(|p| layout.project(p))
            .collect();
        paths.sort();
        return MengerOutcome::Paths { paths };
    }
    let reach = net.reachable(layout.source());
    let cut = g
        .vertices()
        .filter(|&v| !blocked[v] && reach[layout.vin(v)] && !reach[layout.vout(v)])
        .collect();
    MengerOutcome::Cut { cut }
}

/// `|a1| + |a2|` disjoint `(a1 ∪ a2)`-`b` paths, or a cut showing there are
/// not that many.
pub fn menger_variant_paths(g: &Graph, a1: &[Vertex], a2: &[Vertex], b: &[Vertex]) -> Result<MengerOutcome> {
    check_disjoint(g, &[a1, a2, b])?;
    let mut sources: Vec<Vertex> = sorted(a1);
    sources.extend(sorted(a2));
    let want = sources.len() as i64;
    let sources: Vec<(Vertex, i64)> = sources.into_iter().map(|v| (v, 1)).collect();
    Ok(route(g, &sources, &sorted(b), &vec![false; g.n()], want))
}

/// The fans required on both sides, when they exist.
pub fn check_fan_hypothesis(g: &Graph, a1: &[Vertex], a2: &[Vertex], b: &[Vertex]) -> Result<Option<Fans>> {
    check_disjoint(g, &[a1, a2, b])?;
    let fan = |own: &[Vertex], other: &[Vertex]| {
        let own = sorted(own);
        let mut blocked = vec![false; g.n()];
        for &v in other {
            blocked[v] = true;
        }
        let sources: Vec<(Vertex, i64)> = own.iter().map(|&v| (v, 2)).collect();
        match route(g, &sources, &sorted(b), &blocked, 2 * own.len() as i64) {
            MengerOutcome::Paths { paths } => Some(paths),
            MengerOutcome::Cut { .. } => None,
        }
    };
    Ok(fan(a1, a2)
        .zip(fan(a2, a1))
        .map(|(first, second)| Fans { first, second }))
}
