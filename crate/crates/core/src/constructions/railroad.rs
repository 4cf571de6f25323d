//! Railroads and near-bipartite witnesses.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::linkage::{check_path, Path};
use crate::search::{ensure, Verdict};

/// Stations with inbound and outbound track families.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Railroad {
    pub stations: Vec<Vertex>,
    pub inbound: Vec<Path>,
    pub outbound: Vec<Path>,
    pub width: usize,
    pub length: usize,
}

impl Railroad {
    /// Drops track `i` of one family and moves its vertices to the stations,
    /// so the outside vertices are unchanged.
    pub fn retire_track(&self, outbound: bool, i: usize) -> Railroad {
        let mut r = self.clone();
        let family = if outbound { &mut r.outbound } else { &mut r.inbound };
        let track = family.remove(i);
        r.stations.extend(track);
        r.stations.sort_unstable();
        r.stations.dedup();
        r
    }
}

fn family_verdict(g: &Graph, name: &str, tracks: &[Path], max_tracks: usize) -> Verdict {
    ensure!(
        tracks.len() <= max_tracks,
        "track count",
        "{} {name} tracks, at most {max_tracks} allowed",
        tracks.len()
    );
    for (i, p) in tracks.iter().enumerate() {
        if let Err(e) = check_path(g, p) {
            return Verdict::fail("not a path", format!("{name} track {i}: {e}"));
        }
    }
    let mut seen = BTreeSet::new();
    for (i, p) in tracks.iter().enumerate() {
        for &v in p {
            ensure!(
                seen.insert(v),
                "tracks not disjoint",
                "{name} track {i} reuses vertex {v}"
            );
        }
    }
    Verdict::Valid
}

/// First violated railroad condition, or `Valid`.
pub fn verify_railroad(g: &Graph, r: &Railroad) -> Result<Verdict> {
    g.check_vertices(&r.stations)?;
    for p in r.inbound.iter().chain(&r.outbound) {
        g.check_vertices(p)?;
    }
    let max_tracks = 18 * r.width * r.length;
    Ok(family_verdict(g, "inbound", &r.inbound, max_tracks)
        .and_then(|| family_verdict(g, "outbound", &r.outbound, max_tracks))
        .and_then(|| placement_verdict(g, r)))
}

fn placement_verdict(g: &Graph, r: &Railroad) -> Verdict {
    let on_track: BTreeSet<Vertex> = r.inbound.iter().chain(&r.outbound).flatten().copied().collect();
    let stations: BTreeSet<Vertex> = r.stations.iter().copied().collect();
    let mut track_of = vec![[None, None]; g.n()];
    for (f, family) in [&r.inbound, &r.outbound].into_iter().enumerate() {
        for (i, p) in family.iter().enumerate() {
            for &v in p {
                track_of[v][f] = Some(i);
            }
        }
    }
    for v in g.vertices().filter(|v| !stations.contains(v) && !on_track.contains(v)) {
        for (f, name) in ["inbound", "outbound"].into_iter().enumerate() {
            let mut hits = std::collections::BTreeMap::<usize, usize>::new();
            for &w in g.neighbors(v) {
                if let Some(i) = track_of[w][f] {
                    *hits.entry(i).or_default() += 1;
                }
            }
            if let Some((&i, &c)) = hits.iter().find(|(_, &c)| c > 3) {
                return Verdict::fail(
                    "track contact",
                    format!("vertex {v} has {c} neighbours on {name} track {i}"),
                );
            }
            ensure!(
                hits.len() <= 4 * r.width,
                "track incidence",
                "vertex {v} meets {} {name} tracks, at most {} allowed",
                hits.len(),
                4 * r.width
            );
        }
    }
    let union: Vec<Vertex> = on_track.into_iter().collect();
    let d = g.induced_subgraph(&union).graph.degeneracy().d;
    ensure!(
        d <= 96 * r.width,
        "degeneracy",
        "tracks induce a {d}-degenerate graph, at most {} allowed",
        96 * r.width
    );
    Verdict::Valid
}

/// Whether `|x| ≤ 8t − 2` and some component of `g − x` is bipartite with
/// at least `8t + 2` vertices.
pub fn check_near_bipartite_witness(g: &Graph, x: &[Vertex], t: usize) -> Result<bool> {
    g.check_vertices(x)?;
    let distinct: BTreeSet<Vertex> = x.iter().copied().collect();
    if t == 0 || distinct.len() > 8 * t - 2 {
        return Ok(false);
    }
    let rest = g.remove_vertices(x);
    Ok(rest
        .graph
        .components()
        .into_iter()
        .any(|c| c.len() >= 8 * t + 2 && rest.graph.induced_subgraph(&c).graph.is_bipartite()))
}
