//! Geodesic path systems, the express property and the two moves that
//! shorten any path system failing it.

use serde::{Deserialize, Serialize};

use super::{check_path, interior, verify_linkage_unchecked, Linkage, LinkageSpec, Path};
use crate::error::{Error, Result};
use crate::flow::disjoint_paths_network;
use crate::graph::{Graph, Vertex};
use crate::search::{ensure, Verdict};

pub fn total_length(paths: &[Path]) -> usize {
    paths.iter().map(|p| p.len().saturating_sub(1)).sum()
}

/// Membership masks for `a` and `b`, which must be disjoint.
fn sides(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Result<(Vec<bool>, Vec<bool>)> {
    g.check_vertices(a)?;
    g.check_vertices(b)?;
    let mut in_a = vec![false; g.n()];
    let mut in_b = vec![false; g.n()];
    for &v in a {
        in_a[v] = true;
    }
    for &v in b {
        if in_a[v] {
            return Err(Error::NotDisjoint);
        }
        in_b[v] = true;
    }
    Ok((in_a, in_b))
}

/// Vertex-disjoint paths, each starting in `a`, ending in `b`, with no
/// interior vertex in either set.
pub fn verify_ab_paths(g: &Graph, a: &[Vertex], b: &[Vertex], paths: &[Path]) -> Result<Verdict> {
    let (in_a, in_b) = sides(g, a, b)?;
    Ok(ab_verdict(g, &in_a, &in_b, paths))
}

fn ab_verdict(g: &Graph, in_a: &[bool], in_b: &[bool], paths: &[Path]) -> Verdict {
    let mut owner = vec![usize::MAX; g.n()];
    for (i, p) in paths.iter().enumerate() {
        if let Err(why) = check_path(g, p) {
            return Verdict::fail("not a path", format!("path {i}: {why}"));
        }
        let (s, t) = (p[0], p[p.len() - 1]);
        ensure!(in_a[s] && in_b[t], "path ends", "path {i} runs from {s} to {t}");
        for &v in interior(p) {
            ensure!(
                !in_a[v] && !in_b[v],
                "interior meets terminals",
                "path {i} passes through {v}"
            );
        }
        for &v in p {
            ensure!(
                owner[v] == usize::MAX,
                "not disjoint",
                "vertex {v} lies on paths {} and {i}",
                owner[v]
            );
            owner[v] = i;
        }
    }
    Verdict::Valid
}

fn require_valid(v: Verdict) -> Result<()> {
    match v {
        Verdict::Valid => Ok(()),
        Verdict::Invalid(why) => Err(Error::InvalidParameter(format!("{}: {}", why.clause, why.detail))),
    }
}

/// `l` disjoint A-B paths of least total length, by min-cost flow on the
/// split-vertex network. `None` when fewer than `l` disjoint paths exist.
pub fn find_geodesic_ab_paths(g: &Graph, a: &[Vertex], b: &[Vertex], l: usize) -> Result<Option<Vec<Path>>> {
    sides(g, a, b)?;
    if l == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut a: Vec<Vertex> = a.to_vec();
    a.sort_unstable();
    a.dedup();
    let mut b: Vec<Vertex> = b.to_vec();
    b.sort_unstable();
    b.dedup();
    let sources: Vec<(Vertex, i64)> = a.iter().map(|&v| (v, 1)).collect();
    let (mut net, layout) = disjoint_paths_network(g, &sources, &b, &vec![false; g.n()], 1);
    let (flow, cost) = net.min_cost_flow(layout.source(), layout.sink(), l as i64);
    if flow < l as i64 {
        return Ok(None);
    }
    let mut paths: Vec<Path> = net
        .decompose(layout.source(), layout.sink())
        .iter()
        .map(|p| layout.project(p))
        .collect();
    paths.sort();
    debug_assert_eq!(total_length(&paths) as i64, cost);
    Ok(Some(paths))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpressMode {
    /// Degeneracy is measured on the whole induced union.
    AbPaths,
    /// Path ends are dropped before measuring degeneracy.
    Linkage,
}

fn union_vertices(g: &Graph, paths: &[Path], mode: ExpressMode) -> Vec<Vertex> {
    let mut keep = vec![false; g.n()];
    for p in paths {
        for &v in p {
            keep[v] = true;
        }
    }
    if mode == ExpressMode::Linkage {
        for p in paths {
            keep[p[0]] = false;
            keep[p[p.len() - 1]] = false;
        }
    }
    g.vertices().filter(|&v| keep[v]).collect()
}

/// First vertex outside the paths with four or more neighbours on one path,
/// with that path's index.
pub fn shortcut_witness(g: &Graph, paths: &[Path]) -> Option<(Vertex, usize)> {
    let mut on = vec![false; g.n()];
    for &v in paths.iter().flatten() {
        on[v] = true;
    }
    g.vertices()
        .filter(|&v| !on[v])
        .find_map(|v| neighbour_heavy_path(g, paths, v).map(|i| (v, i)))
}

fn neighbour_heavy_path(g: &Graph, paths: &[Path], v: Vertex) -> Option<usize> {
    paths
        .iter()
        .position(|p| p.iter().filter(|&&x| g.has_edge(v, x)).count() >= 4)
}

/// The `2ℓ`-core of the induced union: non-empty exactly when the union is
/// not `(2ℓ − 1)`-degenerate.
pub fn dense_witness(g: &Graph, paths: &[Path], mode: ExpressMode) -> Option<Vec<Vertex>> {
    let union = g.induced_subgraph(&union_vertices(g, paths, mode));
    let core = union.graph.core_vertices(2 * paths.len());
    (!core.is_empty()).then(|| {
        let mut h = union.lift(&core);
        h.sort_unstable();
        h
    })
}

/// Condition (i): outside vertices see at most three vertices of each path.
/// Condition (ii): the induced union is `(2ℓ − 1)`-degenerate.
pub fn is_express(g: &Graph, paths: &[Path], mode: ExpressMode) -> Result<Verdict> {
    for (i, p) in paths.iter().enumerate() {
        check_path(g, p).map_err(|why| Error::InvalidParameter(format!("path {i}: {why}")))?;
    }
    if let Some((v, i)) = shortcut_witness(g, paths) {
        let c = paths[i].iter().filter(|&&x| g.has_edge(v, x)).count();
        return Ok(Verdict::fail(
            "outside neighbours",
            format!("vertex {v} has {c} neighbours on path {i}"),
        ));
    }
    let union = g.induced_subgraph(&union_vertices(g, paths, mode));
    let d = union.graph.degeneracy().d;
    if !union.graph.is_null() && d + 1 > 2 * paths.len() {
        return Ok(Verdict::fail(
            "degeneracy",
            format!("induced union is {d}-degenerate, above {}", 2 * paths.len() as i64 - 1),
        ));
    }
    Ok(Verdict::Valid)
}

/// Reroutes the first path on which `v` has four or more neighbours through
/// `v`, between its first and last neighbour on that path. If `v` lies in
/// `a` the new path starts at `v`; if in `b` it ends at `v`.
pub fn improve_shortcut(g: &Graph, a: &[Vertex], b: &[Vertex], paths: &[Path], v: Vertex) -> Result<Vec<Path>> {
    let (in_a, in_b) = sides(g, a, b)?;
    require_valid(ab_verdict(g, &in_a, &in_b, paths))?;
    g.check_vertex(v)?;
    if paths.iter().flatten().any(|&x| x == v) {
        return Err(Error::InvalidWitness(format!("vertex {v} lies on a path")));
    }
    let i = neighbour_heavy_path(g, paths, v)
        .ok_or_else(|| Error::InvalidWitness(format!("vertex {v} has at most 3 neighbours on every path")))?;
    Ok(shortcut(g, &in_a, &in_b, paths, v, i))
}

fn shortcut(g: &Graph, in_a: &[bool], in_b: &[bool], paths: &[Path], v: Vertex, i: usize) -> Vec<Path> {
    let p = &paths[i];
    let first = p.iter().position(|&x| g.has_edge(v, x)).expect("v has neighbours on p");
    let last = p
        .iter()
        .rposition(|&x| g.has_edge(v, x))
        .expect("v has neighbours on p");
    let mut q = Vec::new();
    if !in_a[v] {
        q.extend_from_slice(&p[..=first]);
    }
    q.push(v);
    if !in_b[v] {
        q.extend_from_slice(&p[last..]);
    }
    debug_assert!(q.len() < p.len());
    let mut out = paths.to_vec();
    out[i] = q;
    out
}

/// Rewires along a directed cycle of the auxiliary digraph built from `h`,
/// a vertex set of the union with minimum degree at least `2ℓ` in `G[h]`.
///
/// On path `i`, `u_i` and `v_i` are the first two vertices of `h`. There is
/// an arc `i → j` when `u_i` has a neighbour in `h` on path `j` beyond `v_j`
/// (for `j = i` this is a chord). Each node follows its first arc, to the
/// farthest such neighbour `w`. Along the cycle, path `i` keeps its start up
/// to `u_i` and jumps to the tail of path `j` from `w`.
pub fn improve_cycle_rewire(g: &Graph, a: &[Vertex], b: &[Vertex], paths: &[Path], h: &[Vertex]) -> Result<Vec<Path>> {
    let (in_a, in_b) = sides(g, a, b)?;
    require_valid(ab_verdict(g, &in_a, &in_b, paths))?;
    g.check_vertices(h)?;
    rewire(g, paths, h).map(|(out, _)| out)
}

fn rewire(g: &Graph, paths: &[Path], h: &[Vertex]) -> Result<(Vec<Path>, Vec<usize>)> {
    let l = paths.len();
    let mut in_h = vec![false; g.n()];
    for &v in h {
        in_h[v] = true;
    }
    let mut on = vec![false; g.n()];
    for &v in paths.iter().flatten() {
        on[v] = true;
    }
    if let Some(&v) = h.iter().find(|&&v| !on[v]) {
        return Err(Error::InvalidWitness(format!("vertex {v} is not on a path")));
    }
    for &v in h {
        let d = g.neighbors(v).iter().filter(|&&w| in_h[w]).count();
        if d < 2 * l {
            return Err(Error::InvalidWitness(format!(
                "vertex {v} has degree {d} in the witness, below {}",
                2 * l
            )));
        }
    }
    // Positions of witness vertices along each path.
    let hits: Vec<Vec<usize>> = paths
        .iter()
        .map(|p| (0..p.len()).filter(|&k| in_h[p[k]]).collect())
        .collect();
    let in_d: Vec<bool> = hits.iter().map(|x| x.len() >= 2).collect();
    let Some(start) = (0..l).find(|&i| in_d[i]) else {
        return Err(Error::InvalidWitness("auxiliary digraph has no vertex".into()));
    };
    let arc = |i: usize| -> Option<(usize, usize)> {
        let u = paths[i][hits[i][0]];
        (0..l).filter(|&j| in_d[j]).find_map(|j| {
            hits[j][2..]
                .iter()
                .rev()
                .find(|&&k| g.has_edge(u, paths[j][k]))
                .map(|&k| (j, k))
        })
    };
    // Follow arcs until a node repeats.
    let mut seen = vec![usize::MAX; l];
    let mut walk: Vec<(usize, usize, usize)> = Vec::new();
    let mut i = start;
    while seen[i] == usize::MAX {
        seen[i] = walk.len();
        let (j, k) = arc(i).ok_or_else(|| Error::Oracle(format!("auxiliary node {i} has no arc")))?;
        walk.push((i, j, k));
        i = j;
    }
    let cycle = &walk[seen[i]..];
    let mut out = paths.to_vec();
    for &(i, j, k) in cycle {
        let mut q = paths[i][..=hits[i][0]].to_vec();
        q.extend_from_slice(&paths[j][k..]);
        out[i] = q;
    }
    debug_assert!(total_length(&out) < total_length(paths));
    Ok((out, cycle.iter().map(|&(i, _, _)| i).collect()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum Move {
    Shortcut { vertex: Vertex, path: usize },
    Rewire { cycle: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Descent {
    pub paths: Vec<Path>,
    pub moves: Vec<Move>,
    pub initial_length: usize,
    pub final_length: usize,
}

/// Applies shortcut moves, then rewires, until neither witness exists.
/// Every move strictly shortens the system, so this stops after at most
/// the initial total length many moves, and the fixed point is express.
pub fn geodesic_descent(g: &Graph, a: &[Vertex], b: &[Vertex], start: &[Path]) -> Result<Descent> {
    let (in_a, in_b) = sides(g, a, b)?;
    require_valid(ab_verdict(g, &in_a, &in_b, start))?;
    let initial_length = total_length(start);
    let mut paths = start.to_vec();
    let mut moves = Vec::new();
    loop {
        if let Some((v, i)) = shortcut_witness(g, &paths) {
            paths = shortcut(g, &in_a, &in_b, &paths, v, i);
            moves.push(Move::Shortcut { vertex: v, path: i });
        } else if let Some(h) = dense_witness(g, &paths, ExpressMode::AbPaths) {
            let (next, cycle) = rewire(g, &paths, &h)?;
            paths = next;
            moves.push(Move::Rewire { cycle });
        } else {
            break;
        }
    }
    if let Verdict::Invalid(why) = ab_verdict(g, &in_a, &in_b, &paths) {
        return Err(Error::Oracle(format!("descent broke the path system: {why:?}")));
    }
    if let Verdict::Invalid(why) = is_express(g, &paths, ExpressMode::AbPaths)? {
        return Err(Error::Oracle(format!("descent fixed point is not express: {why:?}")));
    }
    let final_length = total_length(&paths);
    Ok(Descent {
        paths,
        moves,
        initial_length,
        final_length,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkageDescent {
    pub linkage: Linkage,
    /// Pairs the returned paths actually join. Rewiring may exchange sinks
    /// between pairs, so these can differ from the input pairs.
    pub pairs: Vec<(Vertex, Vertex)>,
    pub moves: Vec<Move>,
    pub initial_length: usize,
    pub final_length: usize,
}

/// Twin expansion of a linkage instance: each terminal occurrence on a pair
/// with distinct ends becomes its own vertex adjacent to the neighbourhood of
/// the terminal, and the terminal itself is dropped. The first twin of a
/// vertex reuses its label, so instances with distinct terminals map to
/// themselves.
struct Twins {
    graph: Graph,
    original: Vec<Vertex>,
    sources: Vec<Vertex>,
    sinks: Vec<Vertex>,
}

fn twin_expand(g: &Graph, spec: &LinkageSpec, proper: &[usize]) -> Twins {
    let n = g.n();
    let mut terminal = vec![false; n];
    for v in spec.terminals() {
        terminal[v] = true;
    }
    let mut copies: Vec<Vec<Vertex>> = (0..n).map(|v| if terminal[v] { Vec::new() } else { vec![v] }).collect();
    let mut original: Vec<Vertex> = (0..n).collect();
    let mut twin = |x: Vertex, copies: &mut Vec<Vec<Vertex>>| {
        let id = if copies[x].is_empty() {
            x
        } else {
            original.push(x);
            original.len() - 1
        };
        copies[x].push(id);
        id
    };
    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    for &i in proper {
        let (s, t) = spec.pairs[i];
        sources.push(twin(s, &mut copies));
        sinks.push(twin(t, &mut copies));
    }
    let mut edges = Vec::new();
    for (x, y) in g.edges() {
        for &p in &copies[x] {
            for &q in &copies[y] {
                edges.push((p, q));
            }
        }
    }
    let graph = Graph::from_edges(original.len(), edges).expect("twin edges are simple");
    Twins {
        graph,
        original,
        sources,
        sinks,
    }
}

/// Geodesic descent for a linkage, run on the twin expansion (see
/// [`Twins`]) and projected back. Degenerate pairs stay single vertices.
pub fn geodesic_descent_linkage(g: &Graph, spec: &LinkageSpec, start: &Linkage) -> Result<LinkageDescent> {
    spec.validate(g)?;
    if spec.parity.is_some() {
        return Err(Error::InvalidParameter(
            "descent moves do not preserve a parity pattern".into(),
        ));
    }
    require_valid(verify_linkage_unchecked(g, spec, start))?;
    let proper: Vec<usize> = (0..spec.len()).filter(|&i| !spec.is_degenerate(i)).collect();
    let tw = twin_expand(g, spec, &proper);
    let lifted: Vec<Path> = proper
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let mut p = start.paths[i].clone();
            if p[0] != spec.pairs[i].0 {
                p.reverse();
            }
            let mut q = vec![tw.sources[k]];
            q.extend_from_slice(interior(&p));
            q.push(tw.sinks[k]);
            q
        })
        .collect();
    let run = geodesic_descent(&tw.graph, &tw.sources, &tw.sinks, &lifted)?;
    let mut paths: Vec<Path> = spec.pairs.iter().map(|&(s, _)| vec![s]).collect();
    let mut pairs = spec.pairs.clone();
    for (k, &i) in proper.iter().enumerate() {
        let mut p: Path = run.paths[k].iter().map(|&x| tw.original[x]).collect();
        let end = p[p.len() - 1];
        if end == p[0] {
            p.truncate(1);
        }
        pairs[i] = (p[0], end);
        paths[i] = p;
    }
    let linkage = Linkage { paths };
    require_valid(verify_linkage_unchecked(g, &LinkageSpec::new(pairs.clone()), &linkage))
        .map_err(|e| Error::Oracle(format!("projected descent is not a linkage: {e}")))?;
    let final_length = linkage.total_length();
    Ok(LinkageDescent {
        linkage,
        pairs,
        moves: run.moves,
        initial_length: start.total_length(),
        final_length,
    })
}
