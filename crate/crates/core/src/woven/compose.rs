//! Rerouting a linkage through a woven subgraph while placing a rooted
//! clique minor inside it.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{
    answer_woven_query, build_bipartite_expansion, rooted_expansion_verdict, rooted_model_verdict,
    verify_woven_witness, RootedMinor, WovenQuery, WovenWitness,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::linkage::{verify_linkage, Linkage, LinkageSpec, Path};
use crate::minors::{BranchEdge, Colouring, Expansion, Model, Pattern, Tree};
use crate::search::{Search, Verdict};

/// Answers woven queries on the subgraph the composition routes through.
pub trait WovenOracle: Sync {
    fn answer(&self, h: &Graph, q: &WovenQuery) -> Result<WovenWitness>;
}

/// Exhaustive search; any miss is reported as an oracle failure.
#[derive(Debug, Clone, Copy)]
pub struct BruteForceOracle {
    pub budget: u64,
}

impl WovenOracle for BruteForceOracle {
    fn answer(&self, h: &Graph, q: &WovenQuery) -> Result<WovenWitness> {
        match answer_woven_query(h, q, self.budget)? {
            Search::Found(w) => Ok(w),
            other => Err(Error::Oracle(format!("no woven witness for {q:?}: {}", other.status()))),
        }
    }
}

/// Direct answers on complete graphs: singleton branch sets and one-edge
/// paths, with spare vertices for even paths and for same-class roots.
#[derive(Debug, Clone, Copy, Default)]
pub struct CliqueOracle;

impl WovenOracle for CliqueOracle {
    fn answer(&self, h: &Graph, q: &WovenQuery) -> Result<WovenWitness> {
        q.validate(h)?;
        if !h.is_complete() {
            return Err(Error::Oracle("clique oracle needs a complete graph".into()));
        }
        let mut busy = vec![false; h.n()];
        for v in q.roots.iter().copied().chain(q.pairs.iter().flat_map(|&(s, t)| [s, t])) {
            busy[v] = true;
        }
        let mut spare = h.vertices().filter(|&v| !busy[v]);
        let mut take = || {
            spare
                .next()
                .ok_or_else(|| Error::Oracle("clique has too few spare vertices".into()))
        };
        let spec = q.linkage_spec();
        let mut paths = Vec::new();
        for (i, &(s, t)) in q.pairs.iter().enumerate() {
            paths.push(if s == t {
                vec![s]
            } else if spec.wants_odd(i) == Some(false) {
                vec![s, take()?, t]
            } else {
                vec![s, t]
            });
        }
        let mut sets: Vec<Vec<Vertex>> = q.roots.iter().map(|&r| vec![r]).collect();
        let minor = if q.is_parity() {
            let mut c = Colouring::new();
            let mut first_of_class = [true; 2];
            for (j, &r) in q.roots.iter().enumerate() {
                let k = if q.in_class_a(j) { 0 } else { 1 };
                c.insert(r, k);
                // Two roots of one class are joined through a helper of the
                // other class inside all but the first branch set.
                if !std::mem::replace(&mut first_of_class[k as usize], false) {
                    let x = take()?;
                    c.insert(x, 1 - k);
                    sets[j].push(x);
                }
            }
            RootedMinor::Expansion(build_bipartite_expansion(h, &sets, &q.roots, &c))
        } else {
            RootedMinor::Model(Model::new(Pattern::Complete { t: sets.len() }, sets))
        };
        Ok(WovenWitness {
            minor,
            linkage: Linkage { paths },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Composition {
    pub linkage: Linkage,
    #[serde(flatten)]
    pub minor: RootedMinor,
    /// Paths that met the subgraph and were rerouted through it.
    pub rerouted: Vec<usize>,
}

fn lift_minor(minor: RootedMinor, up: &[Vertex]) -> RootedMinor {
    let v = |x: Vertex| up[x];
    let e = |(x, y): (Vertex, Vertex)| (up[x].min(up[y]), up[x].max(up[y]));
    match minor {
        RootedMinor::Model(m) => RootedMinor::Model(Model {
            pattern: m.pattern,
            branch_sets: m
                .branch_sets
                .iter()
                .map(|s| {
                    let mut s: Vec<Vertex> = s.iter().map(|&x| v(x)).collect();
                    s.sort_unstable();
                    s
                })
                .collect(),
            assignment: m.assignment,
        }),
        RootedMinor::Expansion(x) => RootedMinor::Expansion(Expansion {
            pattern: x.pattern,
            trees: x
                .trees
                .iter()
                .map(|t| Tree {
                    vertices: t.vertices.iter().map(|&a| v(a)).collect(),
                    edges: t.edges.iter().map(|&ed| e(ed)).collect(),
                })
                .collect(),
            branch_edges: x
                .branch_edges
                .iter()
                .map(|b| BranchEdge {
                    pattern_edge: b.pattern_edge,
                    edge: (v(b.edge.0), v(b.edge.1)),
                })
                .collect(),
            roots: x.roots.map(|r| r.iter().map(|&a| v(a)).collect()),
            bipartite: x.bipartite.map(|c| c.iter().map(|(&a, &k)| (v(a), k)).collect()),
            odd: x.odd.map(|c| c.iter().map(|(&a, &k)| (v(a), k)).collect()),
        }),
    }
}

fn compose(
    g: &Graph,
    h: &[Vertex],
    spec: &LinkageSpec,
    p: &Linkage,
    roots: &[Vertex],
    root_classes: Option<&[usize]>,
    oracle: &dyn WovenOracle,
) -> Result<Composition> {
    let plain = LinkageSpec::new(spec.pairs.clone());
    plain.validate(g)?;
    if let Verdict::Invalid(why) = verify_linkage(g, &plain, p)? {
        return Err(Error::InvalidParameter(format!(
            "input linkage: {}: {}",
            why.clause, why.detail
        )));
    }
    g.check_vertices(h)?;
    g.check_vertices(roots)?;
    let sub = g.induced_subgraph(h);
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in sub.to_parent.iter().enumerate() {
        local[v] = i;
    }
    if let Some(&r) = roots.iter().find(|&&r| local[r] == usize::MAX) {
        return Err(Error::InvalidParameter(format!("root {r} is not in the subgraph")));
    }
    // Orient every path from s_i and find its first and last vertex in H.
    let oriented: Vec<Path> = p
        .paths
        .iter()
        .zip(&spec.pairs)
        .map(|(path, &(s, _))| {
            let mut path = path.clone();
            if path[0] != s {
                path.reverse();
            }
            path
        })
        .collect();
    let mut touched = Vec::new();
    let mut cuts = Vec::new();
    for (i, path) in oriented.iter().enumerate() {
        let first = path.iter().position(|&v| local[v] != usize::MAX);
        let last = path.iter().rposition(|&v| local[v] != usize::MAX);
        if let (Some(f), Some(l)) = (first, last) {
            touched.push(i);
            cuts.push((f, l));
        }
    }
    let inner_pairs: Vec<(Vertex, Vertex)> = touched
        .iter()
        .zip(&cuts)
        .map(|(&i, &(f, l))| (local[oriented[i][f]], local[oriented[i][l]]))
        .collect();
    let local_roots: Vec<Vertex> = roots.iter().map(|&r| local[r]).collect();
    let q = match root_classes {
        None => WovenQuery::new(local_roots, inner_pairs),
        Some(classes) => {
            // Inner segments keep the parity of the segments they replace.
            let odd = cuts
                .iter()
                .enumerate()
                .filter(|&(_, &(f, l))| (l - f) % 2 == 1)
                .map(|(k, _)| k)
                .collect();
            WovenQuery::with_parity(local_roots, inner_pairs, classes.to_vec(), odd)
        }
    };
    let w = oracle.answer(&sub.graph, &q)?;
    if let Verdict::Invalid(why) = verify_woven_witness(&sub.graph, &q, &w)? {
        return Err(Error::Oracle(format!("oracle witness: {}: {}", why.clause, why.detail)));
    }
    let mut paths = oriented.clone();
    for (k, (&i, &(f, l))) in touched.iter().zip(&cuts).enumerate() {
        let mut inner: Path = sub.lift(&w.linkage.paths[k]);
        if inner[0] != oriented[i][f] {
            inner.reverse();
        }
        let mut q = oriented[i][..f].to_vec();
        q.extend_from_slice(&inner);
        q.extend_from_slice(&oriented[i][l + 1..]);
        paths[i] = q;
    }
    let linkage = Linkage { paths };
    let minor = lift_minor(w.minor, &sub.to_parent);
    check_composition(g, h, spec, p, roots, root_classes, &linkage, &minor)?;
    Ok(Composition {
        linkage,
        minor,
        rerouted: touched,
    })
}

/// Post-checks: the new linkage realises the same pairs (and, in the parity
/// case, the same path parities), the minor is rooted as asked, and
/// `V(P') ⊆ V(H) ∪ V(P)`, `V(P') ∩ V(M) ⊆ R ∩ V(P)`.
#[allow(clippy::too_many_arguments)]
fn check_composition(
    g: &Graph,
    h: &[Vertex],
    spec: &LinkageSpec,
    p: &Linkage,
    roots: &[Vertex],
    root_classes: Option<&[usize]>,
    out: &Linkage,
    minor: &RootedMinor,
) -> Result<()> {
    let fail = |what: String| Err(Error::Oracle(format!("composition broke {what}")));
    let target = match root_classes {
        None => LinkageSpec::new(spec.pairs.clone()),
        Some(_) => LinkageSpec {
            pairs: spec.pairs.clone(),
            parity: Some(
                p.paths
                    .iter()
                    .enumerate()
                    .filter(|(_, q)| (q.len() - 1) % 2 == 1)
                    .map(|(i, _)| i)
                    .collect(),
            ),
        },
    };
    if let Verdict::Invalid(why) = verify_linkage(g, &target, out)? {
        return fail(format!("the linkage: {}: {}", why.clause, why.detail));
    }
    let minor_verdict = match (minor, root_classes) {
        (RootedMinor::Model(m), None) => rooted_model_verdict(g, m, roots)?,
        (RootedMinor::Expansion(e), Some(classes)) => rooted_expansion_verdict(g, e, roots, |j| classes.contains(&j))?,
        _ => Verdict::fail("witness kind", "minor kind does not match the variant"),
    };
    if let Verdict::Invalid(why) = minor_verdict {
        return fail(format!("the minor: {}: {}", why.clause, why.detail));
    }
    let hv: BTreeSet<Vertex> = h.iter().copied().collect();
    let pv = p.vertices();
    let new_v = out.vertices();
    if let Some(v) = new_v.iter().find(|v| !hv.contains(v) && !pv.contains(v)) {
        return fail(format!("containment: vertex {v} is outside H and the old linkage"));
    }
    let rv: BTreeSet<Vertex> = roots.iter().copied().collect();
    if let Some(v) = new_v
        .intersection(&minor.vertices())
        .find(|v| !(rv.contains(v) && pv.contains(v)))
    {
        return fail(format!("separation: vertex {v} is on both the linkage and the minor"));
    }
    Ok(())
}

/// Replaces the middle of every path meeting `h` (from its first to its last
/// vertex in `h`) by a path the oracle routes inside `h`, alongside a `K_a`
/// model rooted at `roots`. `h` is used as an induced subgraph.
pub fn compose_through_woven(
    g: &Graph,
    h: &[Vertex],
    spec: &LinkageSpec,
    p: &Linkage,
    roots: &[Vertex],
    oracle: &dyn WovenOracle,
) -> Result<Composition> {
    compose(g, h, spec, p, roots, None, oracle)
}

/// As [`compose_through_woven`], asking the oracle for inner segments of
/// the same parity as the ones they replace, so every path keeps its parity,
/// and for a bipartite expansion whose class 0 meets the roots exactly in
/// `root_classes`.
pub fn compose_through_parity_woven(
    g: &Graph,
    h: &[Vertex],
    spec: &LinkageSpec,
    p: &Linkage,
    roots: &[Vertex],
    root_classes: &[usize],
    oracle: &dyn WovenOracle,
) -> Result<Composition> {
    compose(g, h, spec, p, roots, Some(root_classes), oracle)
}
