use std::collections::BTreeSet;

use minorkit::coloring::{Color, ListAssignment};
use minorkit::constructions::{
    brute_max_connectivity_subgraph, check_near_bipartite_witness, check_unbalanced_bound, eval_f, eval_g,
    find_noncolorable_connected_core, logbip2_extract, mader_extract, majority_bipartite_minor,
    minimal_unbalanced_constant, small_conn_cover, verify_railroad, ConstantsConfig, CoverOutcome, FunctionTable,
    Railroad,
};
use minorkit::enumerate::{canonical_form, graphs_up_to};
use minorkit::generate::{complete, complete_bipartite, gnp, grid, rng};
use minorkit::minors::{find_clique_minor, verify_expansion, BranchEdge, Expansion, Pattern, Tree};
use minorkit::{Error, Graph, Search, Vertex, DEFAULT_BUDGET};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

/// κ by removing every vertex subset, smallest first.
fn oracle_kappa(g: &Graph) -> usize {
    let n = g.n();
    for size in 0..n.saturating_sub(1) {
        for mask in 0u32..1 << n {
            if mask.count_ones() as usize != size {
                continue;
            }
            let gone: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if !g.remove_vertices(&gone).graph.is_connected() {
                return size;
            }
        }
    }
    n.saturating_sub(1)
}

fn oracle_max_kappa(g: &Graph) -> usize {
    (1u32..1 << g.n())
        .map(|mask| {
            let keep: Vec<Vertex> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
            oracle_kappa(&g.induced_subgraph(&keep).graph)
        })
        .max()
        .unwrap_or(0)
}

fn oracle_colourable(g: &Graph, lists: &[Vec<Color>]) -> bool {
    fn go(g: &Graph, lists: &[Vec<Color>], v: usize, c: &mut Vec<Color>) -> bool {
        if v == g.n() {
            return true;
        }
        for &x in &lists[v] {
            if g.neighbors(v).iter().all(|&w| w >= v || c[w] != x) {
                c[v] = x;
                if go(g, lists, v + 1, c) {
                    return true;
                }
            }
        }
        false
    }
    go(g, lists, 0, &mut vec![0; g.n()])
}

#[test]
fn frozen_control_values() {
    let cfg = ConstantsConfig::default();
    // 49·(1 + log(7·√(log 3)))^6 evaluated at 40 digits.
    let f3 = eval_f(&cfg, 3.0).unwrap();
    assert!((f3 - 35219.1584327).abs() < 1e-6, "{f3}");
    let mut last = 0.0;
    for s in 1..=1000 {
        let g = eval_g(&cfg, s as f64).unwrap();
        assert!(g >= last);
        last = g;
    }
}

#[test]
fn smallconn_inequality_grows_like_the_sixth_power() {
    // f(t)/(log log t)^6 falls toward 49/64 while f(t)/log log t keeps
    // growing, so the linear inequality fails on the whole range.
    let table = FunctionTable {
        cfg: ConstantsConfig::default(),
    };
    let mut last = f64::INFINITY;
    for e in 2..40 {
        let t = 2f64.powi(e);
        let f = table.f(t).unwrap();
        let ratio = f / t.ln().ln().powi(6);
        assert!(ratio < last);
        assert!(ratio > 49.0 / 64.0);
        last = ratio;
        assert!(!table.smallconn_bound_holds(t).unwrap());
    }
}

/// A `K_{a,b}` expansion with multi-vertex trees on both sides and random
/// noise edges.
fn kab_expansion(a: usize, b: usize, seed: u64) -> (Graph, Expansion) {
    let mut r = rng(seed, 11);
    let mut next = 0;
    let mut trees = Vec::new();
    for node in 0..a + b {
        let size = if node < a {
            r.random_range(2..=4)
        } else {
            r.random_range(1..=3)
        };
        let vertices: Vec<Vertex> = (next..next + size).collect();
        next += size;
        let edges = (1..size)
            .map(|i| (vertices[r.random_range(0..i)], vertices[i]))
            .collect();
        trees.push(Tree { vertices, edges });
    }
    let mut branch_edges = Vec::new();
    for i in 0..a {
        for j in a..a + b {
            let x = *trees[i].vertices.choose(&mut r).unwrap();
            let y = *trees[j].vertices.choose(&mut r).unwrap();
            branch_edges.push(BranchEdge {
                pattern_edge: (i, j),
                edge: (x, y),
            });
        }
    }
    let noise = gnp(next, 0.05, &mut r);
    let edges = trees
        .iter()
        .flat_map(|t| t.edges.iter().copied())
        .chain(branch_edges.iter().map(|be| be.edge))
        .chain(noise.edges());
    let g = Graph::from_edges(next, edges).unwrap();
    let e = Expansion {
        pattern: Pattern::CompleteBipartite { s: a, t: b },
        trees,
        branch_edges,
        roots: None,
        bipartite: None,
        odd: None,
    };
    (g, e)
}

/// BFS 2-colouring of the union of an expansion.
fn union_is_bipartite(e: &Expansion) -> bool {
    let verts: Vec<Vertex> = e.vertices().into_iter().collect();
    let n = verts.iter().max().map_or(0, |m| m + 1);
    let g = Graph::from_edges(n, e.union_edges()).unwrap();
    g.is_bipartite()
}

#[test]
fn majority_recolouring_on_generated_expansions() {
    for seed in 0..200 {
        let a = 2 + (seed as usize % 4);
        let b = 1 + (seed as usize % 5);
        let (g, e) = kab_expansion(a, b, seed);
        assert!(verify_expansion(&g, &e).unwrap().is_valid());
        let out = majority_bipartite_minor(&g, &e).unwrap();
        assert!(verify_expansion(&g, &out).unwrap().is_valid());
        assert!(out.bipartite.is_some());
        assert!(union_is_bipartite(&out), "seed {seed}");
        let kept: BTreeSet<(usize, usize)> = out.branch_edges.iter().map(|be| be.pattern_edge).collect();
        for j in a..a + b {
            let legs = kept.iter().filter(|&&(_, y)| y == j).count();
            assert!(2 * legs >= a, "seed {seed}: B-node {j} keeps {legs} of {a}");
        }
        assert!(kept
            .iter()
            .all(|be| e.branch_edges.iter().any(|old| old.pattern_edge == *be)));
    }
}

#[test]
fn majority_rejects_a_broken_expansion() {
    let (g, mut e) = kab_expansion(4, 3, 1);
    e.branch_edges.pop();
    assert!(matches!(
        majority_bipartite_minor(&g, &e),
        Err(Error::InvalidWitness(_))
    ));
}

#[test]
fn connectivity_oracle_matches_subset_removal() {
    for g in graphs_up_to(6) {
        let (verts, kappa) = brute_max_connectivity_subgraph(&g).unwrap();
        assert_eq!(kappa, oracle_max_kappa(&g), "{g:?}");
        assert_eq!(oracle_kappa(&g.induced_subgraph(&verts).graph), kappa);
    }
}

#[test]
fn mader_extract_matches_the_oracle() {
    let mut r = rng(3, 12);
    for _ in 0..300 {
        let n = r.random_range(1..=10);
        let g = gnp(n, r.random_range(0.1..0.9), &mut r);
        let (_, best) = brute_max_connectivity_subgraph(&g).unwrap();
        for k in 1..=4 {
            let got = mader_extract(&g, k);
            assert_eq!(got.is_some(), best >= k, "{g:?} k={k}");
            if let Some(h) = got {
                assert!(oracle_kappa(&g.induced_subgraph(&h).graph) >= k);
            }
        }
    }
}

/// Every forest on up to `n` vertices, one per isomorphism class, built by
/// attaching leaves and adding isolated vertices.
fn forests(max_n: usize) -> Vec<Graph> {
    let mut seen = BTreeSet::new();
    let mut layer = vec![Graph::new(0)];
    let mut out = Vec::new();
    for n in 1..=max_n {
        let mut next = Vec::new();
        for f in &layer {
            let edges: Vec<(Vertex, Vertex)> = f.edges().collect();
            let grown = std::iter::once(Graph::from_edges(n, edges.clone()).unwrap())
                .chain((0..f.n()).map(|v| Graph::from_edges(n, edges.iter().copied().chain([(v, n - 1)])).unwrap()));
            for g in grown {
                if seen.insert((n, canonical_form(&g))) {
                    next.push(g);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Every 2-colouring of `g`, up to swapping the two sides.
fn bipartitions(g: &Graph) -> Vec<(Vec<Vertex>, Vec<Vertex>)> {
    let comps = g.components();
    let base = g.bipartition().unwrap();
    let side: Vec<bool> = g.vertices().map(|v| base.1.contains(&v)).collect();
    (0u32..1 << comps.len().saturating_sub(1))
        .map(|flips| {
            let mut s = side.clone();
            for (i, c) in comps.iter().enumerate().skip(1) {
                if flips >> (i - 1) & 1 == 1 {
                    for &v in c {
                        s[v] = !s[v];
                    }
                }
            }
            (
                g.vertices().filter(|&v| !s[v]).collect(),
                g.vertices().filter(|&v| s[v]).collect(),
            )
        })
        .collect()
}

#[test]
fn unbalanced_bound_on_minor_free_bipartite_graphs() {
    let all = forests(10);
    // Known counts of unlabelled forests on 1..=10 vertices.
    let counts: Vec<usize> = (1..=10).map(|n| all.iter().filter(|g| g.n() == n).count()).collect();
    assert_eq!(counts, vec![1, 2, 3, 6, 10, 20, 37, 76, 153, 329]);
    let mut minimal: f64 = 0.0;
    for g in &all {
        assert!(find_clique_minor(g, 3, DEFAULT_BUDGET).unwrap().is_proven_absent());
        for (a, b) in bipartitions(g) {
            minimal = minimal.max(minimal_unbalanced_constant(g, &a, &b, 3).unwrap());
        }
    }
    // A forest has fewer edges than vertices, so no positive constant is needed.
    assert_eq!(minimal, 0.0);
    for g in &all {
        for (a, b) in bipartitions(g) {
            assert!(check_unbalanced_bound(g, &a, &b, 3, f64::MIN_POSITIVE).unwrap().holds);
        }
    }
}

#[test]
fn logbip2_fixture_and_violation() {
    let cfg = ConstantsConfig::default();
    let nb = (cfg.c_logbip2 * 3f64.ln() * 6.0).ceil() as usize;
    let g = complete_bipartite(6, nb);
    let a: Vec<Vertex> = (0..6).collect();
    let b: Vec<Vertex> = (6..6 + nb).collect();
    let e = logbip2_extract(&g, &a, &b, 3, &cfg, DEFAULT_BUDGET)
        .unwrap()
        .found()
        .unwrap();
    assert!(verify_expansion(&g, &e).unwrap().is_valid());
    assert!(e.bipartite.is_some());
    let few = complete_bipartite(6, 2);
    assert!(matches!(
        logbip2_extract(&few, &a, &[6, 7], 3, &cfg, DEFAULT_BUDGET),
        Err(Error::HypothesisNotMet(_))
    ));
}

fn random_railroad(seed: u64) -> (Graph, Railroad) {
    let mut r = rng(seed, 13);
    let (rows, cols) = (r.random_range(2..=6), r.random_range(2..=6));
    let base = grid(rows, cols);
    let extra = gnp(rows * cols, 0.05, &mut r);
    let g = Graph::from_edges(rows * cols, base.edges().chain(extra.edges())).unwrap();
    let row = |i: usize| (0..cols).map(|j| i * cols + j).collect::<Vec<_>>();
    let col = |j: usize| (0..rows).map(|i| i * cols + j).collect::<Vec<_>>();
    let inbound = (0..rows).filter(|_| r.random_bool(0.5)).map(row).collect();
    let outbound = (0..cols).filter(|_| r.random_bool(0.3)).map(col).collect();
    let stations = (0..rows * cols).filter(|_| r.random_bool(0.2)).collect();
    (
        g,
        Railroad {
            stations,
            inbound,
            outbound,
            width: r.random_range(1..=2),
            length: r.random_range(1..=2),
        },
    )
}

#[test]
fn railroads_stay_valid_when_tracks_are_retired() {
    let mut valid = 0;
    for seed in 0..300 {
        let (g, rr) = random_railroad(seed);
        if !verify_railroad(&g, &rr).unwrap().is_valid() {
            continue;
        }
        valid += 1;
        for (outbound, count) in [(false, rr.inbound.len()), (true, rr.outbound.len())] {
            for i in 0..count {
                let less = rr.retire_track(outbound, i);
                assert!(verify_railroad(&g, &less).unwrap().is_valid(), "seed {seed}");
            }
        }
    }
    assert!(valid > 50, "{valid}");
}

#[test]
fn dropping_a_track_outright_can_break_a_railroad() {
    // Every vertex of the star is its own track. Dropping the centre's track
    // leaves it outside, touching five tracks where width 1 allows four.
    let g = minorkit::generate::star(5);
    let rr = Railroad {
        inbound: (0..=5).map(|v| vec![v]).collect(),
        width: 1,
        length: 1,
        ..Railroad::default()
    };
    assert!(verify_railroad(&g, &rr).unwrap().is_valid());
    let mut dropped = rr.clone();
    dropped.inbound.remove(0);
    assert_eq!(verify_railroad(&g, &dropped).unwrap().clause(), Some("track incidence"));
    assert!(verify_railroad(&g, &rr.retire_track(false, 0)).unwrap().is_valid());
}

#[test]
fn near_bipartite_witness_implies_a_bipartite_component() {
    let mut r = rng(5, 14);
    let mut positive = 0;
    for _ in 0..300 {
        let n = r.random_range(8..=24);
        let tree = minorkit::generate::random_tree(n, &mut r);
        let extra = gnp(n, r.random_range(0.0..0.1), &mut r);
        let g = Graph::from_edges(n, tree.edges().chain(extra.edges())).unwrap();
        let x: Vec<Vertex> = (0..n).filter(|_| r.random_bool(0.1)).collect();
        if check_near_bipartite_witness(&g, &x, 1).unwrap() {
            positive += 1;
            assert!(x.len() <= 6);
            let rest = g.remove_vertices(&x);
            let ok = rest.graph.components().into_iter().any(|c| {
                let sub = rest.graph.induced_subgraph(&c).graph;
                c.len() >= 10
                    && sub.bipartition().is_some_and(|(a, b)| {
                        sub.edges().all(|(u, v)| a.contains(&u) != a.contains(&v)) && a.len() + b.len() == c.len()
                    })
            });
            assert!(ok);
        }
    }
    assert!(positive > 20, "{positive}");
}

#[test]
fn noncolourable_graphs_have_connected_cores() {
    let mut r = rng(9, 15);
    let mut checked = 0;
    for _ in 0..200 {
        // Near-cliques on six or seven vertices with 5-lists from 6 colours.
        let n = r.random_range(6..=7);
        let holes = gnp(n, r.random_range(0.0..0.15), &mut r);
        let g = Graph::from_edges(n, complete(n).edges().filter(|&(u, v)| !holes.has_edge(u, v))).unwrap();
        let lists: Vec<Vec<Color>> = (0..n)
            .map(|_| {
                let mut p: Vec<Color> = (1..=6).collect();
                p.shuffle(&mut r);
                let mut l = p[..5].to_vec();
                l.sort();
                l
            })
            .collect();
        if oracle_colourable(&g, &lists) {
            continue;
        }
        checked += 1;
        let la = ListAssignment::from_lists(lists.iter().cloned().enumerate());
        let Search::Found(core) = find_noncolorable_connected_core(&g, &la, 1, DEFAULT_BUDGET).unwrap() else {
            panic!("no core for a non-colourable graph");
        };
        let sub = g.induced_subgraph(&core.vertices);
        assert!(oracle_kappa(&sub.graph) >= 1 && sub.graph.n() >= 2);
        assert!(core.lists.is_sublist_of(&la));
        let sublists: Vec<Vec<Color>> = core
            .vertices
            .iter()
            .map(|&v| core.lists.get(v).unwrap().iter().copied().collect())
            .collect();
        assert!(sublists.iter().all(|l| l.len() + 4 >= 5));
        assert!(!oracle_colourable(&sub.graph, &sublists));
    }
    assert!(checked > 10, "{checked}");
}

#[test]
fn cover_stops_at_the_missing_stage() {
    let cfg = ConstantsConfig::default();
    for r in 1..=3 {
        for have in 0..=r {
            let edges: Vec<(Vertex, Vertex)> = (0..have)
                .flat_map(|c| {
                    complete(4)
                        .edges()
                        .map(move |(u, v)| (u + 4 * c, v + 4 * c))
                        .collect::<Vec<_>>()
                })
                .collect();
            let g = Graph::from_edges(4 * have + 3, edges).unwrap();
            let lists = ListAssignment::full(&g, 5);
            let out = small_conn_cover(&g, &lists, 3, 3, r, &cfg).unwrap();
            if have == r {
                let CoverOutcome::Cover { parts } = out else {
                    panic!("expected a cover")
                };
                assert_eq!(parts.len(), r);
            } else {
                assert!(matches!(out, CoverOutcome::Absent { stage, .. } if stage == have + 1));
            }
        }
    }
}
