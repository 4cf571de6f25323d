//! Constructive transformations and statement-level checks: majority
//! recolouring, connected-subgraph extraction, unbalanced bipartite bounds,
//! railroads and near-bipartite witnesses.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::minors::{verify_expansion, BranchEdge, Colouring, Expansion, Pattern};
use crate::search::Search;

mod connectivity;
mod railroad;

pub use connectivity::{
    brute_max_connectivity_subgraph, find_noncolorable_connected_core, mader_extract, small_conn_cover, CoverOutcome,
    NoncolorableCore, BRUTE_CONNECTIVITY_BOUND, CORE_BOUND,
};
pub use railroad::{check_near_bipartite_witness, verify_railroad, Railroad};

/// Every unspecified constant, with a default of 1 unless a value is known.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConstantsConfig {
    pub c_newforced: f64,
    pub c_smallconn: f64,
    pub c_logbip: f64,
    pub c_logbip2: f64,
    pub c_logbip3: f64,
    pub c_linked: f64,
    pub c_woven: f64,
    pub c_paritywoven: f64,
    #[serde(rename = "c_largeL")]
    pub c_large_l: f64,
    pub c_listprob: f64,
    pub c_inseparable: f64,
    pub c_separable: f64,
    pub c_rooted2: f64,
    /// Density forcing a `K_t` minor, as a multiple of `t·√(log t)`.
    pub c_density: f64,
    /// Density forcing a bipartite `K_t` minor, same scale.
    pub c_bipartite_density: f64,
}

impl Default for ConstantsConfig {
    fn default() -> Self {
        ConstantsConfig {
            c_newforced: 1.0,
            c_smallconn: 1.0,
            c_logbip: 1.0,
            c_logbip2: 1.0,
            c_logbip3: 1.0,
            c_linked: 1.0,
            c_woven: 1.0,
            c_paritywoven: 1.0,
            c_large_l: 1.0,
            c_listprob: 1.0,
            c_inseparable: 1.0,
            c_separable: 1.0,
            c_rooted2: 1.0,
            c_density: 3.2,
            c_bipartite_density: 7.0,
        }
    }
}

impl ConstantsConfig {
    /// Parses `key = number` lines; missing keys keep their defaults.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ConstantsConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &FsPath) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("c_newforced", self.c_newforced),
            ("c_smallconn", self.c_smallconn),
            ("c_logbip", self.c_logbip),
            ("c_logbip2", self.c_logbip2),
            ("c_logbip3", self.c_logbip3),
            ("c_linked", self.c_linked),
            ("c_woven", self.c_woven),
            ("c_paritywoven", self.c_paritywoven),
            ("c_largeL", self.c_large_l),
            ("c_listprob", self.c_listprob),
            ("c_inseparable", self.c_inseparable),
            ("c_separable", self.c_separable),
            ("c_rooted2", self.c_rooted2),
            ("c_density", self.c_density),
            ("c_bipartite_density", self.c_bipartite_density),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        match self.entries().into_iter().find(|(_, v)| !(v.is_finite() && *v > 0.0)) {
            Some((k, v)) => Err(Error::Config(format!("{k} = {v} must be a positive number"))),
            None => Ok(()),
        }
    }
}

/// `g(s) = c_newforced·(1 + log s)^6` for `s ≥ 1`.
pub fn eval_g(cfg: &ConstantsConfig, s: f64) -> Result<f64> {
    if !(s >= 1.0 && s.is_finite()) {
        return Err(Error::Domain(format!("g needs s ≥ 1, got {s}")));
    }
    Ok(cfg.c_newforced * (1.0 + s.ln()).powi(6))
}

/// `f(t) = 49·g(7·√(log t))` for `t ≥ 3`.
pub fn eval_f(cfg: &ConstantsConfig, t: f64) -> Result<f64> {
    if !(t >= 3.0 && t.is_finite()) {
        return Err(Error::Domain(format!("f needs t ≥ 3, got {t}")));
    }
    Ok(49.0 * eval_g(cfg, 7.0 * t.ln().sqrt())?)
}

/// The control functions under one configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionTable {
    pub cfg: ConstantsConfig,
}

impl FunctionTable {
    pub fn g(&self, s: f64) -> Result<f64> {
        eval_g(&self.cfg, s)
    }

    pub fn f(&self, t: f64) -> Result<f64> {
        eval_f(&self.cfg, t)
    }

    /// Whether `f(t) ≤ c_smallconn·log log t` at `t`.
    pub fn smallconn_bound_holds(&self, t: f64) -> Result<bool> {
        Ok(self.f(t)? <= self.cfg.c_smallconn * t.ln().ln())
    }
}

/// One step up in the last place, so a computed bound is never below the
/// exact one by rounding.
fn round_up(x: f64) -> f64 {
    if x.is_finite() && x > 0.0 {
        f64::from_bits(x.to_bits() + 1)
    } else {
        x
    }
}

fn check_bipartition(g: &Graph, a_side: &[Vertex], b_side: &[Vertex]) -> Result<()> {
    g.check_vertices(a_side)?;
    g.check_vertices(b_side)?;
    let mut side = vec![None; g.n()];
    for (s, set) in [(0u8, a_side), (1, b_side)] {
        for &v in set {
            if side[v].is_some() {
                return Err(Error::NotABipartition(format!("vertex {v} listed twice")));
            }
            side[v] = Some(s);
        }
    }
    if let Some(v) = g.vertices().find(|&v| side[v].is_none()) {
        return Err(Error::NotABipartition(format!("vertex {v} on neither side")));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| side[u] == side[v]) {
        return Err(Error::NotABipartition(format!("edge {u}-{v} inside one side")));
    }
    Ok(())
}

/// Both sides of `e(G) ≤ c·t·√(log t)·√(|A||B|) + (t − 2)·v(G)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnbalancedBound {
    pub lhs: usize,
    /// Rounded up by one ulp.
    pub rhs: f64,
    pub holds: bool,
}

pub fn check_unbalanced_bound(
    g: &Graph,
    a_side: &[Vertex],
    b_side: &[Vertex],
    t: usize,
    c: f64,
) -> Result<UnbalancedBound> {
    check_bipartition(g, a_side, b_side)?;
    if t < 3 {
        return Err(Error::InvalidParameter(format!("t = {t} must be at least 3")));
    }
    let tf = t as f64;
    let rhs = c * tf * tf.ln().sqrt() * ((a_side.len() * b_side.len()) as f64).sqrt() + ((t - 2) * g.n()) as f64;
    let rhs = round_up(rhs);
    Ok(UnbalancedBound {
        lhs: g.m(),
        rhs,
        holds: g.m() as f64 <= rhs,
    })
}

/// Smallest `c ≥ 0` for which the unbalanced bound holds on this graph.
pub fn minimal_unbalanced_constant(g: &Graph, a_side: &[Vertex], b_side: &[Vertex], t: usize) -> Result<f64> {
    check_bipartition(g, a_side, b_side)?;
    if t < 3 {
        return Err(Error::InvalidParameter(format!("t = {t} must be at least 3")));
    }
    let excess = g.m() as f64 - ((t - 2) * g.n()) as f64;
    let scale = t as f64 * (t as f64).ln().sqrt() * ((a_side.len() * b_side.len()) as f64).sqrt();
    Ok(if excess <= 0.0 { 0.0 } else { excess / scale })
}

/// A `K_t` model in a bipartite graph whose `B` side is large and has high
/// degree into `A`, as a bipartite expansion.
pub fn logbip2_extract(
    g: &Graph,
    a_side: &[Vertex],
    b_side: &[Vertex],
    t: usize,
    cfg: &ConstantsConfig,
    budget: u64,
) -> Result<Search<Expansion>> {
    check_bipartition(g, a_side, b_side)?;
    if t < 2 {
        return Err(Error::InvalidParameter(format!("t = {t} must be at least 2")));
    }
    let need = cfg.c_logbip2 * (t as f64).ln() * a_side.len() as f64;
    if (b_side.len() as f64) < need {
        return Err(Error::HypothesisNotMet(format!("|B| = {} < {need:.3}", b_side.len())));
    }
    if let Some(&v) = b_side.iter().find(|&&v| g.degree(v) < 2 * t) {
        return Err(Error::HypothesisNotMet(format!(
            "vertex {v} of B has fewer than {} neighbours",
            2 * t
        )));
    }
    let a: BTreeSet<Vertex> = a_side.iter().copied().collect();
    Ok(crate::minors::find_clique_minor(g, t, budget)?.map(|m| {
        let mut e = m.to_expansion(g);
        let colouring: Colouring = e
            .vertices()
            .into_iter()
            .map(|v| (v, u8::from(!a.contains(&v))))
            .collect();
        e.bipartite = Some(colouring);
        e
    }))
}

/// Proper 2-colouring of a tree given by its edge list, rooted at the
/// first listed vertex of each component.
fn tree_sides(vertices: &[Vertex], edges: &[(Vertex, Vertex)]) -> Option<BTreeMap<Vertex, u8>> {
    let g = Graph::from_edges(vertices.iter().max().map_or(0, |&m| m + 1), edges.iter().copied()).ok()?;
    let side = g.two_colouring()?;
    Some(vertices.iter().map(|&v| (v, side[v] as u8)).collect())
}

/// Keeps, for each `B`-node, the branch edges whose ends agree on the
/// majority colour relation, leaving a bipartite expansion of a subgraph of
/// `K_{a,b}`.
///
/// Each tree is 2-coloured. The key of branch edge `xy` (`x` in an `A`-tree,
/// `y` in the `B`-tree) is `φ(x) xor φ(y)`; flipping the `B`-tree when the
/// kept key is 0 makes every kept branch edge bichromatic. With singleton
/// `B`-trees this is the plain majority on `φ(x)`.
pub fn majority_bipartite_minor(g: &Graph, e: &Expansion) -> Result<Expansion> {
    let Pattern::CompleteBipartite { s: a, t: b } = e.pattern else {
        return Err(Error::InvalidWitness(
            "pattern is not a complete bipartite graph".into(),
        ));
    };
    let v = verify_expansion(g, e)?;
    if let Some(clause) = v.clause() {
        return Err(Error::InvalidWitness(format!("input expansion fails: {clause}")));
    }
    let mut phi: Vec<BTreeMap<Vertex, u8>> = Vec::with_capacity(a + b);
    for tree in &e.trees {
        phi.push(
            tree_sides(&tree.vertices, &tree.edges).ok_or_else(|| Error::InvalidWitness("tree has a cycle".into()))?,
        );
    }
    let end_in = |be: &BranchEdge, node: usize| -> Vertex {
        let (x, y) = be.edge;
        if phi[node].contains_key(&x) {
            x
        } else {
            y
        }
    };
    let mut kept = Vec::new();
    let mut flip = vec![0u8; a + b];
    for j in a..a + b {
        let legs: Vec<(usize, &BranchEdge, u8)> = (0..a)
            .map(|i| {
                let be = e.branch_edge(i, j).expect("verified expansion has every branch edge");
                let key = phi[i][&end_in(be, i)] ^ phi[j][&end_in(be, j)];
                (i, be, key)
            })
            .collect();
        let ones = legs.iter().filter(|l| l.2 == 1).count();
        let majority = u8::from(2 * ones >= a);
        flip[j] = 1 - majority;
        kept.extend(legs.into_iter().filter(|l| l.2 == majority).map(|l| l.1.clone()));
    }
    let pattern = Graph::from_edges(a + b, kept.iter().map(|be| be.pattern_edge))?;
    let flip = &flip;
    let colouring: Colouring = phi
        .iter()
        .enumerate()
        .flat_map(|(node, sides)| sides.iter().map(move |(&v, &c)| (v, c ^ flip[node])))
        .collect();
    let out = Expansion {
        pattern: Pattern::Graph { graph: pattern },
        trees: e.trees.clone(),
        branch_edges: kept,
        roots: None,
        bipartite: Some(colouring),
        odd: None,
    };
    let v = verify_expansion(g, &out)?;
    if let Some(clause) = v.clause() {
        return Err(Error::Oracle(format!("majority expansion fails: {clause}")));
    }
    let floor = a.div_ceil(2);
    for j in a..a + b {
        let legs = out
            .branch_edges
            .iter()
            .filter(|be| be.pattern_edge.1 == j || be.pattern_edge.0 == j)
            .count();
        if legs < floor {
            return Err(Error::Oracle(format!("B-node {j} keeps {legs} < {floor} branch edges")));
        }
    }
    Ok(out)
}
