//! Property suites: each checks one constructive statement on one graph and
//! returns a status, a short detail and, when something was built, a
//! certificate that [`recheck`] can verify again from the report alone.

use std::collections::BTreeSet;

use clap::ValueEnum;
use minorkit::coloring::{
    chromatic_separability, greedy_degenerate_color, hall_ratio, independence_number, is_list_colorable,
    list_chromatic_number, verify_colouring, verify_separation, Color, ColourMap, ListAssignment, SeparabilityVerdict,
    CHOOSABILITY_BOUND, HALL_RATIO_BOUND, SEPARABILITY_BOUND,
};
use minorkit::constructions::{
    brute_max_connectivity_subgraph, check_unbalanced_bound, logbip2_extract, mader_extract, majority_bipartite_minor,
    ConstantsConfig, BRUTE_CONNECTIVITY_BOUND,
};
use minorkit::generate::SeededRng;
use minorkit::linkage::{
    check_fan_hypothesis, find_geodesic_ab_paths, geodesic_descent, is_express, menger_variant_paths, total_length,
    verify_ab_paths, ExpressMode, MengerOutcome, Path,
};
use minorkit::minors::{
    bipartite_colouring, find_biclique_minor, find_clique_minor, verify_expansion, Expansion, Pattern,
};
use minorkit::woven::{answer_woven_query, is_woven, WovenVerdict, WOVEN_BOUND};
use minorkit::{Error, Graph, Search, Verdict, Vertex};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Descent from a random A-B path system ends express.
    GeodesicExpress,
    /// Some subgraph has connectivity at least half the density.
    Mader,
    /// Graphs without a K_t minor have α ≥ ⌈n/2t⌉.
    DuchetMeyniel,
    /// Lists of size degeneracy + 1 are always greedily colourable.
    DegeneracyColor,
    /// Edge bound for K_t-minor-free bipartite graphs, and K_t models in
    /// bipartite graphs with a large high-degree side.
    Logbip,
    /// Majority recolouring of a K_{t,3} expansion.
    Logbip3,
    /// Two-fan condition implies disjoint paths from both sides.
    MengerVariant,
    /// Complete graphs are (a, b)-woven; other verdicts are cross-checked.
    WovenClique,
    /// Separability verdicts on random 2-lists re-verify.
    Separability,
    /// χ_ℓ lies between χ and degeneracy + 1.
    Choosability,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::GeodesicExpress => "geodesic-express",
            Suite::Mader => "mader",
            Suite::DuchetMeyniel => "duchet-meyniel",
            Suite::DegeneracyColor => "degeneracy-color",
            Suite::Logbip => "logbip",
            Suite::Logbip3 => "logbip3",
            Suite::MengerVariant => "menger-variant",
            Suite::WovenClique => "woven-clique",
            Suite::Separability => "separability",
            Suite::Choosability => "choosability",
        }
    }

    /// Clique or biclique order used when `--t` is not given.
    pub fn default_t(self) -> Option<usize> {
        match self {
            Suite::DuchetMeyniel | Suite::Logbip3 => Some(4),
            Suite::Logbip => Some(3),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub budget: u64,
    pub t: Option<usize>,
    pub config: ConstantsConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Exhausted,
    Skipped,
}

/// What a suite built, in a form that re-verifies against the graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "kebab-case")]
pub enum Certificate {
    /// Disjoint A-B paths that are express.
    ExpressPaths {
        a: Vec<Vertex>,
        b: Vec<Vertex>,
        paths: Vec<Path>,
    },
    /// `|a1| + |a2|` disjoint paths into `b`.
    MengerPaths {
        a1: Vec<Vertex>,
        a2: Vec<Vertex>,
        b: Vec<Vertex>,
        paths: Vec<Path>,
    },
    /// A vertex set inducing a `k`-connected subgraph.
    Connected { k: usize, vertices: Vec<Vertex> },
    Colouring {
        lists: ListAssignment,
        colouring: ColourMap,
    },
    /// A bipartite expansion of a clique.
    Expansion { expansion: Expansion },
    /// A bipartite expansion of a subgraph of `K_{a,b}` where every B-node
    /// keeps at least `⌈a/2⌉` branch edges.
    Majority { a: usize, b: usize, expansion: Expansion },
    Separation {
        lists: ListAssignment,
        s: usize,
        verdict: SeparabilityVerdict,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub status: Status,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome {
            status: Status::Pass,
            detail: detail.into(),
            certificate: None,
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Outcome {
            status: Status::Fail,
            ..Outcome::pass(detail)
        }
    }

    fn skip(detail: impl Into<String>) -> Self {
        Outcome {
            status: Status::Skipped,
            ..Outcome::pass(detail)
        }
    }

    fn exhausted(detail: impl Into<String>) -> Self {
        Outcome {
            status: Status::Exhausted,
            ..Outcome::pass(detail)
        }
    }

    fn with(mut self, c: Certificate) -> Self {
        self.certificate = Some(c);
        self
    }
}

/// Runs `suite` on `g`. Library errors become failures, except size limits,
/// which skip the instance.
pub fn run(suite: Suite, g: &Graph, r: &mut SeededRng, p: &SuiteParams) -> Outcome {
    let t = p.t.or(suite.default_t());
    let out = match suite {
        Suite::GeodesicExpress => geodesic_express(g, r),
        Suite::Mader => mader(g),
        Suite::DuchetMeyniel => duchet_meyniel(g, t.expect("default"), p.budget),
        Suite::DegeneracyColor => degeneracy_color(g, r),
        Suite::Logbip => logbip(g, t.expect("default"), p),
        Suite::Logbip3 => logbip3(g, t.expect("default"), p.budget),
        Suite::MengerVariant => menger_variant(g, r),
        Suite::WovenClique => woven_clique(g, p.budget),
        Suite::Separability => separability(g, r),
        Suite::Choosability => choosability(g),
    };
    match out {
        Ok(o) => match &o.certificate {
            Some(c) => match recheck(g, c) {
                Ok(Verdict::Valid) => o,
                Ok(v) => Outcome::fail(format!("certificate does not re-verify: {v}")),
                Err(e) => Outcome::fail(format!("certificate does not re-verify: {e}")),
            },
            None => o,
        },
        Err(Error::ExceedsExactBound { n, bound }) => {
            Outcome::skip(format!("{n} vertices exceed the exact bound {bound}"))
        }
        Err(e) => Outcome::fail(e.to_string()),
    }
}

type SuiteResult = minorkit::Result<Outcome>;

/// Random disjoint `a`, `b` of the given sizes, each sorted.
fn random_sets(g: &Graph, sizes: &[usize], r: &mut SeededRng) -> Vec<Vec<Vertex>> {
    let mut vs: Vec<Vertex> = g.vertices().collect();
    vs.shuffle(r);
    let mut out = Vec::new();
    let mut at = 0;
    for &k in sizes {
        let mut set = vs[at..at + k].to_vec();
        set.sort_unstable();
        out.push(set);
        at += k;
    }
    out
}

/// Disjoint A-B paths grown one at a time by randomised depth-first search,
/// usually far from shortest.
fn random_ab_paths(g: &Graph, a: &[Vertex], b: &[Vertex], r: &mut SeededRng) -> Option<Vec<Path>> {
    let mut used = vec![false; g.n()];
    let in_b: BTreeSet<Vertex> = b.iter().copied().collect();
    let mut terminal = vec![false; g.n()];
    for &v in a.iter().chain(b) {
        terminal[v] = true;
    }
    let mut paths = Vec::new();
    for &s in a {
        let mut seen = used.clone();
        seen[s] = true;
        let mut stack = vec![s];
        let found = loop {
            let Some(&u) = stack.last() else { break false };
            if u != s && in_b.contains(&u) {
                break true;
            }
            let mut next: Vec<Vertex> = g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&w| !seen[w] && (!terminal[w] || in_b.contains(&w)))
                .collect();
            next.shuffle(r);
            match next.first() {
                Some(&w) => {
                    seen[w] = true;
                    stack.push(w);
                }
                None => {
                    stack.pop();
                }
            }
        };
        if !found {
            return None;
        }
        for &v in &stack {
            used[v] = true;
        }
        paths.push(stack);
    }
    Some(paths)
}

fn geodesic_express(g: &Graph, r: &mut SeededRng) -> SuiteResult {
    if g.n() < 2 {
        return Ok(Outcome::skip("fewer than two vertices"));
    }
    let l = r.random_range(1..=3).min(g.n() / 2);
    let sets = random_sets(g, &[l, l], r);
    let (a, b) = (&sets[0], &sets[1]);
    let Some(geodesic) = find_geodesic_ab_paths(g, a, b, l)? else {
        return Ok(Outcome::skip(format!("fewer than {l} disjoint A-B paths")));
    };
    let start = random_ab_paths(g, a, b, r).unwrap_or_else(|| geodesic.clone());
    let d = geodesic_descent(g, a, b, &start)?;
    let least = total_length(&geodesic);
    if d.final_length < least {
        return Ok(Outcome::fail(format!(
            "descent length {} beats the geodesic {least}",
            d.final_length
        )));
    }
    let detail = format!(
        "l = {l}, {} moves, length {} -> {} (geodesic {least})",
        d.moves.len(),
        d.initial_length,
        d.final_length
    );
    Ok(Outcome::pass(detail).with(Certificate::ExpressPaths {
        a: a.clone(),
        b: b.clone(),
        paths: d.paths,
    }))
}

fn mader(g: &Graph) -> SuiteResult {
    if g.n() == 0 {
        return Ok(Outcome::skip("null graph"));
    }
    // ⌈d/2⌉ with d = m/n.
    let need = g.m().div_ceil(2 * g.n());
    if g.n() <= BRUTE_CONNECTIVITY_BOUND {
        let (_, kappa) = brute_max_connectivity_subgraph(g)?;
        if kappa < need {
            return Ok(Outcome::fail(format!("best connectivity {kappa} < {need}")));
        }
        for k in 1..=kappa + 1 {
            if mader_extract(g, k).is_some() != (k <= kappa) {
                return Ok(Outcome::fail(format!(
                    "extraction at k = {k} disagrees with the optimum {kappa}"
                )));
            }
        }
        let detail = format!("best connectivity {kappa} >= {need}");
        return Ok(match mader_extract(g, kappa).filter(|_| kappa > 0) {
            Some(vertices) => Outcome::pass(detail).with(Certificate::Connected { k: kappa, vertices }),
            None => Outcome::pass(detail),
        });
    }
    if need == 0 {
        return Ok(Outcome::pass("edgeless, nothing to extract"));
    }
    Ok(match mader_extract(g, need) {
        Some(vertices) => Outcome::pass(format!("{need}-connected subgraph on {} vertices", vertices.len()))
            .with(Certificate::Connected { k: need, vertices }),
        None => Outcome::fail(format!("no {need}-connected subgraph found")),
    })
}

fn duchet_meyniel(g: &Graph, t: usize, budget: u64) -> SuiteResult {
    if g.n() == 0 {
        return Ok(Outcome::skip("null graph"));
    }
    match find_clique_minor(g, t, budget)? {
        Search::Found(_) => return Ok(Outcome::skip(format!("has a K_{t} minor"))),
        Search::Exhausted => return Ok(Outcome::exhausted(format!("K_{t} minor search ran out of budget"))),
        Search::ProvenAbsent => {}
    }
    let alpha = independence_number(g)?;
    let need = g.n().div_ceil(2 * t);
    if alpha < need {
        return Ok(Outcome::fail(format!("α = {alpha} < {need}")));
    }
    if g.n() <= HALL_RATIO_BOUND {
        let h = hall_ratio(g)?;
        if h > 2 * t {
            return Ok(Outcome::fail(format!("Hall ratio {h} > {}", 2 * t)));
        }
        return Ok(Outcome::pass(format!(
            "α = {alpha} >= {need}, Hall ratio {h} <= {}",
            2 * t
        )));
    }
    Ok(Outcome::pass(format!("α = {alpha} >= {need}")))
}

/// Lists of `size` distinct colours from `1..=palette`.
fn random_lists(g: &Graph, size: usize, palette: Color, r: &mut SeededRng) -> ListAssignment {
    let colours: Vec<Color> = (1..=palette).collect();
    ListAssignment::from_lists(g.vertices().map(|v| {
        let list: BTreeSet<Color> = colours.choose_multiple(r, size).copied().collect();
        (v, list)
    }))
}

fn degeneracy_color(g: &Graph, r: &mut SeededRng) -> SuiteResult {
    if g.n() == 0 {
        return Ok(Outcome::skip("null graph"));
    }
    let d = g.degeneracy().d;
    let lists = random_lists(g, d + 1, 2 * (d as Color + 1), r);
    let colouring = greedy_degenerate_color(g, &lists)?;
    Ok(Outcome::pass(format!("degeneracy {d}, lists of size {}", d + 1))
        .with(Certificate::Colouring { lists, colouring }))
}

fn logbip(g: &Graph, t: usize, p: &SuiteParams) -> SuiteResult {
    let Some((a, b)) = g.bipartition() else {
        return Ok(Outcome::skip("not bipartite"));
    };
    if t < 3 {
        return Err(Error::InvalidParameter(format!("t = {t} must be at least 3")));
    }
    let mut notes = Vec::new();
    match find_clique_minor(g, t, p.budget)? {
        Search::Exhausted => return Ok(Outcome::exhausted(format!("K_{t} minor search ran out of budget"))),
        Search::Found(_) => notes.push(format!("has a K_{t} minor")),
        Search::ProvenAbsent => {
            let bound = check_unbalanced_bound(g, &a, &b, t, p.config.c_logbip)?;
            if !bound.holds {
                return Ok(Outcome::fail(format!("e = {} > {}", bound.lhs, bound.rhs)));
            }
            notes.push(format!("e = {} <= {:.3}", bound.lhs, bound.rhs));
        }
    }
    for (x, y) in [(&a, &b), (&b, &a)] {
        match logbip2_extract(g, x, y, t, &p.config, p.budget) {
            Err(Error::HypothesisNotMet(_)) => continue,
            Err(e) => return Err(e),
            Ok(Search::Found(expansion)) => {
                notes.push(format!("bipartite K_{t} model from a side of {}", y.len()));
                return Ok(Outcome::pass(notes.join("; ")).with(Certificate::Expansion { expansion }));
            }
            Ok(Search::Exhausted) => return Ok(Outcome::exhausted(format!("K_{t} model search ran out of budget"))),
            Ok(Search::ProvenAbsent) => {
                return Ok(Outcome::fail(format!(
                    "large side of {} meets the hypothesis but no K_{t} minor",
                    y.len()
                )))
            }
        }
    }
    Ok(Outcome::pass(notes.join("; ")))
}

/// Branch edges kept at B-node `j` of a majority expansion.
fn legs(e: &Expansion, j: usize) -> usize {
    e.branch_edges
        .iter()
        .filter(|be| be.pattern_edge.0 == j || be.pattern_edge.1 == j)
        .count()
}

fn logbip3(g: &Graph, a: usize, budget: u64) -> SuiteResult {
    const B: usize = 3;
    let kst = match find_biclique_minor(g, a, B, budget)? {
        Search::Found(m) => m,
        Search::Exhausted => return Ok(Outcome::exhausted(format!("K_{{{a},{B}}} search ran out of budget"))),
        Search::ProvenAbsent => return Ok(Outcome::skip(format!("no K_{{{a},{B}}} minor"))),
    };
    let e = kst.to_model().to_expansion(g);
    let out = majority_bipartite_minor(g, &e)?;
    let kept = (a..a + B).map(|j| legs(&out, j)).min().unwrap_or(0);
    Ok(
        Outcome::pass(format!("every B-node keeps at least {kept} of {a} branch edges")).with(Certificate::Majority {
            a,
            b: B,
            expansion: out,
        }),
    )
}

fn menger_variant(g: &Graph, r: &mut SeededRng) -> SuiteResult {
    let s1 = r.random_range(1..=2);
    let s2 = r.random_range(1..=2);
    let nb = 2 * s1.max(s2) + r.random_range(0..=2);
    if s1 + s2 + nb > g.n() {
        return Ok(Outcome::skip("too few vertices for the terminal sets"));
    }
    let sets = random_sets(g, &[s1, s2, nb], r);
    let (a1, a2, b) = (&sets[0], &sets[1], &sets[2]);
    if check_fan_hypothesis(g, a1, a2, b)?.is_none() {
        return Ok(Outcome::skip("fan hypothesis fails"));
    }
    match menger_variant_paths(g, a1, a2, b)? {
        MengerOutcome::Paths { paths } => Ok(Outcome::pass(format!("{} disjoint paths", paths.len())).with(
            Certificate::MengerPaths {
                a1: a1.clone(),
                a2: a2.clone(),
                b: b.clone(),
                paths,
            },
        )),
        MengerOutcome::Cut { cut } => Ok(Outcome::fail(format!("fans exist but cut {cut:?} blocks the paths"))),
    }
}

fn woven_clique(g: &Graph, budget: u64) -> SuiteResult {
    if g.n() > WOVEN_BOUND {
        return Ok(Outcome::skip(format!(
            "{} vertices exceed the woven bound {WOVEN_BOUND}",
            g.n()
        )));
    }
    let complete = g.is_complete();
    let mut woven = Vec::new();
    let mut not = Vec::new();
    for a in 0..=2 {
        for b in 0..=2 {
            if a + 2 * b > g.n() {
                continue;
            }
            match is_woven(g, a, b, budget)? {
                WovenVerdict::Woven => woven.push(format!("({a},{b})")),
                WovenVerdict::Exhausted { .. } => {
                    return Ok(Outcome::exhausted(format!("({a},{b}) query ran out of budget")))
                }
                WovenVerdict::NotWoven { query } => {
                    if complete {
                        return Ok(Outcome::fail(format!("K_{} is not ({a},{b})-woven", g.n())));
                    }
                    if answer_woven_query(g, &query, budget)?.is_found() {
                        return Ok(Outcome::fail(format!("failing ({a},{b}) query has a witness")));
                    }
                    not.push(format!("({a},{b})"));
                }
            }
        }
    }
    Ok(Outcome::pass(format!(
        "woven: [{}]; not woven: [{}]",
        woven.join(" "),
        not.join(" ")
    )))
}

fn separability(g: &Graph, r: &mut SeededRng) -> SuiteResult {
    if g.n() > SEPARABILITY_BOUND {
        return Ok(Outcome::skip(format!(
            "{} vertices exceed the separability bound",
            g.n()
        )));
    }
    let lists = random_lists(g, 2, 3, r);
    let s = r.random_range(0..=1);
    let verdict = chromatic_separability(g, &lists, s)?;
    let detail = match &verdict {
        SeparabilityVerdict::Colorable { .. } => "colourable".to_owned(),
        SeparabilityVerdict::Separable { first, second } => {
            format!(
                "{s}-separable by sets of {} and {}",
                first.vertices.len(),
                second.vertices.len()
            )
        }
        SeparabilityVerdict::Inseparable { minimal_witnesses, .. } => {
            format!("{s}-inseparable, {minimal_witnesses} minimal witnesses")
        }
    };
    Ok(Outcome::pass(detail).with(Certificate::Separation { lists, s, verdict }))
}

fn choosability(g: &Graph) -> SuiteResult {
    if g.n() > CHOOSABILITY_BOUND {
        return Ok(Outcome::skip(format!(
            "{} vertices exceed the choosability bound",
            g.n()
        )));
    }
    if g.n() == 0 {
        return Ok(Outcome::skip("null graph"));
    }
    let d = g.degeneracy().d;
    let palette = d as Color + 2;
    let ch = list_chromatic_number(g, palette)?;
    let chi = (1..)
        .map(|k: Color| is_list_colorable(g, &ListAssignment::full(g, k)).map(|c| (k, c.is_some())))
        .find(|res| res.as_ref().map_or(true, |&(_, ok)| ok))
        .expect("some k colours the graph")?
        .0 as usize;
    if ch < chi || ch > d + 1 {
        return Ok(Outcome::fail(format!("χ_ℓ = {ch} outside [{chi}, {}]", d + 1)));
    }
    Ok(Outcome::pass(format!(
        "χ = {chi} <= χ_ℓ = {ch} <= {} (palette {palette})",
        d + 1
    )))
}

/// Checks a certificate against `g` without trusting the run that made it.
pub fn recheck(g: &Graph, c: &Certificate) -> minorkit::Result<Verdict> {
    Ok(match c {
        Certificate::ExpressPaths { a, b, paths } => {
            let v = verify_ab_paths(g, a, b, paths)?;
            if v.is_valid() && paths.len() != a.len() {
                Verdict::fail("path count", format!("{} paths for {} sources", paths.len(), a.len()))
            } else if v.is_valid() {
                is_express(g, paths, ExpressMode::AbPaths)?
            } else {
                v
            }
        }
        Certificate::MengerPaths { a1, a2, b, paths } => {
            let a: Vec<Vertex> = a1.iter().chain(a2).copied().collect();
            let v = verify_ab_paths(g, &a, b, paths)?;
            if v.is_valid() && paths.len() != a.len() {
                Verdict::fail("path count", format!("{} paths for {} sources", paths.len(), a.len()))
            } else {
                v
            }
        }
        Certificate::Connected { k, vertices } => {
            g.check_vertices(vertices)?;
            let h = g.induced_subgraph(vertices).graph;
            if h.is_k_connected(*k) {
                Verdict::Valid
            } else {
                Verdict::fail("connectivity", format!("subgraph is not {k}-connected"))
            }
        }
        Certificate::Colouring { lists, colouring } => verify_colouring(g, lists, colouring),
        Certificate::Expansion { expansion } => {
            let v = verify_expansion(g, expansion)?;
            if v.is_valid() && expansion.bipartite.is_none() {
                Verdict::fail("bipartite flag", "no 2-colouring attached")
            } else {
                v
            }
        }
        Certificate::Majority { a, b, expansion } => {
            let v = verify_expansion(g, expansion)?;
            let floor = a.div_ceil(2);
            if !v.is_valid() {
                v
            } else if expansion.bipartite.is_none() || bipartite_colouring(expansion).is_none() {
                Verdict::fail("bipartite flag", "union is not properly 2-coloured")
            } else if !matches!(&expansion.pattern, Pattern::Graph { graph } if graph.n() == a + b) {
                Verdict::fail("pattern", format!("expected a pattern on {} nodes", a + b))
            } else if let Some(j) = (*a..a + b).find(|&j| legs(expansion, j) < floor) {
                Verdict::fail("legs", format!("B-node {j} keeps {} < {floor}", legs(expansion, j)))
            } else {
                Verdict::Valid
            }
        }
        Certificate::Separation { lists, s, verdict } => match verdict {
            SeparabilityVerdict::Colorable { colouring } => verify_colouring(g, lists, colouring),
            SeparabilityVerdict::Separable { first, second } => verify_separation(g, lists, *s, first, second),
            SeparabilityVerdict::Inseparable { .. } => {
                if is_list_colorable(g, lists)?.is_some() {
                    Verdict::fail("inseparable", "graph is colourable")
                } else {
                    Verdict::Valid
                }
            }
        },
    })
}
