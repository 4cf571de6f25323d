//! List assignments and list colouring: an exact backtracking solver, greedy
//! colouring along a degeneracy order, choosability and Hall ratio on tiny
//! graphs, chromatic separability, palette splitting and palette
//! subsampling.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::search::{ensure, Verdict};

mod exact;
mod palette;
mod separability;

pub use exact::{hall_ratio, independence_number, list_chromatic_number, CHOOSABILITY_BOUND, HALL_RATIO_BOUND};
pub use palette::{palette_split_color, random_palette_subsample, Subsample, SubsampleThresholds};
pub use separability::{
    chromatic_separability, is_s_noncolourable, verify_separation, SeparabilityVerdict, Witness, SEPARABILITY_BOUND,
};

pub type Color = u32;

/// A colour per vertex, serialised as `{vertex: color}`.
pub type ColourMap = BTreeMap<Vertex, Color>;

/// Colour lists per vertex, serialised as `{vertex: [colors]}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ListAssignment {
    lists: BTreeMap<Vertex, BTreeSet<Color>>,
    /// Every colour lies in `1..=ℓ` when set.
    #[serde(skip)]
    palette_bound: Option<Color>,
}

impl ListAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// The same list on every vertex of `g`.
    pub fn uniform(g: &Graph, list: impl IntoIterator<Item = Color>) -> Self {
        let list: BTreeSet<Color> = list.into_iter().collect();
        ListAssignment {
            lists: g.vertices().map(|v| (v, list.clone())).collect(),
            palette_bound: None,
        }
    }

    /// `L(v) = {1, ..., k}` for every vertex.
    pub fn full(g: &Graph, k: Color) -> Self {
        Self::uniform(g, 1..=k)
    }

    pub fn from_lists<I, L>(lists: I) -> Self
    where
        I: IntoIterator<Item = (Vertex, L)>,
        L: IntoIterator<Item = Color>,
    {
        ListAssignment {
            lists: lists.into_iter().map(|(v, l)| (v, l.into_iter().collect())).collect(),
            palette_bound: None,
        }
    }

    /// Declares the palette `[ℓ]`, rejecting colours outside it.
    pub fn with_palette_bound(mut self, l: Color) -> Result<Self> {
        if let Some((v, c)) = self
            .lists
            .iter()
            .find_map(|(&v, list)| list.iter().find(|&&c| c == 0 || c > l).map(|&c| (v, c)))
        {
            return Err(Error::InvalidParameter(format!(
                "colour {c} of vertex {v} is outside [1, {l}]"
            )));
        }
        self.palette_bound = Some(l);
        Ok(self)
    }

    pub fn palette_bound(&self) -> Option<Color> {
        self.palette_bound
    }

    pub fn set(&mut self, v: Vertex, list: impl IntoIterator<Item = Color>) {
        self.lists.insert(v, list.into_iter().collect());
    }

    pub fn get(&self, v: Vertex) -> Option<&BTreeSet<Color>> {
        self.lists.get(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &BTreeSet<Color>)> {
        self.lists.iter().map(|(&v, l)| (v, l))
    }

    /// `|L|`, the smallest list size over the vertices of `g`.
    pub fn min_size(&self, g: &Graph) -> Result<usize> {
        self.check_covers(g)?;
        Ok(g.vertices().map(|v| self.lists[&v].len()).min().unwrap_or(0))
    }

    pub fn check_covers(&self, g: &Graph) -> Result<()> {
        match g.vertices().find(|v| !self.lists.contains_key(v)) {
            Some(v) => Err(Error::MissingList(v)),
            None => Ok(()),
        }
    }

    /// Union of the lists of `g`'s vertices, or `[ℓ]` when a bound is set.
    pub fn palette(&self, g: &Graph) -> Vec<Color> {
        match self.palette_bound {
            Some(l) => (1..=l).collect(),
            None => g
                .vertices()
                .filter_map(|v| self.lists.get(&v))
                .flatten()
                .copied()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        }
    }

    /// Lists of `sub`'s vertices, relabelled into the subgraph.
    pub fn restrict(&self, to_parent: &[Vertex]) -> ListAssignment {
        ListAssignment {
            lists: to_parent
                .iter()
                .enumerate()
                .filter_map(|(i, v)| self.lists.get(v).map(|l| (i, l.clone())))
                .collect(),
            palette_bound: self.palette_bound,
        }
    }

    /// Whether `self(v) ⊆ other(v)` on every vertex of `self`.
    pub fn is_sublist_of(&self, other: &ListAssignment) -> bool {
        self.lists
            .iter()
            .all(|(v, l)| other.lists.get(v).is_some_and(|o| l.is_subset(o)))
    }

    fn dense(&self, g: &Graph) -> Result<Vec<Vec<Color>>> {
        self.check_covers(g)?;
        Ok(g.vertices().map(|v| self.lists[&v].iter().copied().collect()).collect())
    }
}

/// First violated clause of "proper and list-respecting".
pub fn verify_colouring(g: &Graph, lists: &ListAssignment, c: &ColourMap) -> Verdict {
    for v in g.vertices() {
        let Some(&cv) = c.get(&v) else {
            return Verdict::fail("uncoloured vertex", format!("vertex {v}"));
        };
        ensure!(
            lists.get(v).is_some_and(|l| l.contains(&cv)),
            "colour not in list",
            "vertex {v} has colour {cv}"
        );
    }
    for (u, v) in g.edges() {
        ensure!(c[&u] != c[&v], "improper edge", "{u}-{v} both coloured {}", c[&u]);
    }
    Verdict::Valid
}

/// Exact list colouring on dense lists. Vertices whose list is longer than
/// their degree are peeled off first and coloured last; the rest is solved
/// by backtracking on the vertex with fewest remaining options, which also
/// makes forced moves immediate.
pub(crate) fn solve(g: &Graph, lists: &[Vec<Color>]) -> Option<Vec<Color>> {
    let n = g.n();
    let mut removed = vec![false; n];
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut peeled = Vec::new();
    let mut stack: Vec<Vertex> = g.vertices().filter(|&v| lists[v].len() > deg[v]).collect();
    for &v in &stack {
        removed[v] = true;
    }
    while let Some(v) = stack.pop() {
        peeled.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
                if lists[w].len() > deg[w] {
                    removed[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let mut colour: Vec<Option<Color>> = vec![None; n];
    let core: Vec<Vertex> = g.vertices().filter(|&v| !removed[v]).collect();
    if !backtrack(g, lists, &core, &mut colour) {
        return None;
    }
    for &v in peeled.iter().rev() {
        let used: BTreeSet<Color> = g.neighbors(v).iter().filter_map(|&w| colour[w]).collect();
        colour[v] = lists[v].iter().copied().find(|c| !used.contains(c));
        debug_assert!(colour[v].is_some());
    }
    colour.into_iter().collect()
}

fn options(g: &Graph, lists: &[Vec<Color>], colour: &[Option<Color>], v: Vertex) -> Vec<Color> {
    lists[v]
        .iter()
        .copied()
        .filter(|&c| g.neighbors(v).iter().all(|&w| colour[w] != Some(c)))
        .collect()
}

fn backtrack(g: &Graph, lists: &[Vec<Color>], core: &[Vertex], colour: &mut [Option<Color>]) -> bool {
    let mut best: Option<(Vertex, Vec<Color>)> = None;
    for &v in core {
        if colour[v].is_some() {
            continue;
        }
        let opts = options(g, lists, colour, v);
        if opts.is_empty() {
            return false;
        }
        if best.as_ref().map_or(true, |(_, b)| opts.len() < b.len()) {
            let forced = opts.len() == 1;
            best = Some((v, opts));
            if forced {
                break;
            }
        }
    }
    let Some((v, opts)) = best else {
        return true;
    };
    for c in opts {
        colour[v] = Some(c);
        if backtrack(g, lists, core, colour) {
            return true;
        }
    }
    colour[v] = None;
    false
}

fn to_map(colours: Vec<Color>) -> ColourMap {
    colours.into_iter().enumerate().collect()
}

/// A proper `L`-colouring if one exists.
pub fn is_list_colorable(g: &Graph, lists: &ListAssignment) -> Result<Option<ColourMap>> {
    let dense = lists.dense(g)?;
    let found = solve(g, &dense).map(to_map);
    if let Some(c) = &found {
        debug_assert!(verify_colouring(g, lists, c).is_valid());
    }
    Ok(found)
}

/// Colours along the reverse degeneracy order, always picking the smallest
/// free colour. Needs `|L| ≥ d + 1`.
pub fn greedy_degenerate_color(g: &Graph, lists: &ListAssignment) -> Result<ColourMap> {
    let dense = lists.dense(g)?;
    let order = g.degeneracy();
    let have = dense.iter().map(Vec::len).min().unwrap_or(usize::MAX);
    if !g.is_null() && have < order.d + 1 {
        return Err(Error::InsufficientLists {
            needed: order.d + 1,
            found: have,
        });
    }
    let mut colour: Vec<Option<Color>> = vec![None; g.n()];
    for &v in order.order.iter().rev() {
        let used: BTreeSet<Color> = g.neighbors(v).iter().filter_map(|&w| colour[w]).collect();
        colour[v] = dense[v].iter().copied().find(|c| !used.contains(c));
    }
    let map: ColourMap = colour
        .into_iter()
        .enumerate()
        .map(|(v, c)| (v, c.expect("a degeneracy order leaves a free colour")))
        .collect();
    debug_assert!(verify_colouring(g, lists, &map).is_valid());
    Ok(map)
}
