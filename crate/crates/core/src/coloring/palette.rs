//! Half-palette colouring of near-bipartite graphs and random palette
//! subsampling.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{verify_colouring, Color, ColourMap, ListAssignment};
use crate::error::{Error, Result};
use crate::generate::rng;
use crate::graph::{Graph, Vertex};

/// Colours `g[x]` greedily, strips those colours from the rest, then gives
/// the first side of `g − x` its smallest remaining colour in
/// `1..=⌊ℓ/2⌋` and the second side its smallest remaining colour above
/// `⌊ℓ/2⌋`.
///
/// `|L| ≥ |x| + ⌈ℓ/2⌉ + 1` guarantees both half-palettes still meet every
/// list after `x` is coloured. The side of `g − x` holding the smallest
/// vertex of each component is the lower-half side.
pub fn palette_split_color(g: &Graph, x: &[Vertex], lists: &ListAssignment, l: Color) -> Result<ColourMap> {
    lists.check_covers(g)?;
    g.check_vertices(x)?;
    for (v, list) in lists.iter().filter(|&(v, _)| v < g.n()) {
        if let Some(&c) = list.iter().find(|&&c| c == 0 || c > l) {
            return Err(Error::InvalidParameter(format!(
                "colour {c} of vertex {v} is outside [1, {l}]"
            )));
        }
    }
    let xs: BTreeSet<Vertex> = x.iter().copied().collect();
    let rest = g.remove_vertices(x);
    let Some(side) = rest.graph.two_colouring() else {
        return Err(Error::NotBipartite);
    };
    let needed = xs.len() + (l as usize).div_ceil(2) + 1;
    let have = lists.min_size(g)?;
    if have < needed {
        return Err(Error::InsufficientLists { needed, found: have });
    }
    let mut colour = ColourMap::new();
    for &v in &xs {
        let used: BTreeSet<Color> = g.neighbors(v).iter().filter_map(|w| colour.get(w)).copied().collect();
        let c = lists.get(v).expect("covered").iter().find(|c| !used.contains(c));
        colour.insert(v, *c.expect("|L| > |x| leaves a free colour"));
    }
    let half = l / 2;
    for (i, &v) in rest.to_parent.iter().enumerate() {
        let lower_side = !side[i];
        let blocked: BTreeSet<Color> = g
            .neighbors(v)
            .iter()
            .filter(|w| xs.contains(w))
            .map(|w| colour[w])
            .collect();
        let c = lists
            .get(v)
            .expect("covered")
            .iter()
            .copied()
            .filter(|c| !blocked.contains(c))
            .find(|&c| if lower_side { c <= half } else { c > half });
        colour.insert(v, c.expect("the list-size condition leaves a colour in each half"));
    }
    debug_assert!(verify_colouring(g, lists, &colour).is_valid());
    Ok(colour)
}

/// Acceptance thresholds as multiples of `r`: vertices of `x` need at least
/// `lower · r` surviving colours, vertices of `z` at most `upper · r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsampleThresholds {
    pub lower: Ratio<u64>,
    pub upper: Ratio<u64>,
}

impl Default for SubsampleThresholds {
    fn default() -> Self {
        SubsampleThresholds {
            lower: Ratio::new(1, 2),
            upper: Ratio::new(3, 2),
        }
    }
}

/// An accepted sample with the counts that justify it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subsample {
    pub colours: Vec<Color>,
    pub seed: u64,
    /// Index of the attempt that was accepted (the PRNG stream).
    pub attempt: u64,
    /// `|L(v) ∩ C_0|` for every vertex of `x` and `z`.
    pub counts: Vec<(Vertex, usize)>,
}

/// Keeps each palette colour independently with probability `r/|L|` until
/// the thresholds hold or `max_retries` attempts fail. Attempt `i` draws
/// from stream `i` of the generator seeded with `seed`.
#[allow(clippy::too_many_arguments)]
pub fn random_palette_subsample(
    g: &Graph,
    x: &[Vertex],
    z: &[Vertex],
    lists: &ListAssignment,
    r: usize,
    seed: u64,
    max_retries: u64,
    thresholds: SubsampleThresholds,
) -> Result<Option<Subsample>> {
    g.check_vertices(x)?;
    g.check_vertices(z)?;
    if x.iter().any(|v| z.contains(v)) {
        return Err(Error::NotDisjoint);
    }
    let size = lists.min_size(g)?;
    if r == 0 || r > size {
        return Err(Error::InvalidParameter(format!(
            "sampling probability r/|L| = {r}/{size} must lie in (0, 1]"
        )));
    }
    let p = r as f64 / size as f64;
    let palette = lists.palette(g);
    let r_big = Ratio::from_integer(r as u64);
    for attempt in 0..max_retries {
        let mut source = rng(seed, attempt);
        let colours: Vec<Color> = palette.iter().copied().filter(|_| source.random_bool(p)).collect();
        let kept: BTreeSet<Color> = colours.iter().copied().collect();
        let count = |v: Vertex| lists.get(v).expect("covered").intersection(&kept).count();
        let ok_x = x
            .iter()
            .all(|&v| Ratio::from_integer(count(v) as u64) >= thresholds.lower * r_big);
        let ok_z = z
            .iter()
            .all(|&v| Ratio::from_integer(count(v) as u64) <= thresholds.upper * r_big);
        if ok_x && ok_z {
            let counts = x.iter().chain(z).map(|&v| (v, count(v))).collect();
            return Ok(Some(Subsample {
                colours,
                seed,
                attempt,
                counts,
            }));
        }
    }
    Ok(None)
}
