//! Text formats: graph6, DIMACS `p edge`, and a plain edge list.
//!
//! The edge-list format is a header line `n m` followed by one `u v` pair per
//! line with 0-based labels. Lines starting with `#` are comments. The DIMACS
//! reader accepts `c` comments, one `p edge n m` line and `e u v` lines with
//! 1-based labels.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Graph6,
    EdgeList,
    Dimacs,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edge-list" | "edgelist" | "edges" => Ok(Format::EdgeList),
            "dimacs" | "col" => Ok(Format::Dimacs),
            other => Err(Error::InvalidParameter(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

pub fn parse_graph(text: &str, format: Format) -> Result<Parsed> {
    match format {
        Format::Graph6 => parse_graph6(text).map(|graph| Parsed {
            graph,
            warnings: Vec::new(),
        }),
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

pub fn emit_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => to_graph6(g),
        Format::EdgeList => to_edge_list(g),
        Format::Dimacs => to_dimacs(g),
    }
}

const G6_HEADER: &str = ">>graph6<<";

/// Parses one graph6 string. Surrounding whitespace and the optional
/// `>>graph6<<` header are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let lead = text.len() - text.trim_start().len();
    let mut body = text.trim();
    let mut base = lead;
    if let Some(rest) = body.strip_prefix(G6_HEADER) {
        body = rest;
        base += G6_HEADER.len();
    }
    let bytes = body.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(base + i, format!("byte {b:#04x} outside graph6 range")));
        }
    }
    let (n, pos) = match bytes {
        [] => return Err(Error::parse(base, "empty graph6 string")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::parse(base + 2, "truncated 36-bit vertex count"));
            }
            let n = rest[..6].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::parse(base + 1, "truncated 18-bit vertex count"));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if bytes.len() - pos != need {
        return Err(Error::parse(
            base + pos.min(bytes.len()),
            format!(
                "expected {need} adjacency bytes for n = {n}, found {}",
                bytes.len() - pos
            ),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = bytes[pos + k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    if bits % 6 != 0 {
        let last = bytes[bytes.len() - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::parse(base + bytes.len() - 1, "nonzero padding bits"));
        }
    }
    Graph::from_edges(n, edges)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Splits text into `(byte offset, line)` pairs, skipping blank lines and
/// lines whose first token starts with one of `comment`.
fn content_lines<'a>(text: &'a str, comment: &'a [&'a str]) -> impl Iterator<Item = (usize, &'a str)> {
    let mut offset = 0;
    text.split_inclusive('\n').filter_map(move |raw| {
        let at = offset;
        offset += raw.len();
        let line = raw.trim();
        if line.is_empty() || comment.iter().any(|c| line.starts_with(c)) {
            None
        } else {
            Some((at + (raw.len() - raw.trim_start().len()), line))
        }
    })
}

fn number(token: &str, offset: usize) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(offset, format!("expected a nonnegative integer, found {token:?}")))
}

fn tokens(line: &str, offset: usize) -> impl Iterator<Item = (usize, &str)> {
    let base = line.as_ptr() as usize;
    line.split_whitespace()
        .map(move |t| (offset + (t.as_ptr() as usize - base), t))
}

fn finish_edges(n: usize, edges: Vec<(usize, Edge)>, warnings: &mut Vec<String>) -> Result<Graph> {
    let mut seen = std::collections::BTreeSet::new();
    let mut clean = Vec::with_capacity(edges.len());
    for (offset, (u, v)) in edges {
        for x in [u, v] {
            if x >= n {
                return Err(Error::parse(offset, format!("vertex {x} out of range for n = {n}")));
            }
        }
        if u == v {
            return Err(Error::parse(offset, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            warnings.push(format!(
                "duplicate edge {}-{} at byte {offset} ignored",
                u.min(v),
                u.max(v)
            ));
            continue;
        }
        clean.push((u, v));
    }
    Graph::from_edges(n, clean)
}

pub fn parse_edge_list(text: &str) -> Result<Parsed> {
    let mut lines = content_lines(text, &["#"]);
    let Some((hoff, header)) = lines.next() else {
        return Err(Error::parse(0, "missing `n m` header"));
    };
    let head: Vec<_> = tokens(header, hoff).collect();
    let [(o1, t1), (o2, t2)] = head[..] else {
        return Err(Error::parse(hoff, "header must be `n m`"));
    };
    let n = number(t1, o1)?;
    let m = number(t2, o2)?;
    let mut edges = Vec::new();
    for (off, line) in lines {
        let toks: Vec<_> = tokens(line, off).collect();
        let [(ou, tu), (ov, tv)] = toks[..] else {
            return Err(Error::parse(off, "edge line must be `u v`"));
        };
        edges.push((off, (number(tu, ou)?, number(tv, ov)?)));
    }
    let mut warnings = Vec::new();
    if edges.len() != m {
        warnings.push(format!("header declares {m} edges, found {}", edges.len()));
    }
    let graph = finish_edges(n, edges, &mut warnings)?;
    Ok(Parsed { graph, warnings })
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_dimacs(text: &str) -> Result<Parsed> {
    let mut n = None;
    let mut declared = 0;
    let mut edges = Vec::new();
    for (off, line) in content_lines(text, &["c"]) {
        let toks: Vec<_> = tokens(line, off).collect();
        match toks.first().map(|t| t.1) {
            Some("p") => {
                if n.is_some() {
                    return Err(Error::parse(off, "second problem line"));
                }
                let [_, (_, kind), (on, tn), (om, tm)] = toks[..] else {
                    return Err(Error::parse(off, "problem line must be `p edge n m`"));
                };
                if kind != "edge" && kind != "col" {
                    return Err(Error::parse(off, format!("unsupported problem kind {kind:?}")));
                }
                n = Some(number(tn, on)?);
                declared = number(tm, om)?;
            }
            Some("e") => {
                if n.is_none() {
                    return Err(Error::parse(off, "edge before problem line"));
                }
                let [_, (ou, tu), (ov, tv)] = toks[..] else {
                    return Err(Error::parse(off, "edge line must be `e u v`"));
                };
                let u = number(tu, ou)?;
                let v = number(tv, ov)?;
                if u == 0 || v == 0 {
                    return Err(Error::parse(off, "DIMACS labels are 1-based"));
                }
                edges.push((off, (u - 1, v - 1)));
            }
            _ => return Err(Error::parse(off, "expected `c`, `p` or `e` line")),
        }
    }
    let Some(n) = n else {
        return Err(Error::parse(text.len(), "missing problem line"));
    };
    let mut warnings = Vec::new();
    if edges.len() != declared {
        warnings.push(format!("problem line declares {declared} edges, found {}", edges.len()));
    }
    let graph = finish_edges(n, edges, &mut warnings)?;
    Ok(Parsed { graph, warnings })
}

pub fn to_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}
