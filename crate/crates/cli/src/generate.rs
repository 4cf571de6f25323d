//! Seeded instance families written as graph6 files plus a manifest.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use minorkit::format::to_graph6;
use minorkit::generate::{blowup, complete, complete_multipartite, gnp, grid, petersen, rng};
use minorkit::Graph;
use serde::{Deserialize, Serialize};

use crate::corpus::{digest, load_single};
use crate::{CliError, CliResult, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// `G(n, p)`; `count` graphs from streams `0..count`.
    Gnp,
    /// `rows × cols` grid.
    Grid,
    /// `K_n`.
    Complete,
    /// `K_{m*r}`: `r` parts of size `m`.
    Multipartite,
    Petersen,
    /// Each vertex of the base graph replaced by `m` independent copies.
    Blowup,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<PathBuf>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub graph6: String,
    pub digest: String,
    pub n: usize,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: u32,
    pub command: String,
    pub kind: Kind,
    pub params: GenParams,
    pub seed: u64,
    pub files: Vec<ManifestEntry>,
}

fn need<T: Copy>(v: Option<T>, name: &str, kind: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("{kind} needs --{name}")))
}

fn positive(v: usize, name: &str) -> CliResult<usize> {
    if v == 0 {
        return Err(CliError::Usage(format!("--{name} must be at least 1")));
    }
    Ok(v)
}

/// The graphs of one family, in output order.
pub fn build(kind: Kind, p: &GenParams, seed: u64) -> CliResult<Vec<Graph>> {
    Ok(match kind {
        Kind::Gnp => {
            let n = need(p.n, "n", "gnp")?;
            let prob = need(p.p, "p", "gnp")?;
            if !(0.0..=1.0).contains(&prob) {
                return Err(CliError::Usage(format!("--p = {prob} is not a probability")));
            }
            (0..positive(p.count, "count")? as u64)
                .map(|i| gnp(n, prob, &mut rng(seed, i)))
                .collect()
        }
        Kind::Grid => {
            let rows = positive(need(p.rows, "rows", "grid")?, "rows")?;
            let cols = positive(need(p.cols, "cols", "grid")?, "cols")?;
            vec![grid(rows, cols)]
        }
        Kind::Complete => vec![complete(need(p.n, "n", "complete")?)],
        Kind::Multipartite => {
            let m = positive(need(p.m, "m", "multipartite")?, "m")?;
            let r = positive(need(p.r, "r", "multipartite")?, "r")?;
            vec![complete_multipartite(m, r)]
        }
        Kind::Petersen => vec![petersen()],
        Kind::Blowup => {
            let base = p
                .base
                .as_deref()
                .ok_or_else(|| CliError::Usage("blowup needs --base".into()))?;
            let m = positive(need(p.m, "m", "blowup")?, "m")?;
            vec![blowup(&load_single(base, None)?.graph, m)]
        }
    })
}

/// Writes `<kind>-<i>.g6` files and `manifest.json` into `out`.
pub fn write(kind: Kind, params: &GenParams, seed: u64, out: &Path) -> CliResult<Manifest> {
    let graphs = build(kind, params, seed)?;
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let name = kind
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_owned();
    let mut files = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let file = format!("{name}-{i}.g6");
        let g6 = to_graph6(g);
        let path = out.join(&file);
        std::fs::write(&path, format!("{g6}\n")).map_err(|e| CliError::io(&path, e))?;
        files.push(ManifestEntry {
            file,
            digest: digest(&g6),
            graph6: g6,
            n: g.n(),
            m: g.m(),
        });
    }
    let manifest = Manifest {
        schema: SCHEMA,
        command: "generate".into(),
        kind,
        params: params.clone(),
        seed,
        files,
    };
    let path = out.join("manifest.json");
    let text = serde_json::to_string_pretty(&manifest)? + "\n";
    std::fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
    Ok(manifest)
}
