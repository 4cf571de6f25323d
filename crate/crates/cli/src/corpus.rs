//! Corpus ingestion and instance identity.

use std::path::Path;

use minorkit::format::{parse_graph, parse_graph6, to_graph6, Format};
use minorkit::generate::{rng, SeededRng};
use minorkit::Graph;
use sha2::{Digest, Sha256};

use crate::{CliError, CliResult};

/// One corpus graph with its canonical text and digest.
#[derive(Debug, Clone)]
pub struct Instance {
    /// File name, plus `:line` for multi-graph graph6 files.
    pub source: String,
    pub graph: Graph,
    pub graph6: String,
    pub digest: String,
}

impl Instance {
    pub fn new(source: String, graph: Graph) -> Self {
        let graph6 = to_graph6(&graph);
        let digest = digest(&graph6);
        Instance {
            source,
            graph,
            graph6,
            digest,
        }
    }
}

/// Lowercase hex SHA-256 of a graph6 string.
pub fn digest(graph6: &str) -> String {
    Sha256::digest(graph6.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Per-instance generator: the stream is the digest's leading 64 bits, so
/// an instance draws the same numbers whatever else is in the corpus.
pub fn instance_rng(seed: u64, digest: &str) -> SeededRng {
    let stream = u64::from_str_radix(&digest[..16], 16).expect("digest is hex");
    rng(seed, stream)
}

/// Format implied by a file extension, if it is a graph file at all.
pub fn format_of(path: &Path) -> Option<Format> {
    match path.extension()?.to_str()? {
        "g6" | "graph6" => Some(Format::Graph6),
        "edges" | "edgelist" | "txt" => Some(Format::EdgeList),
        "col" | "dimacs" => Some(Format::Dimacs),
        _ => None,
    }
}

/// Graphs in one file. Graph6 files hold one graph per non-empty line; the
/// other formats hold one graph per file.
pub fn load_file(path: &Path, format: Format) -> CliResult<Vec<Instance>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let name = path
        .file_name()
        .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    let input = |source| CliError::Input {
        path: path.display().to_string(),
        source,
    };
    match format {
        Format::Graph6 => text
            .lines()
            .enumerate()
            .filter(|(_, line)| !line.trim().is_empty())
            .map(|(i, line)| {
                let g = parse_graph6(line).map_err(input)?;
                Ok(Instance::new(format!("{name}:{}", i + 1), g))
            })
            .collect(),
        other => {
            let parsed = parse_graph(&text, other).map_err(input)?;
            Ok(vec![Instance::new(name, parsed.graph)])
        }
    }
}

/// Every graph under `path`, sorted by digest then source. A directory is
/// read one level deep and files without a graph extension are skipped; a
/// single file defaults to graph6 unless `format` says otherwise.
pub fn load_corpus(path: &Path, format: Option<Format>) -> CliResult<Vec<Instance>> {
    let meta = std::fs::metadata(path).map_err(|e| CliError::io(path, e))?;
    let mut out = Vec::new();
    if meta.is_dir() {
        let mut files: Vec<_> = std::fs::read_dir(path)
            .map_err(|e| CliError::io(path, e))?
            .map(|entry| entry.map(|e| e.path()).map_err(|e| CliError::io(path, e)))
            .collect::<CliResult<_>>()?;
        files.sort();
        for file in files.iter().filter(|f| f.is_file()) {
            if let Some(fmt) = format.or_else(|| format_of(file)) {
                out.extend(load_file(file, fmt)?);
            }
        }
    } else {
        let fmt = format.or_else(|| format_of(path)).unwrap_or(Format::Graph6);
        out = load_file(path, fmt)?;
    }
    out.sort_by(|a, b| (&a.digest, &a.source).cmp(&(&b.digest, &b.source)));
    Ok(out)
}

/// First graph of a file, for commands that take a single instance.
pub fn load_single(path: &Path, format: Option<Format>) -> CliResult<Instance> {
    let fmt = format.or_else(|| format_of(path)).unwrap_or(Format::Graph6);
    load_file(path, fmt)?
        .into_iter()
        .next()
        .ok_or_else(|| CliError::Usage(format!("{}: no graph found", path.display())))
}
