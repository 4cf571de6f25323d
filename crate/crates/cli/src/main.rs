use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use minorkit::constructions::ConstantsConfig;
use minorkit::format::Format;
use minorkit::{Vertex, DEFAULT_BUDGET};
use minorkit_cli::corpus::{load_corpus, load_single};
use minorkit_cli::find::{find, FindParams, Target};
use minorkit_cli::generate::{write, GenParams, Kind};
use minorkit_cli::report::{recheck_report, verify, ExperimentReport, VerifyRun};
use minorkit_cli::suites::{Suite, SuiteParams};
use minorkit_cli::{exit, CliError, CliResult};

/// Certificates and property suites for graph minors, list colouring and
/// disjoint paths.
#[derive(Debug, Parser)]
#[command(name = "minorkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write seeded graph families as graph6 files plus manifest.json.
    Generate {
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        /// Part size (multipartite) or copies per vertex (blowup).
        #[arg(long)]
        m: Option<usize>,
        /// Number of parts (multipartite).
        #[arg(long)]
        r: Option<usize>,
        /// Base graph file (blowup).
        #[arg(long)]
        base: Option<PathBuf>,
        /// Number of random graphs (gnp).
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a property suite over a corpus and write a JSON report.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Graph file or directory of graph files.
        #[arg(long)]
        corpus: PathBuf,
        /// TOML file of constants; missing keys keep their defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Worker threads; all cores when absent.
        #[arg(long)]
        jobs: Option<usize>,
        /// Clique or biclique order for suites that take one.
        #[arg(long)]
        t: Option<usize>,
        /// Input format, overriding file extensions.
        #[arg(long)]
        format: Option<Format>,
        /// Report path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add wall-clock timings, which makes reports differ between runs.
        #[arg(long)]
        timing: bool,
    },
    /// Search one graph and write the certificate.
    Find {
        what: Target,
        /// Graph file; the first graph is used.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        /// Terminal pairs, e.g. `0-5,3-7`.
        #[arg(long, value_parser = parse_pair, value_delimiter = ',')]
        pairs: Vec<(Vertex, Vertex)>,
        /// Indices of pairs whose path must be odd; makes a parity query.
        #[arg(long, value_delimiter = ',')]
        odd: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        a: Vec<Vertex>,
        #[arg(long, value_delimiter = ',')]
        b: Vec<Vertex>,
        /// Number of A-B paths (geodesic).
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Certificate path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify every certificate in a verify report.
    Recheck { report: PathBuf },
}

fn parse_pair(s: &str) -> Result<(Vertex, Vertex), String> {
    let (u, v) = s
        .split_once('-')
        .ok_or_else(|| format!("{s:?} is not of the form u-v"))?;
    let parse = |x: &str| x.trim().parse::<Vertex>().map_err(|e| format!("{x:?}: {e}"));
    Ok((parse(u)?, parse(v)?))
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Generate {
            kind,
            n,
            p,
            rows,
            cols,
            m,
            r,
            base,
            count,
            seed,
            out,
        } => {
            let params = GenParams {
                n,
                p,
                rows,
                cols,
                m,
                r,
                base,
                count,
            };
            let manifest = write(kind, &params, seed, &out)?;
            for f in &manifest.files {
                println!("{} {} n={} m={}", f.file, f.digest, f.n, f.m);
            }
            Ok(exit::OK)
        }
        Command::Verify {
            suite,
            corpus,
            config,
            seed,
            budget,
            jobs,
            t,
            format,
            out,
            timing,
        } => {
            let config = match &config {
                Some(path) => ConstantsConfig::load(path).map_err(|source| CliError::Input {
                    path: path.display().to_string(),
                    source,
                })?,
                None => ConstantsConfig::default(),
            };
            let instances = load_corpus(&corpus, format)?;
            let report = verify(&VerifyRun {
                suite,
                corpus_label: corpus.display().to_string(),
                instances: &instances,
                seed,
                params: SuiteParams { budget, t, config },
                jobs,
                timing,
            })?;
            emit(out.as_deref(), &report.to_json())?;
            let s = report.summary;
            eprintln!(
                "{}: {} pass, {} fail, {} exhausted, {} skipped",
                suite.name(),
                s.pass,
                s.fail,
                s.exhausted,
                s.skipped
            );
            Ok(if report.any_failed() { exit::FAILURE } else { exit::OK })
        }
        Command::Find {
            what,
            graph,
            format,
            t,
            s,
            pairs,
            odd,
            a,
            b,
            l,
            budget,
            out,
        } => {
            let inst = load_single(&graph, format)?;
            let params = FindParams {
                t,
                s,
                pairs,
                odd,
                a,
                b,
                l,
                budget,
            };
            let report = find(what, &inst, &params)?;
            emit(out.as_deref(), &(serde_json::to_string_pretty(&report)? + "\n"))?;
            let status = serde_json::to_value(report.status)?;
            eprintln!("{}", status.as_str().unwrap_or_default());
            Ok(report.status.exit_code())
        }
        Command::Recheck { report } => {
            let text = std::fs::read_to_string(&report).map_err(|e| CliError::io(&report, e))?;
            let parsed: ExperimentReport =
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", report.display())))?;
            let bad = recheck_report(&parsed)?;
            for (source, why) in &bad {
                eprintln!("{source}: {why}");
            }
            Ok(if bad.is_empty() { exit::OK } else { exit::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
