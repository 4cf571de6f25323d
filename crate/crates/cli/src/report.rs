//! The `verify` report: one entry per corpus instance, sorted by digest.

use std::collections::BTreeMap;
use std::time::Instant;

use minorkit::format::parse_graph6;
use minorkit::Verdict;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{instance_rng, Instance};
use crate::suites::{recheck, run, Certificate, Status, Suite, SuiteParams};
use crate::{CliError, CliResult, SCHEMA};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub source: String,
    pub graph6: String,
    pub digest: String,
    pub n: usize,
    pub m: usize,
    pub status: Status,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub exhausted: usize,
    pub skipped: usize,
}

/// Wall-clock figures, only present when asked for, since they break
/// byte-identical reruns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: f64,
    pub per_instance_ms: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema: u32,
    pub command: String,
    pub suite: Suite,
    pub corpus: String,
    pub seed: u64,
    pub budget: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    pub config: BTreeMap<String, f64>,
    pub summary: Summary,
    pub instances: Vec<InstanceReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl ExperimentReport {
    pub fn any_failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

pub struct VerifyRun<'a> {
    pub suite: Suite,
    pub corpus_label: String,
    pub instances: &'a [Instance],
    pub seed: u64,
    pub params: SuiteParams,
    pub jobs: Option<usize>,
    pub timing: bool,
}

/// Runs the suite on every instance in parallel; the output order is the
/// corpus order, which is already sorted by digest.
pub fn verify(run_spec: &VerifyRun) -> CliResult<ExperimentReport> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = run_spec.jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| CliError::Usage(e.to_string()))?;
    let start = Instant::now();
    let results: Vec<(InstanceReport, f64)> = pool.install(|| {
        run_spec
            .instances
            .par_iter()
            .map(|inst| {
                let t0 = Instant::now();
                let mut r = instance_rng(run_spec.seed, &inst.digest);
                let o = run(run_spec.suite, &inst.graph, &mut r, &run_spec.params);
                let report = InstanceReport {
                    source: inst.source.clone(),
                    graph6: inst.graph6.clone(),
                    digest: inst.digest.clone(),
                    n: inst.graph.n(),
                    m: inst.graph.m(),
                    status: o.status,
                    detail: o.detail,
                    certificate: o.certificate,
                };
                (report, t0.elapsed().as_secs_f64() * 1e3)
            })
            .collect()
    });
    let total_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut summary = Summary::default();
    for (r, _) in &results {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Exhausted => summary.exhausted += 1,
            Status::Skipped => summary.skipped += 1,
        }
    }
    let (instances, per_instance_ms) = results.into_iter().unzip();
    Ok(ExperimentReport {
        schema: SCHEMA,
        command: "verify".into(),
        suite: run_spec.suite,
        corpus: run_spec.corpus_label.clone(),
        seed: run_spec.seed,
        budget: run_spec.params.budget,
        t: run_spec.params.t.or(run_spec.suite.default_t()),
        config: run_spec
            .params
            .config
            .entries()
            .into_iter()
            .map(|(k, v)| (k.to_owned(), v))
            .collect(),
        summary,
        instances,
        timing: run_spec.timing.then_some(Timing {
            total_ms,
            per_instance_ms,
        }),
    })
}

/// Re-verifies every certificate in a report against its graph6 string.
/// Returns the sources whose certificate no longer verifies.
pub fn recheck_report(report: &ExperimentReport) -> CliResult<Vec<(String, String)>> {
    if report.schema != SCHEMA {
        return Err(CliError::Usage(format!("unsupported report schema {}", report.schema)));
    }
    let mut bad = Vec::new();
    for inst in &report.instances {
        let Some(c) = &inst.certificate else { continue };
        let g = parse_graph6(&inst.graph6)?;
        match recheck(&g, c) {
            Ok(Verdict::Valid) => {}
            Ok(v) => bad.push((inst.source.clone(), v.to_string())),
            Err(e) => bad.push((inst.source.clone(), e.to_string())),
        }
    }
    Ok(bad)
}
