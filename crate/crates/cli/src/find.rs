//! Single-instance searches that write a certificate file.

use clap::ValueEnum;
use minorkit::linkage::{
    find_geodesic_ab_paths, find_linkage, total_length, verify_ab_paths, verify_linkage, Linkage, LinkageSpec, Path,
};
use minorkit::minors::{find_biclique_minor, find_clique_minor, verify_kst_model, verify_model, KstModel, Model};
use minorkit::{Search, Verdict, Vertex};
use serde::{Deserialize, Serialize};

use crate::corpus::Instance;
use crate::{exit, CliError, CliResult, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    CliqueMinor,
    BicliqueMinor,
    Linkage,
    Geodesic,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<(Vertex, Vertex)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub odd: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub a: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub b: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "kebab-case")]
pub enum FoundCertificate {
    CliqueModel { model: Model },
    BicliqueModel { model: KstModel },
    Linkage { spec: LinkageSpec, linkage: Linkage },
    Geodesic { paths: Vec<Path>, total_length: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FindStatus {
    Found,
    Exhausted,
    ProvenAbsent,
}

impl FindStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            FindStatus::Found => exit::OK,
            FindStatus::Exhausted => exit::EXHAUSTED,
            FindStatus::ProvenAbsent => exit::ABSENT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindReport {
    pub schema: u32,
    pub command: String,
    pub what: Target,
    pub graph6: String,
    pub digest: String,
    pub params: FindParams,
    pub status: FindStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<FoundCertificate>,
}

fn need<T: Clone>(v: &Option<T>, name: &str) -> CliResult<T> {
    v.clone().ok_or_else(|| CliError::Usage(format!("missing --{name}")))
}

fn status_of<T>(s: Search<T>) -> (FindStatus, Option<T>) {
    match s {
        Search::Found(x) => (FindStatus::Found, Some(x)),
        Search::Exhausted => (FindStatus::Exhausted, None),
        Search::ProvenAbsent => (FindStatus::ProvenAbsent, None),
    }
}

/// Runs the search; a found certificate is re-verified before it is
/// returned.
pub fn find(what: Target, inst: &Instance, params: &FindParams) -> CliResult<FindReport> {
    let g = &inst.graph;
    let (status, certificate) = match what {
        Target::CliqueMinor => {
            let t = need(&params.t, "t")?;
            let (st, m) = status_of(find_clique_minor(g, t, params.budget)?);
            (st, m.map(|model| FoundCertificate::CliqueModel { model }))
        }
        Target::BicliqueMinor => {
            let (s, t) = (need(&params.s, "s")?, need(&params.t, "t")?);
            let (st, m) = status_of(find_biclique_minor(g, s, t, params.budget)?);
            (st, m.map(|model| FoundCertificate::BicliqueModel { model }))
        }
        Target::Linkage => {
            if params.pairs.is_empty() {
                return Err(CliError::Usage("linkage needs --pairs".into()));
            }
            let spec = match &params.odd {
                Some(odd) => LinkageSpec::with_parity(params.pairs.clone(), odd.clone())?,
                None => LinkageSpec::new(params.pairs.clone()),
            };
            let (st, l) = status_of(find_linkage(g, &spec, params.budget)?);
            (st, l.map(|linkage| FoundCertificate::Linkage { spec, linkage }))
        }
        Target::Geodesic => {
            let l = need(&params.l, "l")?;
            if params.a.is_empty() || params.b.is_empty() {
                return Err(CliError::Usage("geodesic needs --a and --b".into()));
            }
            // Min-cost flow is exact, so no paths means none exist.
            match find_geodesic_ab_paths(g, &params.a, &params.b, l)? {
                Some(paths) => {
                    let total_length = total_length(&paths);
                    (
                        FindStatus::Found,
                        Some(FoundCertificate::Geodesic { paths, total_length }),
                    )
                }
                None => (FindStatus::ProvenAbsent, None),
            }
        }
    };
    let report = FindReport {
        schema: SCHEMA,
        command: "find".into(),
        what,
        graph6: inst.graph6.clone(),
        digest: inst.digest.clone(),
        params: params.clone(),
        status,
        certificate,
    };
    if let Verdict::Invalid(v) = recheck_find(&report)? {
        return Err(minorkit::Error::Oracle(format!("certificate fails: {}: {}", v.clause, v.detail)).into());
    }
    Ok(report)
}

/// Re-verifies the certificate of a find report from its graph6 string.
pub fn recheck_find(report: &FindReport) -> CliResult<Verdict> {
    let g = minorkit::format::parse_graph6(&report.graph6)?;
    let p = &report.params;
    Ok(match &report.certificate {
        None => Verdict::Valid,
        Some(FoundCertificate::CliqueModel { model }) => verify_model(&g, model)?,
        Some(FoundCertificate::BicliqueModel { model }) => verify_kst_model(&g, model)?,
        Some(FoundCertificate::Linkage { spec, linkage }) => verify_linkage(&g, spec, linkage)?,
        Some(FoundCertificate::Geodesic {
            paths,
            total_length: len,
        }) => {
            let v = verify_ab_paths(&g, &p.a, &p.b, paths)?;
            if v.is_valid() && (Some(paths.len()) != p.l || total_length(paths) != *len) {
                Verdict::fail("geodesic", "path count or total length disagrees")
            } else {
                v
            }
        }
    })
}
