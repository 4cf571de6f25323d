use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("density undefined for the null graph")]
    DensityUndefined,
    #[error("edge {0}-{1} is not an edge of the graph")]
    NotAnEdge(Vertex, Vertex),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("budget must be positive")]
    InvalidBudget,
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("vertex {0} has no list")]
    MissingList(Vertex),
    #[error("insufficient lists: need size at least {needed}, smallest list has {found}")]
    InsufficientLists { needed: usize, found: usize },
    #[error("graph on {n} vertices exceeds exact bound {bound}")]
    ExceedsExactBound { n: usize, bound: usize },
    #[error("palette of size {0} too small for the requested enumeration")]
    PaletteTooSmall(u32),
    #[error("not bipartite")]
    NotBipartite,
    #[error("not a bipartition of the graph: {0}")]
    NotABipartition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("sets are not disjoint")]
    NotDisjoint,
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("threshold: {0}")]
    Threshold(String),
    #[error("oracle failure: {0}")]
    Oracle(String),
    #[error("config: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}
