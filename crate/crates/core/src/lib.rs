//! Minor certificates, list colouring, disjoint-path linkages and the
//! constructive transformations built from them, at desk scale.
//!
//! Every search returns a certificate that is re-checked by an independent
//! verifier before it leaves the crate.

pub mod coloring;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub(crate) mod flow;
pub mod format;
pub mod generate;
pub mod graph;
pub mod linkage;
pub mod minors;
pub mod search;
pub mod woven;

pub use error::{Error, Result};
pub use graph::{DegeneracyOrder, Edge, Graph, Vertex};
pub use search::{Budget, Search, Verdict, Violation, DEFAULT_BUDGET};
