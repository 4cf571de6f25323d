//! Shared result types for verifiers and budgeted searches.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Search-tree node limit used when callers do not pick one.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// The first clause a certificate breaks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub clause: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Valid,
    Invalid(Violation),
}

impl Verdict {
    pub fn fail(clause: &str, detail: impl Into<String>) -> Self {
        Verdict::Invalid(Violation {
            clause: clause.to_owned(),
            detail: detail.into(),
        })
    }

    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn clause(&self) -> Option<&str> {
        match self {
            Verdict::Valid => None,
            Verdict::Invalid(v) => Some(&v.clause),
        }
    }

    /// Continues with `next` only while still valid.
    pub fn and_then(self, next: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Valid => next(),
            invalid => invalid,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => f.write_str("valid"),
            Verdict::Invalid(v) => write!(f, "{}: {}", v.clause, v.detail),
        }
    }
}

/// Early-return helper for verifiers: `ensure!(cond, "clause", "detail {}", x)`.
macro_rules! ensure {
    ($cond:expr, $clause:expr, $($detail:tt)+) => {
        if !$cond {
            return $crate::search::Verdict::fail($clause, format!($($detail)+));
        }
    };
}
pub(crate) use ensure;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "certificate", rename_all = "kebab-case")]
pub enum Search<T> {
    Found(T),
    /// The node budget ran out before the search space was covered.
    Exhausted,
    /// The whole search space was covered without a hit.
    ProvenAbsent,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_found(&self) -> Option<&T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    pub fn is_proven_absent(&self) -> bool {
        matches!(self, Search::ProvenAbsent)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Search<U> {
        match self {
            Search::Found(t) => Search::Found(f(t)),
            Search::Exhausted => Search::Exhausted,
            Search::ProvenAbsent => Search::ProvenAbsent,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            Search::Found(_) => "found",
            Search::Exhausted => "exhausted",
            Search::ProvenAbsent => "proven-absent",
        }
    }
}

/// Counts search-tree nodes against a fixed limit.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
    tripped: bool,
}

impl Budget {
    pub fn new(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::InvalidBudget);
        }
        Ok(Budget {
            limit,
            used: 0,
            tripped: false,
        })
    }

    /// Charges one node. Returns `false` once the limit is reached.
    pub fn tick(&mut self) -> bool {
        if self.used >= self.limit {
            self.tripped = true;
            return false;
        }
        self.used += 1;
        true
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn tripped(&self) -> bool {
        self.tripped
    }

    /// Wraps a search result: a miss after the budget tripped is only
    /// "exhausted", never "proven absent".
    pub fn conclude<T>(&self, hit: Option<T>) -> Search<T> {
        match hit {
            Some(t) => Search::Found(t),
            None if self.tripped => Search::Exhausted,
            None => Search::ProvenAbsent,
        }
    }
}
