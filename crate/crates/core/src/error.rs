use thiserror::Error;

use crate::space::SpaceViolation;
use crate::tree::TreeViolation;
use crate::validation::ValidationReport;

/// Broad classification of an [`Error`], used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// The input is well formed but violates a mathematical precondition.
    Domain,
    /// The input could not be read or parsed.
    Structural,
    /// The request exceeds a configured size budget.
    Resource,
    /// An internal consistency check failed. Always a bug.
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Structural(String),

    #[error("not an ultrametric space: {} violation(s), first: {}", .0.violations.len(), first_violation(.0))]
    NotUltrametric(ValidationReport<SpaceViolation>),

    #[error("labeled rooted tree fails the realizability conditions: {} violation(s), first: {}", .0.violations.len(), first_violation(.0))]
    InvalidTree(ValidationReport<TreeViolation>),

    #[error("subset must be nonempty")]
    EmptySubset,

    #[error("point index {0} is out of range")]
    PointOutOfRange(usize),

    #[error("unknown point {0:?}")]
    UnknownPoint(String),

    #[error("radius must be positive")]
    NonPositiveRadius,

    #[error("operation needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("partition does not cover the point set exactly: {0}")]
    PartitionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("internal invariant violated ({invariant}): {detail}")]
    Internal {
        invariant: &'static str,
        detail: String,
    },
}

fn first_violation<V: std::fmt::Display>(report: &ValidationReport<V>) -> String {
    report
        .violations
        .first()
        .map(ToString::to_string)
        .unwrap_or_else(|| "none".to_owned())
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Structural(_) => ErrorCategory::Structural,
            Error::Resource(_) => ErrorCategory::Resource,
            Error::Internal { .. } => ErrorCategory::Internal,
            _ => ErrorCategory::Domain,
        }
    }

    pub(crate) fn internal(invariant: &'static str, detail: impl Into<String>) -> Self {
        Error::Internal {
            invariant,
            detail: detail.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Structural(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Structural(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
