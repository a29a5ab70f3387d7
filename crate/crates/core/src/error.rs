//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable sets differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("polytope is empty at the given parameters")]
    EmptyPolytope,
    #[error("polytope is unbounded at the given parameters")]
    Unbounded,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),
    #[error("virtual polytope: {0}")]
    VirtualPolytope(String),
    #[error("singular linear system")]
    SingularSystem,
    #[error("{0}")]
    Invalid(String),
}
