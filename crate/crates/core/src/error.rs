use thiserror::Error;

/// Errors produced by group enumeration, norm estimation and the bound formulas.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid group descriptor `{0}`")]
    InvalidGroup(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("invalid split: a + b = {requested} but the element has length {length}")]
    InvalidSplit { requested: usize, length: usize },

    #[error("enumeration of {what} needs {requested} elements, above the cap of {cap}")]
    ResourceLimit {
        what: String,
        requested: u128,
        cap: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{bound} is only asserted for free groups, not {group}")]
    UnsupportedBound { bound: &'static str, group: String },

    #[error("power iteration did not converge after {iterations} iterations (best lower bound {best_lower_bound})")]
    Convergence {
        iterations: usize,
        best_lower_bound: f64,
    },

    #[error("proof trace violated {count} check(s): {first}")]
    ProofTraceViolation { count: usize, first: String },

    #[error("usage: {0}")]
    Usage(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
