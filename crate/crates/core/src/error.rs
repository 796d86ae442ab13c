use thiserror::Error;

/// Errors produced by construction, ingestion, estimation and simulation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: f64 },

    #[error("entry {index} is not a finite number")]
    NonFinite { index: usize },

    #[error("entries sum to {sum}, expected 1 (enable normalization to rescale)")]
    SumNotOne { sum: f64 },

    #[error("input is empty or all entries are zero")]
    AllZero,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("entry {index} has zero probability; drop empty bins first (restrict_to_support)")]
    ZeroProbability { index: usize },

    #[error("declared support size {declared} is smaller than the {observed} occupied bins")]
    SupportTooSmall { declared: usize, observed: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} out of range for {len} bins")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),

    #[error("experiment needs {required} events (trials x largest n), budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("root finder did not converge: {0}")]
    NoConvergence(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
