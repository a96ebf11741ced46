use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("backend mismatch: {0}")]
    BackendMismatch(String),

    #[error("element is not invertible: {0}")]
    NonInvertible(String),

    #[error("leading jet coefficient is not invertible")]
    NonInvertibleLeadingTerm,

    #[error("root {requested} is not a multiple of the jet root {actual}")]
    RootIncompatible { requested: u32, actual: u32 },

    #[error("jet too short to decide an order claim of {m} at root {root} (length {len})")]
    OrderUndecidable { m: u32, root: u32, len: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("not a motion: {0}")]
    NotAMotion(String),

    #[error("integrator step size underflow at t = {0}")]
    StepFailure(f64),

    #[error("form is not alternating (residual {0:.3e})")]
    NotAlternating(f64),

    #[error("premise violated: {0}")]
    PremiseViolated(String),

    #[error("arity mismatch: expected {expected} fields, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("evaluation error: {0}")]
    Eval(String),
}

pub type Result<T> = std::result::Result<T, Error>;
