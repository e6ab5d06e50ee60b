use thiserror::Error;

use crate::funcdsl::{EvalError, ParseError};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("vector component {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("vector must have at least one component")]
    EmptyVector,

    #[error("invalid norm: {0}")]
    InvalidNorm(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("vectors are not equinorm: ‖x‖ = {norm_x}, ‖y‖ = {norm_y}")]
    NotEquinorm { norm_x: f64, norm_y: f64 },

    #[error("bisection did not converge in {iterations} iterations (best defect {best_defect:e})")]
    NoConvergence { iterations: usize, best_defect: f64 },

    #[error("degenerate bisection path at θ = {theta}")]
    DegeneratePath { theta: f64 },

    #[error("pair generator failed {attempts} times for pair {index}: {last}")]
    GeneratorExhausted {
        index: usize,
        attempts: usize,
        last: String,
    },

    #[error("anchor vector x0 must be nonzero")]
    ZeroAnchor,

    #[error("hypothesis violated: {map}(0) has norm {norm:e}, expected 0")]
    Hypothesis { map: String, norm: f64 },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Eval(#[from] EvalError),

    #[error("config error: {0}")]
    Config(String),

    #[error("malformed pair file at line {line}: {reason}")]
    PairFile { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
