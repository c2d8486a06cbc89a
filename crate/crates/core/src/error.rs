use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid CFL parameters: {0}")]
    InvalidCfl(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("shape mismatch: expected {expected} values, got {actual}")]
    ShapeMismatch { expected: usize, actual: usize },

    /// A step produced a non-finite value.
    #[error("scheme diverged (non-finite value at node {node})")]
    Diverged { node: usize },

    #[error("foot point {x} lies outside the extended domain [{lo}, {hi}]")]
    FootPointOutside { x: f64, lo: f64, hi: f64 },

    #[error("error mask selects no nodes")]
    EmptyMask,

    #[error("unknown problem '{0}'")]
    UnknownProblem(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),
}
