use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows} rows, row of length {cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is empty")]
    Empty,

    #[error("matrix is not column-stochastic: {0}")]
    NotStochastic(String),

    #[error("vector is not a probability vector (element of S2)")]
    NotProbabilityVector,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("vector is not an eigenvector (residual {residual:e})")]
    NotEigenvector { residual: f64 },

    #[error("eigenvector components sum to zero")]
    ZeroComponentSum,

    #[error("eigenvalue of a nonzero-sum eigenvector is {value}, expected 1")]
    EigenvalueNotOne { value: String },

    #[error("operation requires the exact rational backend")]
    RequiresExact,

    #[error("matrix is singular")]
    Singular,

    #[error("root finder did not converge after {iterations} iterations (best residual {residual:e})")]
    RootFinding { iterations: usize, residual: f64 },

    #[error("no feasible scaling found: {0}")]
    Infeasible(String),

    #[error("size limit exceeded: n = {n}, maximum {max}")]
    SizeLimit { n: usize, max: usize },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// CLI exit status: 2 for I/O and parse failures, 1 for domain failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Parse(_) | Error::Io(_) => 2,
            _ => 1,
        }
    }
}
