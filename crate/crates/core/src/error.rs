use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |A_ij - conj(A_ji)| = {defect:e} exceeds {tolerance:e}")]
    NotHermitian { defect: f64, tolerance: f64 },

    #[error("trace {0} differs from 1")]
    NotNormalized(f64),

    #[error("eigenvalue {0:e} is below the positivity tolerance")]
    NotPositive(f64),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("operation requires a bipartite split")]
    MissingSplit,

    #[error("split {na}x{nb} does not factor dimension {dim}")]
    BadSplit { na: usize, nb: usize, dim: usize },

    #[error("logarithm of a singular matrix (eigenvalue {0:e})")]
    Singular(f64),

    #[error("linalg: eigensolver did not converge on a {dim}x{dim} matrix (max |A_ij| = {max_abs:e})")]
    EigenNoConvergence { dim: usize, max_abs: f64 },

    #[error("limit-laws: quadrature stopped at estimated error {achieved:e} (requested {requested:e})")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures of a numerical routine, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::EigenNoConvergence { .. } | Error::Quadrature { .. }
        )
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
