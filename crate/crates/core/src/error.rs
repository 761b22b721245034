use thiserror::Error;

/// Errors raised by the samplers, engines and the experiment harness.
#[derive(Debug, Error)]
pub enum LabError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("side length must be even, got {0}")]
    OddDimension(usize),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("not a perfect matching: {0}")]
    NotAMatching(String),

    #[error("index sets overlap at {0}")]
    OverlappingSets(usize),

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("{what}: budget exceeded (needs {needed}, cap {cap})")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("vector is not a unit vector (norm {0})")]
    NonUnitVector(f64),

    #[error("SVD did not converge (achieved residual {residual:e})")]
    NonConvergence { residual: f64 },

    #[error("constraint violated: {0}")]
    ConstraintViolated(String),

    #[error("unknown invariant suite `{0}`")]
    UnknownSuite(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl LabError {
    /// True for failures caused by a violated precondition or an exhausted
    /// enumeration budget, as opposed to I/O or schema problems.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            LabError::InvalidParameter(_)
                | LabError::DimensionMismatch { .. }
                | LabError::OddDimension(_)
                | LabError::NotSquare { .. }
                | LabError::NotAMatching(_)
                | LabError::OverlappingSets(_)
                | LabError::IndexOutOfRange { .. }
                | LabError::BudgetExceeded { .. }
                | LabError::NotOddPrime(_)
                | LabError::NonUnitVector(_)
                | LabError::ConstraintViolated(_)
        )
    }
}

pub type Result<T, E = LabError> = std::result::Result<T, E>;
