use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("shape mismatch: expected {expected:?}, got {actual:?}")]
    Shape {
        expected: (usize, usize),
        actual: (usize, usize),
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("vertex {0} is isolated (degree 0)")]
    IsolatedVertex(usize),

    #[error("second-moment matrix is rank deficient (smallest eigenvalue {0:e})")]
    RankDeficient(f64),

    #[error("second-moment matrix has repeated eigenvalues (gap {0:e})")]
    RepeatedEigenvalues(f64),
}

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
