use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degree {degree} exceeds supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("eigensolver did not converge for eigenvalue {index} after {iterations} iterations")]
    NoConvergence { index: usize, iterations: usize },

    #[error("gram matrix is ill-conditioned (condition number {condition:.3e})")]
    IllConditioned { condition: f64 },

    #[error("truncation tail bound {bound:.3e} exceeds tolerance {tol:.3e}")]
    TailBound { bound: f64, tol: f64 },

    #[error("contour quadrature did not converge: last change {delta:.3e} with {nodes} nodes")]
    ContourNotConverged { delta: f64, nodes: usize },

    #[error("lattice window did not stabilise: change {delta:.3e}")]
    WindowNotConverged { delta: f64 },

    #[error("value {value} outside [0, 1]")]
    ProbabilityOutOfRange { value: f64 },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("series term limit: {0}")]
    TooManyTerms(String),

    #[error("tiling coverage check failed: {0}")]
    Coverage(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
