use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument violates a stated precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// Gaussian elimination met a zero pivot column.
    #[error("singular matrix: {0}")]
    SingularMatrix(String),
    /// A value table lacks a point the operation must read.
    #[error("missing value at {0}")]
    MissingValue(i64),
    /// Interpolation nodes are not pairwise distinct.
    #[error("degenerate nodes: {0}")]
    DegenerateNodes(String),
    /// The symmetric-function determinant of a lacunary system vanishes.
    #[error("singular Schur determinant")]
    SingularSchur,
    /// A dynamic-programming horizon exceeds the supported range.
    #[error("horizon too large: {0}")]
    HorizonTooLarge(String),
    /// A determinant is too close to zero for a reliable quotient.
    #[error("near-singular determinant (|D| = {0:e})")]
    NearSingular(f64),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
