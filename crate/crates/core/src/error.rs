use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("target coincides with the surface position")]
    DegenerateGeometry,

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("normalization reference must be positive, got {0}")]
    NonPositiveReference(f64),

    #[error("{0} elements cannot be arranged on a square grid")]
    NotPerfectSquare(usize),

    #[error("exhaustive search refused: N = {n} exceeds the limit of {limit}")]
    ExhaustiveLimit { n: usize, limit: usize },

    #[error("gradient ascent cannot start from the zero vector")]
    ZeroStart,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// True for errors where the request was well-formed but exceeds what the
    /// solver is willing to compute.
    pub fn is_refusal(&self) -> bool {
        matches!(self, Error::ExhaustiveLimit { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
