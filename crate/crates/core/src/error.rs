use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("direction vector must have unit norm, got norm {norm}")]
    NonUnitVector { norm: f64 },

    #[error("angle must be finite, got {0}")]
    NonFiniteAngle(f64),

    #[error("spinor must be normalized, got squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("matrix is not in SU(2)")]
    NotSpecialUnitary,

    #[error("correlation value {0} lies outside [-1, 1]")]
    CorrelationOutOfRange(f64),

    #[error("trial count must be at least 1")]
    ZeroTrials,

    #[error("analyzer directions must be pairwise distinct")]
    DuplicateDirections,

    #[error("angle grid must not be empty")]
    EmptyGrid,
}

pub type Result<T> = std::result::Result<T, Error>;
