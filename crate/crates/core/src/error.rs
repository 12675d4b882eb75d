use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("image table is not a bijection: {0}")]
    NotBijection(String),

    #[error("degree overflow: flattened degree {degree} exceeds cap {cap}")]
    DegreeOverflow { degree: String, cap: usize },

    #[error("level {level}: hypothesis failed: {what}")]
    Hypothesis { level: usize, what: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("enumeration budget exceeded: {0}")]
    Budget(String),

    #[error("level {level}: no admissible generator pair")]
    NoAdmissiblePair { level: usize },

    #[error("value not representable: {0}")]
    NotRepresentable(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}
