use thiserror::Error;

/// Errors surfaced by construction and verification entry points.
///
/// Failures of *mathematical assertions* (a relation that does not hold, a
/// conflicting splitting assignment) are reported as data through
/// [`crate::report::CheckReport`]; the variants here are for malformed input
/// or internal contract violations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a Cartan matrix: {0}")]
    BadCartan(String),

    #[error("not finite type: {0}")]
    NotFiniteType(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("mode mismatch: {0}")]
    ModeMismatch(String),

    #[error("weight mismatch: {0}")]
    WeightMismatch(String),

    #[error("division of ring elements left a remainder: {0}")]
    InexactDivision(String),

    #[error("denominator vanishes at the anchor weight: {0}")]
    AnchorViolation(String),

    #[error("splitting family conflict at {0}")]
    SplitConflict(String),

    #[error("ratio of data is not invertible at {0}")]
    NonInvertibleRatio(String),

    #[error("invalid parameter set: {0}")]
    BadParams(String),

    #[error("invalid argument: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
