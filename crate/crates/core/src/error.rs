use thiserror::Error;

/// Errors raised by constructors and operations of this crate.
///
/// Axiom failures are never reported through this type; they are returned
/// as data by the validator.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("order must be positive")]
    ZeroOrder,

    #[error("invalid involution: {0}")]
    InvalidInvolution(String),

    #[error("invalid relabeling: {0}")]
    InvalidRelabeling(String),

    #[error("coefficient of c_0 in δ_{index} ∘ δ_{index}* is zero")]
    ZeroUnitCoefficient { index: usize },

    #[error("parameters outside the admissible region: {0}")]
    OutOfRegion(String),

    #[error("degenerate slope {0}: the line is tangent to an asymptotic direction")]
    DegenerateSlope(String),

    #[error("not a group table: {0}")]
    NotAGroup(String),

    #[error("unknown parameter symbol `{0}`")]
    UnknownSymbol(String),

    #[error("unknown identity: triple {triple:?}, coefficient {coefficient}")]
    UnknownIdentity { triple: (usize, usize, usize), coefficient: usize },

    #[error("polynomial degree {0} exceeds 2")]
    DegreeTooHigh(u32),

    #[error("malformed rational `{0}`")]
    MalformedRational(String),

    #[error("malformed document: {0}")]
    MalformedDocument(String),

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("step must lie strictly between 0 and 1/2")]
    InvalidStep,

    #[error("width must be positive")]
    InvalidWidth,
}

pub type Result<T> = std::result::Result<T, Error>;
