use thiserror::Error;

/// Errors produced by the planar series library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed tree at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("node has {0} children; a reduced tree needs at least 2")]
    Unreduced(usize),
    #[error("the unit (empty tree) cannot appear as a child")]
    UnitChild,
    #[error("node arity {0} exceeds the supported maximum of 255")]
    ArityTooLarge(usize),
    #[error("leaf index {index} out of range for a tree of degree {degree}")]
    LeafIndex { index: usize, degree: usize },
    #[error("coefficient of degree {degree} requested above truncation {trunc}")]
    AboveTruncation { degree: usize, trunc: usize },
    #[error("constant term vanishes")]
    VanishingConstantTerm,
    #[error("root is inconsistent with the constant term")]
    InconsistentRoot,
    #[error("arity must be at least 2, got {0}")]
    Arity(usize),
    #[error("requested output truncation {requested} exceeds source truncation {available}")]
    TruncationExceedsSource { requested: usize, available: usize },
    #[error("series is not an exact polynomial")]
    NotPolynomial,
    #[error("point {0} is outside the domain")]
    OutOfDomain(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("invalid series document: {0}")]
    Format(String),
    #[error("unknown name: {0}")]
    Unknown(String),
    #[error("not enough data: {0}")]
    InsufficientData(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
