use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("weights must be positive integers, got ({0}, {1})")]
    InvalidWeights(i64, i64),
    #[error("{what} is not weight-homogeneous for weights ({w1}, {w2})")]
    NotHomogeneous { what: String, w1: u32, w2: u32 },
    #[error("f must have positive weighted degree, got {0}")]
    NonPositiveDegree(i64),
    #[error("f is not of finite codimension: the Jacobian ideal misses degree {degree}")]
    InfiniteCodimension { degree: i64 },
    #[error("h must be zero or weight-homogeneous of degree {expected}, got degree {found}")]
    WrongHDegree { expected: i64, found: i64 },
    #[error("h must vanish when d - w1 - w2 = {0} <= 0")]
    HNotAllowed(i64),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("wedge of polyvector degrees {0} and {1} exceeds top degree 2")]
    DegreeOverflow(u8, u8),
    #[error("input is not a cocycle")]
    NotACocycle,
    #[error("jet order {0} is too small: solves at {0} and {1} disagree")]
    JetUnstable(i64, i64),
    #[error("invalid catalog selection: {0}")]
    Catalog(String),
    #[error("invalid basis override: {0}")]
    BasisOverride(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
