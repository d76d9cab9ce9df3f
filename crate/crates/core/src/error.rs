use thiserror::Error;

/// Errors raised by the library. Messages name the violated invariant so the
/// CLI can print them directly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),

    #[error("branes {0} and {1} have the same kind; a Hanany-Witten move needs one NS5 and one D5")]
    SameKind(usize, usize),

    #[error("brane position {0} out of range")]
    BraneIndex(usize),

    #[error("Hanany-Witten move at brane {position} would give multiplicity {value} < 0")]
    NegativeMultiplicity { position: usize, value: i128 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("exponent overflow in K-class arithmetic")]
    ExponentOverflow,

    #[error("malformed weight: {0}")]
    MalformedWeight(String),

    #[error("class is virtual: coefficient {coeff} of {term} is not positive")]
    NegativeCoefficient { term: String, coeff: i64 },

    #[error("margins admit no fixed points: {0}")]
    NegativeMargin(String),

    #[error("table margins {found} do not match diagram charges {expected}")]
    MarginMismatch { expected: String, found: String },

    #[error("invalid tie diagram: {0}")]
    InvalidTies(String),

    #[error("sigma has length {found}, expected {expected}")]
    SigmaLengthMismatch { expected: usize, found: usize },

    #[error("row {row} is not a pair for columns ({one_col}, {zero_col})")]
    NotAPair { row: usize, one_col: usize, zero_col: usize },

    #[error("diagram is not separated; separate it first")]
    NotSeparated,

    #[error("fixed point {0} does not exist")]
    NoSuchFixedPoint(String),
}

pub type Result<T> = std::result::Result<T, Error>;
