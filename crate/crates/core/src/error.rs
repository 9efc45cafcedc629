use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("element index {index} out of range for ground set of size {ground_size}")]
    IndexOutOfRange { index: usize, ground_size: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("circumference undefined: the matroid has no circuit")]
    CircumferenceUndefined,

    #[error(
        "instance too large for exact kappa: {free} free elements exceed the budget of {budget}"
    )]
    KappaBudgetExceeded { free: usize, budget: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal consistency check failed. For the triple-extension and
    /// linking steps this would be a counterexample to the underlying lemma.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("matrix is not simple: rows {0} and {1} are equal")]
    NotSimple(usize, usize),

    #[error("relation is not a strict partial order: {0}")]
    NotPartialOrder(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
