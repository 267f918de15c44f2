use num_rational::BigRational;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Division by an exact zero (rational, polynomial, or rational function).
    #[error("division by zero")]
    DivisionByZero,

    /// Square root of a negative number.
    #[error("square root of negative value")]
    NegativeSqrt,

    /// A rational function was evaluated at a zero of its denominator.
    #[error("evaluation at a pole: denominator vanishes at {0}")]
    Pole(BigRational),

    /// The series has no rational term sequence to expose.
    #[error("series has no closed rational term formula: {0}")]
    UnsupportedTerm(&'static str),

    /// An argument fell outside the documented domain of an operation.
    #[error("argument out of domain: {0}")]
    OutOfDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::OutOfDomain(msg.into())
    }
}
