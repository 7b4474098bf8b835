use thiserror::Error;

/// Errors raised by the algebra, geometry and front-end layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by an element of Q")]
    DivisionByZeroModQ,
    #[error("ideal claimed prime is not prime: {0}")]
    NotPrime(String),
    #[error("operation needs a nonzero operator")]
    ZeroOperator,
    #[error("every coefficient lies in Q")]
    AllCoefficientsInQ,
    #[error("division by the zero operator")]
    ZeroDivisor,
    #[error("divisor {0} has all coefficients in Q")]
    DivisorInQ(usize),
    #[error("leading coefficient numerator of divisor {0} does not divide h")]
    LcDoesNotDivideH(usize),
    #[error("truncation cap {0} too small: staircase not stable")]
    CapTooSmall(u32),
    #[error("weight is not admissible: {0}")]
    NotAdmissible(String),
    #[error("cone is empty")]
    EmptyCone,
    #[error("fan traversal exceeded its budget of {0} cells")]
    NonConvergentTraversal(usize),
    #[error("stratification exceeded depth {0}")]
    DepthExceeded(usize),
    #[error("a denominator vanishes at the specialization point")]
    DenominatorVanishes,
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown name `{name}` at {line}:{col}")]
    UnknownName { name: String, line: usize, col: usize },
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
