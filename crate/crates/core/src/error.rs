use thiserror::Error;

/// Errors raised by the algebra kernels and the engines built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCount { expected: usize, found: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableIndex { index: usize, nvars: usize },

    #[error("expected {expected} polynomials, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("total degree {degree} exceeds the degree cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },

    #[error("radical unsupported for this ideal class (neither monomial nor zero-dimensional)")]
    RadicalUnsupported,

    #[error("the set of kept variables is empty")]
    EmptyKeep,

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("truncation {truncation} cannot certify generation degree {degree} (need at least {needed})")]
    TruncationInsufficient {
        degree: usize,
        truncation: usize,
        needed: usize,
    },

    #[error("graded ring is not closed under multiplication: product lands outside degree {degree}")]
    NotClosed { degree: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
