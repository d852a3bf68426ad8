use thiserror::Error;

/// Resource limit that stopped a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    Pairs,
    BasisSize,
    CoefficientBits,
    Degree,
    Deadline,
    ResolutionLength,
    Search,
}

impl std::fmt::Display for Limit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Limit::Pairs => "max-pairs",
            Limit::BasisSize => "max-basis",
            Limit::CoefficientBits => "max-bits",
            Limit::Degree => "max-degree",
            Limit::Deadline => "timeout",
            Limit::ResolutionLength => "resolution-length",
            Limit::Search => "search-budget",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("modulus {0} is not a prime below 2^31")]
    NonPrimeModulus(u64),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("weights must be positive and one per variable")]
    BadWeights,
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("basis was not computed under an elimination order for {0} variables")]
    OrderMismatch(usize),
    #[error("resource limit `{0}` exceeded")]
    Resource(Limit),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
