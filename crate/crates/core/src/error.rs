use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A low-order coefficient blocked division by a power of the variable.
    #[error("polynomial is not divisible by x^{power}: coefficient of x^{degree} is {coefficient}")]
    NotDivisible {
        power: usize,
        degree: usize,
        coefficient: String,
    },

    #[error("series has the wrong constant term: expected {expected}")]
    BadConstantTerm { expected: &'static str },

    #[error("result has a non-integral coefficient {0}")]
    NonIntegral(String),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("{what} of size {size} exceeds the enumeration limit {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("time budget of {0} ms exceeded")]
    BudgetExceeded(u128),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotDivisible { .. } => "NotDivisible",
            Error::BadConstantTerm { .. } => "BadConstantTerm",
            Error::NonIntegral(_) => "NonIntegral",
            Error::BadParams(_) => "BadParams",
            Error::TooLarge { .. } => "TooLarge",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }

    pub(crate) fn bad_params(msg: impl Into<String>) -> Self {
        Error::BadParams(msg.into())
    }

    pub(crate) fn too_large(what: &'static str, size: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::TooLarge {
            what,
            size: size.into(),
            limit: limit.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
