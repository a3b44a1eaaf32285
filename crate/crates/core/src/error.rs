use thiserror::Error;

use crate::poly::LaurentBiPoly;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("x-exponent must be non-negative, got {0}")]
    NegativeExponent(i64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("term {term} is not divisible by {divisor}")]
    NonDivisible { term: String, divisor: String },

    #[error("division leaves a nonzero remainder: {}", remainder.to_text())]
    InexactDivision {
        quotient: LaurentBiPoly,
        remainder: LaurentBiPoly,
    },

    #[error("divisor is not monic in its leading x-power: {0}")]
    NonMonicDivisor(String),

    #[error("evaluation at y = 0 of a polynomial with negative y-exponents")]
    EvalAtPole,

    #[error("substitution produces non-integer coefficient {0}")]
    NonIntegerResult(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("prefactor 1/(n-r-1) is singular at n = {n}, r = {r}")]
    SingularPrefactor { n: i64, r: u32 },

    #[error("index {n} is outside the domain {domain}")]
    OutOfDomain { n: i64, domain: &'static str },

    #[error("method {method} does not support {what}")]
    UnsupportedMethod { method: String, what: String },

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("empty range {0}")]
    EmptyRange(String),
}

impl Error {
    pub(crate) fn parse(message: impl Into<String>) -> Self {
        Error::Parse {
            line: 0,
            column: 0,
            message: message.into(),
        }
    }
}
