use thiserror::Error;

use crate::symbolic::arg::Violation;
use crate::symbolic::poly::NotDivisible;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inadmissible tuple ({args}): {violation}")]
    Inadmissible { args: String, violation: Violation },

    #[error(transparent)]
    NotDivisible(#[from] NotDivisible),

    #[error("{0} is undefined (infinite argument in weight 1)")]
    UndefinedInfinity(String),

    #[error("mixed term {0}: some arguments are inverted and some are not")]
    MixedTerm(String),

    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at specialization point: {0}")]
    Pole(String),

    #[error("guard violated: {0}")]
    Guard(String),

    #[error("invalid field specification: {0}")]
    FieldSpec(String),

    #[error("polylogarithm evaluation did not converge: {0}")]
    NoConvergence(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{0}")]
    Domain(String),
}

impl Error {
    pub fn inadmissible<A: std::fmt::Display>(args: &[A], violation: Violation) -> Self {
        let args = args
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(",");
        Error::Inadmissible { args, violation }
    }
}
