use thiserror::Error;

use crate::report::Report;

/// Failures raised by constructions and validators.
///
/// A validator that merely finds an axiom violated returns a failing
/// [`Report`]; these variants are for inputs that cannot be checked at all,
/// for violated preconditions, and for exhausted enumeration budgets.
#[derive(Debug, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("not an ideal: {0}")]
    NotIdeal(String),
    #[error("not multiplicative: {0}")]
    NotMultiplicative(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("resource cap exceeded: {what} needs {required} but the cap is {cap}")]
    Resource { what: String, required: u128, cap: u128 },
    #[error("validation failed: {}", .0.first_failure().unwrap_or_else(|| .0.check.clone()))]
    Invalid(Report),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
