use serde::Serialize;
use thiserror::Error;

/// One violated invariant found while validating a scenario.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationFailure {
    pub module: String,
    pub field: String,
    pub message: String,
}

impl ValidationFailure {
    pub fn new(module: &str, field: &str, message: impl Into<String>) -> Self {
        ValidationFailure {
            module: module.to_string(),
            field: field.to_string(),
            message: message.into(),
        }
    }
}

impl std::fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}::{}] {}", self.module, self.field, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("p must be an odd prime, got {0}")]
    NotOddPrime(i128),
    #[error("prime power exponent must be at least 1")]
    BadExponent,
    #[error("mixed residue characteristics {0} and {1}")]
    MixedPrime(i128, i128),
    #[error("zero has no monomial form")]
    Zero,
    #[error("determinant vanishes: {0}")]
    SingularDeterminant(String),
    #[error("group is infinite: {0}")]
    Infinite(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("validation failed:\n{}", format_failures(.0))]
    Validation(Vec<ValidationFailure>),
}

fn format_failures(v: &[ValidationFailure]) -> String {
    v.iter().map(|f| format!("  {f}")).collect::<Vec<_>>().join("\n")
}

pub type Result<T> = std::result::Result<T, Error>;
