use std::fmt;

use thiserror::Error;

use crate::algebra::Family;

/// Hard cap on polynomial degree inside module computations.
pub const DEGREE_CAP: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("q0 must be nonzero (λ0 = q0² has to be invertible)")]
    ZeroQ,
    #[error("family mismatch: expected {expected}, found {found}")]
    FamilyMismatch { expected: Family, found: Family },
    #[error("degree {degree} exceeds the cap of {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("vector is not in the submodule: {0}")]
    NotInSubmodule(String),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("a half-integer power of λ was requested but no square root of λ is available")]
    HalfPowerUnavailable,
    #[error("parameters must be specialized: {0}")]
    NotSpecialized(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A syntax or typing error at a position in the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
    pub message: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: ", self.line, self.column)?;
        if let Some(msg) = &self.message {
            write!(f, "{msg}")?;
        } else {
            write!(f, "found {}", self.found)?;
        }
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}
