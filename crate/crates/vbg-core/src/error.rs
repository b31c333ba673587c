//! Error type shared by the core models.

use alloc::string::String;
use core::fmt;

/// Errors raised by curve handling and model evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum CoreError {
    /// A query fell outside a curve's domain and its policy forbids
    /// extrapolation.
    OutOfRange { f: f64, lo: f64, hi: f64 },
    /// An integration interval was empty or inverted.
    DegenerateInterval { lo: f64, hi: f64 },
    /// An input violated a documented precondition.
    InvalidInput(String),
    /// A curve failed validation (non-monotone grid, non-finite or
    /// negative values under a sign-constrained unit).
    InvalidCurve(String),
    /// A perturbative model was evaluated outside its validity range.
    ValidityBreak(String),
    /// An integral does not converge with the curve's extrapolation tail.
    NonConvergent(String),
    /// A requested (element, perturbation) coupling has no model.
    UnsupportedCoupling(String),
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::OutOfRange { f: q, lo, hi } => {
                write!(f, "query {q} Hz outside curve domain [{lo}, {hi}] Hz")
            }
            CoreError::DegenerateInterval { lo, hi } => {
                write!(f, "degenerate integration interval [{lo}, {hi}]")
            }
            CoreError::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            CoreError::InvalidCurve(msg) => write!(f, "invalid curve: {msg}"),
            CoreError::ValidityBreak(msg) => write!(f, "model validity exceeded: {msg}"),
            CoreError::NonConvergent(msg) => write!(f, "non-convergent integral: {msg}"),
            CoreError::UnsupportedCoupling(msg) => write!(f, "unsupported coupling: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CoreError {}

pub type Result<T> = core::result::Result<T, CoreError>;
