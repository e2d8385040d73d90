//! Crate-wide error type.

use std::fmt;

use crate::tableau::Violation;

/// Errors produced by tableau operations, curve evaluation, and experiment
/// configuration.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An inserted or sampled value collided with an entry already present.
    DuplicateEntry { value: f64 },
    /// A tableau failed structural validation; all violations are listed.
    InvalidTableau { violations: Vec<Violation> },
    /// A numeric argument was NaN or infinite.
    NonFinite { context: &'static str },
    /// A numeric argument fell outside its documented domain.
    Domain { context: &'static str, value: f64 },
    /// A precomputed curve was evaluated against a different `alpha`.
    AlphaMismatch { curve_alpha: f64, requested: f64 },
    /// An experiment configuration field was empty or inconsistent.
    BadConfig { what: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DuplicateEntry { value } => {
                write!(
                    f,
                    "duplicate entry {value}: tableau entries must be pairwise distinct"
                )
            }
            Error::InvalidTableau { violations } => {
                write!(f, "invalid tableau ({} violation(s)):", violations.len())?;
                for v in violations {
                    write!(f, " [{v}]")?;
                }
                Ok(())
            }
            Error::NonFinite { context } => write!(f, "{context}: value must be finite"),
            Error::Domain { context, value } => {
                write!(f, "{context}: {value} is outside the allowed domain")
            }
            Error::AlphaMismatch {
                curve_alpha,
                requested,
            } => write!(
                f,
                "curve was sampled for alpha = {curve_alpha} but evaluated for alpha = {requested}"
            ),
            Error::BadConfig { what } => write!(f, "bad experiment config: {what}"),
        }
    }
}

impl std::error::Error for Error {}
