//! Error type shared by the whole crate.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in the numerical layer.
///
/// `Domain` and `Config` are rejected inputs, `Contract` is a violated
/// precondition (missing derivative, unnormalized function, mismatched
/// scheme), `Accuracy` means a series or branch could not reach its stated
/// tolerance, and `Numeric` is a non-finite value observed mid-computation.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    Domain(String),
    Config(String),
    Contract(String),
    Accuracy(String),
    Numeric(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::Contract(msg) => write!(f, "contract error: {msg}"),
            Error::Accuracy(msg) => write!(f, "accuracy error: {msg}"),
            Error::Numeric(msg) => write!(f, "numeric error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
