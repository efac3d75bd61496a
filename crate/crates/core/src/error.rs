use alloc::string::String;
use core::fmt;

/// Errors raised by the arithmetic, numerics and search layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A precondition on an argument was violated.
    InvalidArgument(String),
    /// `base` has no inverse modulo `modulus`.
    NotInvertible { base: i64, modulus: u64 },
    /// An interval operation left its domain (division by an interval
    /// containing zero, logarithm of a nonpositive interval, ...).
    Domain { op: &'static str, detail: String },
    /// A hard enumeration or search cap was exceeded.
    ResourceLimit(String),
    /// Interval enclosures straddle the bound being decided.
    Inconclusive(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::NotInvertible { base, modulus } => {
                write!(f, "{base} is not invertible modulo {modulus}")
            }
            Error::Domain { op, detail } => write!(f, "domain error in {op}: {detail}"),
            Error::ResourceLimit(msg) => write!(f, "resource limit exceeded: {msg}"),
            Error::Inconclusive(msg) => write!(f, "inconclusive: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
