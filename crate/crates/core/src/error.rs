use thiserror::Error;

use crate::farey::SlopePath;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid slope {p}/{q}")]
    InvalidSlope { p: i128, q: i128 },

    #[error("cannot parse slope {0:?}: expected p/q, with 1/0 for infinity")]
    SlopeSyntax(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("slope {0} is a root of the mediant tree and has no parents")]
    NoParents(String),

    #[error("slope {slope} is outside the domain of {operation}")]
    OutOfDomain { slope: String, operation: &'static str },

    #[error("unique even parent violated at {0}")]
    LemmaViolation(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("search cap must be at least 1")]
    InvalidCap,

    #[error("no path within cap {cap}; best known upper bound {upper_bound}")]
    CapExhausted {
        cap: u64,
        upper_bound: usize,
        path: SlopePath,
    },

    #[error("L({p},{q}) is not a lens space: gcd(p, q) != 1")]
    NotALensSpace { p: i64, q: i64 },

    #[error("L({p},{q}) is excluded: p must be at least 2")]
    ExcludedManifold { p: i64, q: i64 },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("matrix is not {0}")]
    BadMatrix(&'static str),

    #[error("{0}")]
    Mismatch(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed document: {0}")]
    Malformed(String),
}
