use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("valuation base must be a non-constant polynomial")]
    ConstantBase,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("format error: {0}")]
    Format(String),
    #[error("format error at line {line}: {msg}")]
    FormatAt { line: usize, msg: String },
    #[error("invalid digraph: {0}")]
    InvalidDigraph(String),
    #[error("{what} exceeds the limit of {limit}")]
    TooLarge { what: &'static str, limit: usize },
    #[error("edge {0} does not leave the root and cannot be contracted")]
    InvalidContraction(usize),
    #[error("polynomial content is {0}, expected 1")]
    Content(String),
    #[error("polynomial is not primitive")]
    NotPrimitive,
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
