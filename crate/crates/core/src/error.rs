use thiserror::Error;

use crate::symmetrize::CycleViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("not sign symmetric: a[{i}][{j}] = {aij} but a[{j}][{i}] = {aji}")]
    NotSignSymmetric { i: usize, j: usize, aij: i64, aji: i64 },

    #[error("cycle condition fails: {0}")]
    CycleCondition(CycleViolation),

    #[error("search order {requested} exceeds the configured cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
