use thiserror::Error;

use crate::rational::{format_rational, Rational};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate simplex: determinant of edge matrix is {}", format_rational(.determinant))]
    DegenerateSimplex { determinant: Rational },

    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("degree {given} is below the polynomial degree; at least {required} is required")]
    DegreeTooLow { required: u32, given: u32 },

    #[error("multi-index has |alpha| = {found}, expected {expected}")]
    IndexDegree { expected: u32, found: u32 },

    #[error("multi-index has {found} entries, expected {expected}")]
    IndexLength { expected: usize, found: usize },

    #[error("operation requires a {expected}-dimensional simplex, got dimension {found}")]
    UnsupportedDimension { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("malformed certificate tree: {0}")]
    MalformedTree(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
