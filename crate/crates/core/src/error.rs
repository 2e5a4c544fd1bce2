//! Crate-wide error type.

use thiserror::Error;

use crate::quiver::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    /// Syntax error in a bound-quiver file or a walk expression.
    #[error("line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    /// The concatenation `left,right` is not a walk: endpoints do not meet.
    #[error("not composable: {left} ends at {left_target} but {right} starts at {right_source}")]
    NotComposable {
        left: String,
        left_target: String,
        right: String,
        right_source: String,
    },

    /// The relation ideal admits a relation-free directed cycle, so the path
    /// set is infinite.
    #[error("ideal is not admissible: relation-free cycle through {cycle}")]
    NotAdmissible { cycle: String },

    #[error("not a string algebra: {}", .report.summary())]
    NotStringAlgebra { report: ValidationReport },

    #[error("not a generalized string: {details}")]
    NotGeneralizedString { details: String },

    #[error("walk is not closed, cannot rotate")]
    NotClosed,

    #[error("rotation index {index} out of range 1..={max}")]
    RotationOutOfRange { index: usize, max: usize },

    #[error("operation requires {expected}, got {actual}")]
    Precondition { expected: String, actual: String },

    /// `enumerate_indecomposables` refuses algebras where some arrow lies in
    /// more than one maximal path.
    #[error("arrow {arrow} lies in {count} maximal paths; unique maximal path property fails")]
    NotUniqueMaximalPath { arrow: String, count: usize },

    /// The graph-side periodicity decision and the witness-set membership
    /// decision disagreed. This indicates a bug, never a verdict.
    #[error("classification mismatch: {details}")]
    ClassificationMismatch { details: String },

    #[error("unknown output format {0:?}")]
    UnknownFormat(String),

    #[error("{0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, col: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            message: message.into(),
        }
    }
}
