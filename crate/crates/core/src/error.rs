use thiserror::Error;

use crate::lattice::Matrix2;
use crate::motif::Violation;

#[derive(Debug, Error)]
pub enum DptError {
    #[error("invalid diagram: {}", render_violations(.0))]
    InvalidDiagram(Vec<Violation>),
    #[error("empty motif")]
    EmptyMotif,
    #[error("no elements")]
    NoElements,
    #[error("decomposition-undetermined: compound {0} has a null cluster too large to decompose")]
    DecompositionUndetermined(usize),
    #[error("basis change {0} is not unimodular")]
    NotUnimodular(Matrix2),
    #[error("basis change {0} reverses orientation; pass allow_reflection to permit it")]
    OrientationReversing(Matrix2),
    #[error("cover matrix {0} must have positive determinant")]
    InvalidCover(Matrix2),
    #[error("inapplicable move: {0}")]
    Inapplicable(String),
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogEntry(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn render_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = DptError> = std::result::Result<T, E>;
