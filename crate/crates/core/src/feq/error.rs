use thiserror::Error;

use crate::polytope::GeometryError;
use crate::valuation::ValuationError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FeqError {
    #[error("grid yields only {found} additivity triples, need at least {needed}")]
    InsufficientTriples { found: usize, needed: usize },
    #[error("oracle is not even under coordinate reflections: {0}")]
    NotEven(String),
    #[error("fit is degenerate: {0}")]
    FitDegenerate(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("csv: {0}")]
    Csv(String),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub type Result<T, E = FeqError> = std::result::Result<T, E>;
