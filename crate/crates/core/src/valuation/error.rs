use thiserror::Error;

use crate::polytope::GeometryError;
use crate::smooth::BodyError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValuationError {
    #[error("invalid concave function: {0}")]
    InvalidConcFn(String),
    #[error("invalid valuation spec: {0}")]
    InvalidSpec(String),
    #[error("the union of the two bodies is not convex")]
    UnionNotConvex,
    #[error("map is not in SL(n) (determinant {0})")]
    NotUnimodular(String),
    #[error("valuation vanishes at the base body; homogeneity is undefined")]
    ZeroBaseline,
    #[error("fitting polytopes give a singular linear system")]
    SingularFittingSystem,
    #[error("sequence does not converge: support gap fails to decrease at index {index}")]
    NotConverging { index: usize },
    #[error("oracle failed: {0}")]
    Oracle(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Body(#[from] BodyError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub type Result<T, E = ValuationError> = std::result::Result<T, E>;
