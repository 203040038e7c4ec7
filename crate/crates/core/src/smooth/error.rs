use thiserror::Error;

use crate::polytope::GeometryError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BodyError {
    #[error("parameter outside the model's domain: {0}")]
    ParamOutOfDomain(String),
    #[error("no unique smooth boundary point: {0}")]
    NonSmoothPoint(String),
    #[error("quadrature budget exhausted (best estimate {estimate})")]
    QuadratureNoConvergence { estimate: f64 },
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("operation not available in dimension {0}")]
    UnsupportedDimension(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = BodyError> = std::result::Result<T, E>;
