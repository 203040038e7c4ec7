use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("input points do not span a full-dimensional hull")]
    DegenerateInput,
    #[error("the origin is not an interior point of the hull")]
    OriginNotInterior,
    #[error("splitting would leave the origin outside the interior of a piece")]
    InvalidSplit,
    #[error("hyperplane does not meet the interior of the polytope")]
    NoIntersection,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("parameters violate the class condition: {0}")]
    ClassViolation(String),
    #[error("no directions supplied")]
    EmptyDirections,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
