use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown suite {0:?} (expected one of: {1})")]
    UnknownSuite(String, String),
    #[error("invalid --spec: {0}")]
    Spec(String),
    #[error("invalid --phi {0}")]
    Phi(String),
    #[error("conflicting options: {0}")]
    Conflict(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("{path}: {message}")]
    Body { path: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Valuation(#[from] cvgeom::valuation::ValuationError),
    #[error(transparent)]
    Feq(#[from] cvgeom::feq::FeqError),
    #[error(transparent)]
    Geometry(#[from] cvgeom::polytope::GeometryError),
    #[error(transparent)]
    Smooth(#[from] cvgeom::smooth::BodyError),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
