//! Smooth and piecewise-smooth convex bodies with boundary curvature and
//! cone-measure quadrature.

mod body;
mod curve;
mod error;
pub mod json;
pub mod quadrature;

pub use body::{
    boundary_point, cone_measure_integral, kappa_zero, polar_ellipsoid, unit_ball_volume, BodyModel,
    BoundaryParam, BoundaryPoint, Ellipsoid,
};
pub use curve::{Piece, PiecewiseCurve};
pub use error::{BodyError, Result};
pub use json::{body_from_json, body_to_json, BodyJson};
pub use quadrature::{Integral, QuadratureOptions};
