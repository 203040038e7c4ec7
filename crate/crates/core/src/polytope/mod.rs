//! Exact rational kernel for polytopes with the origin in their interiors.

pub mod construct;
mod error;
mod hull;
pub mod json;
mod kernel;
mod linear_map;
pub mod support;

pub use construct::{
    cross_polytope, cube, inscribed_polygon, interval_product, make_double_pyramid, make_q,
    make_r2,
};
pub use error::{GeometryError, Result};
pub use kernel::{convex_hull, Hyperplane, Polytope, Side};
pub use linear_map::LinearMap;
pub use support::{fibonacci_directions, support_gap, SupportFunction};
