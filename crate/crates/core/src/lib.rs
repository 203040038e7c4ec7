//! Computational convex geometry for SL(n)-invariant valuations on convex
//! bodies containing the origin: exact polytope kernels, smooth body models
//! with curvature-based boundary integrals, the valuation functionals
//! themselves, and executable checks of the functional equations behind
//! their classification.

pub mod feq;
pub mod polytope;
pub mod scalar;
pub mod smooth;
pub mod valuation;

pub use polytope::{convex_hull, LinearMap, Polytope};
pub use scalar::Scalar;
