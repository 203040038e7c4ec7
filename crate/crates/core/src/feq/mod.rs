//! Exact functional-equation checks: Cauchy's equation on grids, the
//! interval identity, descriptions on axis quadrilaterals and the
//! annihilation of odd parts.

mod annihilation;
mod cauchy;
mod describe;
mod error;
pub mod grid;

use serde::Serializer;

pub use annihilation::{odd_grid_annihilation, sample_odd_grid, AnnihilationReport, RecurrenceStep};
pub use cauchy::{additivity_residual, cauchy_residual, one_dim_decompose_check, CauchyReport, OneDimReport, MIN_TRIPLES};
pub use describe::{extract_f_on_q2, fit_r2_descriptor, DescriptorFit, Q2Report, R2Options};
pub use error::{FeqError, Result};
pub use grid::{additive_grid, multiplicative_grid, GridFunction1D, GridFunction2D};

use crate::polytope::construct::make_q;
use crate::polytope::Polytope;
use crate::scalar::{self, Scalar};
use crate::valuation::{even_odd_split, require_exact, ValuationSpec};

pub(crate) fn ser_scalar<S: Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&scalar::format_scalar(x))
}

/// `P ↦ μ(P)` as an exact rational; fails on approximate values.
pub fn exact_oracle(spec: &ValuationSpec) -> impl Fn(&Polytope) -> Result<Scalar> + '_ {
    move |p| {
        let v = spec.evaluate_polytope(p)?;
        Ok(require_exact(&v)?.clone())
    }
}

/// `(a, b) ↦ μ[−a, b]` on the line.
pub fn interval_oracle(spec: &ValuationSpec) -> impl Fn(&Scalar, &Scalar) -> Result<Scalar> + '_ {
    let mu = exact_oracle(spec);
    move |a, b| mu(&make_q(1, &[a.clone()], &[b.clone()])?)
}

/// The part of `spec` that is odd under `e_axis ↦ −e_axis`, as an exact oracle.
pub fn odd_part(spec: &ValuationSpec, axis: usize) -> impl Fn(&Polytope) -> Result<Scalar> {
    let (_, odd) = even_odd_split(spec, axis);
    let odd = ValuationSpec::Oracle(odd);
    move |p| exact_oracle(&odd)(p)
}
