//! Valuations `c₀V₀ + c₁V_n + c₂V_n∘* + Ω_φ`, oracles, and the property
//! checks and decomposition built on them.

mod checks;
mod conc;
mod decompose;
mod error;
pub mod json;
mod spec;

pub use checks::{
    check_sl_invariance, check_valuation_identity, check_valuation_identity_with, even_odd_split,
    homogeneity_degree, usc_probe, HomogeneityFit, UscReport,
};
pub use conc::ConcFn;
pub use decompose::{decompose, DecomposeOptions, DecompositionReport, PhiSample};
pub use error::{Result, ValuationError};
pub(crate) use spec::require_exact;
pub use json::{composite_to_json, spec_from_json};
pub use spec::{
    classical_asa, ellipsoid_closed_form, evaluate, evaluate_with, omega_phi, omega_phi_quadrature,
    Composite, Oracle, OracleFn, ValuationSpec, Value,
};
