//! Cauchy's equation on a grid and the interval decomposition identity.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::error::{FeqError, Result};
use super::grid::GridFunction1D;
use super::ser_scalar;
use crate::scalar::{frac, int, Scalar};

pub const MIN_TRIPLES: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CauchyReport {
    /// `max |f(x+y) − f(x) − f(y)|` over sampled triples.
    #[serde(serialize_with = "ser_scalar")]
    pub max_residual: Scalar,
    pub worst: Option<(String, String)>,
    pub triples: usize,
    /// Least-squares slope of `f(x) ≈ s·x`.
    #[serde(serialize_with = "ser_scalar")]
    pub slope: Scalar,
}

/// `f(x+y) − f(x) − f(y)`, if all three points are sampled.
pub fn additivity_residual(f: &GridFunction1D, x: &Scalar, y: &Scalar) -> Option<Scalar> {
    Some(f.get(&(x + y))? - f.get(x)? - f.get(y)?)
}

/// Finite evidence for additivity. A zero residual on a finite grid does
/// not exclude pathological solutions; the slope is what a measurable
/// solution would have to be.
pub fn cauchy_residual(f: &GridFunction1D) -> Result<CauchyReport> {
    let xs = f.xs();
    let mut triples = 0;
    let mut max_residual = Scalar::zero();
    let mut worst = None;
    for (i, x) in xs.iter().enumerate() {
        for y in &xs[i..] {
            if let Some(r) = additivity_residual(f, x, y) {
                triples += 1;
                let r = r.abs();
                if r > max_residual {
                    max_residual = r;
                    worst = Some((x.to_string(), y.to_string()));
                }
            }
        }
    }
    if triples < MIN_TRIPLES {
        return Err(FeqError::InsufficientTriples {
            found: triples,
            needed: MIN_TRIPLES,
        });
    }
    let sxx = xs.iter().fold(Scalar::zero(), |acc, x| acc + x * x);
    let sxy = f.iter().fold(Scalar::zero(), |acc, (x, v)| acc + x * v);
    let slope = if sxx.is_zero() { Scalar::zero() } else { sxy / sxx };
    Ok(CauchyReport {
        max_residual,
        worst,
        triples,
        slope,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OneDimReport {
    #[serde(serialize_with = "ser_scalar")]
    pub max_residual: Scalar,
    /// `(a, b)` attaining the maximum.
    pub worst: Option<(String, String)>,
    pub cases: usize,
}

/// Residual of
/// `μ[−a,b] = ½μ[−a,a] + ½μ[−b,b] + ½(μ[−1,b] − μ[−b,1]) − ½(μ[−1,a] − μ[−a,1])`
/// over `(a, b) ∈ grid²`, where `mu(a, b) = μ[−a, b]`.
pub fn one_dim_decompose_check<M>(mu: M, grid: &[Scalar]) -> Result<OneDimReport>
where
    M: Fn(&Scalar, &Scalar) -> Result<Scalar>,
{
    let half = frac(1, 2);
    let one = int(1);
    let mut max_residual = Scalar::zero();
    let mut worst = None;
    let mut cases = 0;
    for a in grid {
        for b in grid {
            if !a.is_positive() || !b.is_positive() {
                return Err(FeqError::InvalidGrid("interval ends must be positive".into()));
            }
            let rhs = &half * (mu(a, a)? + mu(b, b)?) + &half * (mu(&one, b)? - mu(b, &one)?)
                - &half * (mu(&one, a)? - mu(a, &one)?);
            let r = (mu(a, b)? - rhs).abs();
            cases += 1;
            if r > max_residual {
                max_residual = r;
                worst = Some((a.to_string(), b.to_string()));
            }
        }
    }
    Ok(OneDimReport {
        max_residual,
        worst,
        cases,
    })
}
