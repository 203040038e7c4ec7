//! Property checks: valuation identity, SL(n)-invariance, reflection
//! parity, homogeneity and upper-semicontinuity probes.

use serde::Serialize;

use super::error::{Result, ValuationError};
use super::spec::{evaluate, Oracle, ValuationSpec, Value};
use crate::polytope::{support_gap, LinearMap, Polytope};
use crate::scalar::{self, frac};
use crate::smooth::BodyModel;

/// `μ₊ = ½[μ + μ∘φ_k]` and `μ₋ = ½[μ − μ∘φ_k]`, with `φ_k` the reflection
/// `e_k ↦ −e_k` (0-based `k`).
pub fn even_odd_split(spec: &ValuationSpec, k: usize) -> (Oracle, Oracle) {
    let half = frac(1, 2);
    let make = |sign: i64| {
        let spec = spec.clone();
        let half = half.clone();
        move |body: &BodyModel| -> Result<Value> {
            let n = body.dim();
            if k >= n {
                return Err(ValuationError::InvalidSpec(format!(
                    "axis {} out of range for dimension {}",
                    k, n
                )));
            }
            let reflected = body.apply_linear(&LinearMap::reflection(n, k))?;
            let a = evaluate(&spec, body)?;
            let b = evaluate(&spec, &reflected)?;
            let b = b.scale(&scalar::int(sign));
            Ok(a.add(&b).scale(&half))
        }
    };
    (
        Oracle::new(format!("even part along axis {}", k), make(1)),
        Oracle::new(format!("odd part along axis {}", k), make(-1)),
    )
}

/// `|μ(K∪L) + μ(K∩L) − μ(K) − μ(L)|` for polytopes; the union must be
/// convex (checked exactly).
pub fn check_valuation_identity(spec: &ValuationSpec, k: &Polytope, l: &Polytope) -> Result<Value> {
    let union = k.convex_union(l)?.ok_or(ValuationError::UnionNotConvex)?;
    let inter = k.intersection(l)?;
    let [k, l, u, i] = [k, l, &union, &inter].map(|p| BodyModel::Polytope(p.clone()));
    check_valuation_identity_with(spec, &k, &l, &u, &i)
}

/// The same residual with caller-supplied union and intersection, for
/// bodies whose convex union is known by construction.
pub fn check_valuation_identity_with(
    spec: &ValuationSpec,
    k: &BodyModel,
    l: &BodyModel,
    union: &BodyModel,
    intersection: &BodyModel,
) -> Result<Value> {
    let lhs = evaluate(spec, union)?.add(&evaluate(spec, intersection)?);
    let rhs = evaluate(spec, k)?.add(&evaluate(spec, l)?);
    Ok(lhs.sub(&rhs).abs())
}

/// `|μ(A·K) − μ(K)|` for `A ∈ SL(n)`.
pub fn check_sl_invariance(spec: &ValuationSpec, body: &BodyModel, map: &LinearMap) -> Result<Value> {
    if !map.is_unimodular() {
        return Err(ValuationError::NotUnimodular(scalar::format_scalar(map.det())));
    }
    let image = body.apply_linear(map)?;
    Ok(evaluate(spec, &image)?.sub(&evaluate(spec, body)?).abs())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomogeneityFit {
    /// Least-squares slope of `log|μ(tK)|` against `log t`.
    pub degree: f64,
    /// Largest deviation of a sample from the fitted line (log scale).
    pub residual: f64,
    pub samples: Vec<(f64, f64)>,
}

/// Fitted homogeneity degree of `μ` at `K` over the dilation factors `t_grid`.
pub fn homogeneity_degree(spec: &ValuationSpec, body: &BodyModel, t_grid: &[f64]) -> Result<HomogeneityFit> {
    if t_grid.len() < 3 || t_grid.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(ValuationError::InvalidSpec(
            "need at least three positive dilation factors".into(),
        ));
    }
    if evaluate(spec, body)?.to_f64() == 0.0 {
        return Err(ValuationError::ZeroBaseline);
    }
    let mut samples = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let v = evaluate(spec, &body.scale(t)?)?.to_f64();
        if v == 0.0 {
            return Err(ValuationError::ZeroBaseline);
        }
        samples.push((t, v));
    }
    let pts: Vec<(f64, f64)> = samples.iter().map(|(t, v)| (t.ln(), v.abs().ln())).collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(ValuationError::InvalidSpec("dilation factors must not all coincide".into()));
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let degree = sxy / sxx;
    let residual = pts
        .iter()
        .map(|p| (p.1 - my - degree * (p.0 - mx)).abs())
        .fold(0.0, f64::max);
    Ok(HomogeneityFit {
        degree,
        residual,
        samples,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UscReport {
    pub values: Vec<f64>,
    pub support_gaps: Vec<f64>,
    pub limit_value: f64,
    /// Largest value over the second half of the sequence.
    pub tail_max: f64,
    /// Value at the last (closest) body, the finite stand-in for the limsup.
    pub limsup_estimate: f64,
    /// `limsup_estimate <= limit_value + tolerance`.
    pub bound_holds: bool,
    /// `limit_value − limsup_estimate`.
    pub gap: f64,
}

/// Samples `μ` along a sequence converging to `limit` and compares the
/// tail against `μ(limit)`. A probe, not a proof: the support gap must
/// decrease strictly along the sequence or the probe refuses to run.
pub fn usc_probe(
    spec: &ValuationSpec,
    sequence: &[BodyModel],
    limit: &BodyModel,
    directions: &[Vec<f64>],
    tolerance: f64,
) -> Result<UscReport> {
    if sequence.is_empty() {
        return Err(ValuationError::InvalidSpec("empty sequence".into()));
    }
    let mut support_gaps = Vec::with_capacity(sequence.len());
    for (i, body) in sequence.iter().enumerate() {
        let g = support_gap(body, limit, directions)?;
        if let Some(&prev) = support_gaps.last() {
            if g >= prev {
                return Err(ValuationError::NotConverging { index: i });
            }
        }
        support_gaps.push(g);
    }
    let values = sequence
        .iter()
        .map(|b| evaluate(spec, b).map(|v| v.to_f64()))
        .collect::<Result<Vec<f64>>>()?;
    let limit_value = evaluate(spec, limit)?.to_f64();
    let tail = &values[values.len() / 2..];
    let tail_max = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let limsup_estimate = *values.last().expect("non-empty");
    Ok(UscReport {
        bound_holds: limsup_estimate <= limit_value + tolerance,
        gap: limit_value - limsup_estimate,
        values,
        support_gaps,
        limit_value,
        tail_max,
        limsup_estimate,
    })
}
