//! Recovering `(c₀, c₁, c₂, φ)` from a valuation given as a black box.
//!
//! Stage 1 solves the exact 3×3 system `μ(P_i) = c₀ + c₁V(P_i) + c₂V(P_i*)`
//! on three polytopes. Stage 2 reads φ off ball values: with
//! `Ω_φ(tBⁿ) = nκ_n tⁿ φ(t^{−2n})`, a sample at `s` uses `t = s^{−1/(2n)}`.

use serde::{Serialize, Serializer};

use super::checks::homogeneity_degree;
use super::error::{Result, ValuationError};
use super::spec::{evaluate, ValuationSpec, Value};
use crate::polytope::construct::{cross_polytope, cube, make_q};
use crate::polytope::Polytope;
use crate::scalar::{self, int, Scalar};
use crate::smooth::{unit_ball_volume, BodyModel};

fn ser_scalar<S: Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&scalar::format_scalar(x))
}

fn ser_scalars<S: Serializer>(xs: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(scalar::format_scalar))
}

#[derive(Debug, Clone)]
pub struct DecomposeOptions {
    pub dim: usize,
    /// Fitting polytopes; defaults to (cube, 2·cube, cross-polytope).
    pub triple: Option<[Polytope; 3]>,
    /// Held-out polytopes on which the fitted coefficients are checked.
    pub check_set: Option<Vec<Polytope>>,
    /// φ sample points `s`.
    pub grid: Vec<f64>,
    /// Also fit the homogeneity degree on the unit ball.
    pub homogeneity: bool,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self {
            dim: 2,
            triple: None,
            check_set: None,
            grid: vec![0.25, 1.0, 4.0],
            homogeneity: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiSample {
    pub s: f64,
    pub t: f64,
    pub phi: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub dim: usize,
    #[serde(serialize_with = "ser_scalar")]
    pub c0: Scalar,
    #[serde(serialize_with = "ser_scalar")]
    pub c1: Scalar,
    #[serde(serialize_with = "ser_scalar")]
    pub c2: Scalar,
    /// Residuals on the three fitting polytopes (zero unless the oracle is
    /// inexact there).
    #[serde(serialize_with = "ser_scalars")]
    pub fitting_residuals: Vec<Scalar>,
    /// Residuals of the fitted polytope part on held-out polytopes.
    pub check_residuals: Vec<Value>,
    pub phi_samples: Vec<PhiSample>,
    pub homogeneity: Option<f64>,
    pub caveat: Option<String>,
}

fn default_triple(n: usize) -> Result<[Polytope; 3]> {
    let c = cube(n);
    let c2 = c.dilate(&int(2))?;
    Ok([c, c2, cross_polytope(n)])
}

fn default_check_set(n: usize) -> Result<Vec<Polytope>> {
    let ones = vec![int(1); n];
    let twos = vec![int(2); n];
    Ok(vec![cross_polytope(n).dilate(&int(3))?, make_q(n, &ones, &twos)?])
}

fn exact_or_rounded(v: &Value, rounded: &mut bool) -> Scalar {
    match v {
        Value::Exact(x) => x.clone(),
        Value::Approx { value, .. } => {
            *rounded = true;
            scalar::from_f64(*value).unwrap_or_else(|| int(0))
        }
    }
}

pub fn decompose(oracle: &ValuationSpec, opts: &DecomposeOptions) -> Result<DecompositionReport> {
    let n = opts.dim;
    if n == 0 {
        return Err(ValuationError::InvalidSpec("dimension must be at least 1".into()));
    }
    let triple = match &opts.triple {
        Some(t) => t.clone(),
        None => default_triple(n)?,
    };
    if triple.iter().any(|p| p.dim() != n) {
        return Err(ValuationError::InvalidSpec("fitting polytopes have the wrong dimension".into()));
    }
    let mut rounded = false;
    let rows: Vec<Vec<Scalar>> = triple
        .iter()
        .map(|p| vec![int(1), p.volume(), p.polar_volume()])
        .collect();
    let rhs: Vec<Scalar> = triple
        .iter()
        .map(|p| Ok(exact_or_rounded(&oracle.evaluate_polytope(p)?, &mut rounded)))
        .collect::<Result<_>>()?;
    let c = scalar::solve(&rows, &rhs).ok_or(ValuationError::SingularFittingSystem)?;
    let predict = |p: &Polytope| &c[0] + &c[1] * p.volume() + &c[2] * p.polar_volume();
    let fitting_residuals = triple
        .iter()
        .zip(&rhs)
        .map(|(p, y)| predict(p) - y)
        .collect();
    let check = match &opts.check_set {
        Some(s) => s.clone(),
        None => default_check_set(n)?,
    };
    let check_residuals = check
        .iter()
        .map(|p| Ok(oracle.evaluate_polytope(p)?.sub(&Value::Exact(predict(p))).abs()))
        .collect::<Result<Vec<_>>>()?;

    let kn = unit_ball_volume(n);
    let nf = n as f64;
    let (c0, c1, c2) = (scalar::to_f64(&c[0]), scalar::to_f64(&c[1]), scalar::to_f64(&c[2]));
    let mut phi_samples = Vec::with_capacity(opts.grid.len());
    for &s in &opts.grid {
        if !(s > 0.0 && s.is_finite()) {
            return Err(ValuationError::InvalidSpec("φ sample points must be positive".into()));
        }
        let t = s.powf(-1.0 / (2.0 * nf));
        let v = evaluate(oracle, &BodyModel::ball(n, t)?)?;
        let tn = t.powi(n as i32);
        let phi = (v.to_f64() - c0 - c1 * kn * tn - c2 * kn / tn) / (nf * kn * tn);
        phi_samples.push(PhiSample {
            s,
            t,
            phi,
            converged: v.converged(),
        });
    }

    let homogeneity = if opts.homogeneity {
        let ball = BodyModel::ball(n, 1.0)?;
        let ts: Vec<f64> = phi_samples.iter().map(|p| p.t).collect();
        match homogeneity_degree(oracle, &ball, &ts) {
            Ok(fit) => Some(fit.degree),
            Err(ValuationError::ZeroBaseline) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };

    let mut caveats = Vec::new();
    if matches!(oracle, ValuationSpec::Oracle(_)) {
        caveats.push(
            "the coefficients identify the valuation only if it is upper semicontinuous and SL(n)-invariant; the oracle is not certified",
        );
    }
    if rounded {
        caveats.push("the oracle returned floating-point values on the fitting polytopes; they were rationalized");
    }
    Ok(DecompositionReport {
        dim: n,
        c0: c[0].clone(),
        c1: c[1].clone(),
        c2: c[2].clone(),
        fitting_residuals,
        check_residuals,
        phi_samples,
        homogeneity,
        caveat: (!caveats.is_empty()).then(|| caveats.join("; ")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;
    use crate::valuation::ConcFn;

    #[test]
    fn default_rows() {
        let [a, b, c] = default_triple(2).unwrap();
        assert_eq!((a.volume(), a.polar_volume()), (int(4), int(2)));
        assert_eq!((b.volume(), b.polar_volume()), (int(16), frac(1, 2)));
        assert_eq!((c.volume(), c.polar_volume()), (int(2), int(4)));
    }

    #[test]
    fn recovers_polytope_part() {
        let spec = ValuationSpec::composite(int(2), int(3), int(5), None);
        let r = decompose(&spec, &DecomposeOptions::default()).unwrap();
        assert_eq!((r.c0, r.c1, r.c2), (int(2), int(3), int(5)));
        assert!(r.check_residuals.iter().all(Value::is_zero));
        assert!(r.phi_samples.iter().all(|p| p.phi.abs() < 1e-12));
        assert!(r.caveat.is_none());
    }

    #[test]
    fn recovers_phi() {
        let phi = ConcFn::power(1.0).unwrap();
        let spec = ValuationSpec::composite(int(1), int(1), int(1), Some(phi.clone()));
        let r = decompose(&spec, &DecomposeOptions::default()).unwrap();
        assert_eq!((r.c0, r.c1, r.c2), (int(1), int(1), int(1)));
        for p in &r.phi_samples {
            assert!((p.phi - phi.eval(p.s, 2)).abs() < 1e-6, "{:?}", p);
        }
    }

    #[test]
    fn singular_triple() {
        let c = cube(2);
        let opts = DecomposeOptions {
            triple: Some([c.clone(), c.clone(), c]),
            ..Default::default()
        };
        let r = decompose(&ValuationSpec::volume(), &opts);
        assert_eq!(r.unwrap_err(), ValuationError::SingularFittingSystem);
    }
}
