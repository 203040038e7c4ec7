//! Concave functions φ: ℝ₊ → [0, ∞) with φ(t) → 0 as t → 0 and
//! φ(t)/t → 0 as t → ∞.

use serde::{Deserialize, Serialize};

use super::error::{Result, ValuationError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ConcFn {
    /// `t^{p/(n+p)}`; without `n`, the dimension of the body is used.
    Power {
        p: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
    },
    /// `min(slope·t, cap)`.
    #[serde(rename = "affine_cap")]
    AffineCap { slope: f64, cap: f64 },
    /// Piecewise linear through `(0, 0)` and the given points, constant
    /// after the last one.
    Table { points: Vec<[f64; 2]> },
}

const PROBE_LO: [f64; 2] = [1e-300, 1e-150];
const PROBE_HI: [f64; 2] = [1e150, 1e300];

impl ConcFn {
    pub fn power(p: f64) -> Result<Self> {
        let f = ConcFn::Power { p, n: None };
        f.validate()?;
        Ok(f)
    }

    pub fn power_in(p: f64, n: usize) -> Result<Self> {
        let f = ConcFn::Power { p, n: Some(n) };
        f.validate()?;
        Ok(f)
    }

    pub fn affine_cap(slope: f64, cap: f64) -> Result<Self> {
        let f = ConcFn::AffineCap { slope, cap };
        f.validate()?;
        Ok(f)
    }

    pub fn table(points: Vec<[f64; 2]>) -> Result<Self> {
        let f = ConcFn::Table { points };
        f.validate()?;
        Ok(f)
    }

    /// φ(t) for a body in dimension `dim`; φ(0) = 0.
    pub fn eval(&self, t: f64, dim: usize) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match self {
            ConcFn::Power { p, n } => {
                let n = n.unwrap_or(dim) as f64;
                t.powf(p / (n + p))
            }
            ConcFn::AffineCap { slope, cap } => (slope * t).min(*cap),
            ConcFn::Table { points } => {
                let mut prev = [0.0, 0.0];
                for q in points {
                    if t <= q[0] {
                        return prev[1] + (q[1] - prev[1]) * (t - prev[0]) / (q[0] - prev[0]);
                    }
                    prev = *q;
                }
                prev[1]
            }
        }
    }

    /// Structural checks, then concavity by the midpoint test on a log
    /// grid and the two limits probed at extreme arguments.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(ValuationError::InvalidConcFn(m.into()));
        match self {
            ConcFn::Power { p, n } => {
                if !(p.is_finite() && *p > 0.0) {
                    return bad("power needs a finite p > 0");
                }
                if *n == Some(0) {
                    return bad("dimension must be at least 1");
                }
            }
            ConcFn::AffineCap { slope, cap } => {
                if !(slope.is_finite() && cap.is_finite() && *slope > 0.0 && *cap > 0.0) {
                    return bad("slope and cap must be finite and positive");
                }
            }
            ConcFn::Table { points } => {
                if points.is_empty() {
                    return bad("table is empty");
                }
                if points.iter().flatten().any(|x| !x.is_finite()) {
                    return bad("table values must be finite");
                }
                if points[0][0] <= 0.0 {
                    return bad("table abscissae must be positive");
                }
                if points.windows(2).any(|w| w[1][0] <= w[0][0]) {
                    return bad("table abscissae must increase strictly");
                }
                if points.iter().any(|q| q[1] < 0.0) {
                    return bad("table values must be non-negative");
                }
            }
        }
        for dim in [1usize, 2, 3, 4] {
            self.check_shape(dim)?;
        }
        Ok(())
    }

    fn check_shape(&self, dim: usize) -> Result<()> {
        let grid: Vec<f64> = (-160..=160).map(|k| 2f64.powf(k as f64 / 4.0)).collect();
        let mut extra: Vec<f64> = match self {
            ConcFn::Table { points } => points.iter().map(|q| q[0]).collect(),
            _ => Vec::new(),
        };
        extra.extend(&grid);
        extra.sort_by(f64::total_cmp);
        extra.dedup();
        for w in extra.windows(3) {
            // midpoint test on consecutive pairs, plus a wider secant
            for (a, b) in [(w[0], w[1]), (w[0], w[2])] {
                let (fa, fb, fm) = (self.eval(a, dim), self.eval(b, dim), self.eval(0.5 * (a + b), dim));
                let scale = fa.abs().max(fb.abs()).max(1e-300);
                if fm < 0.5 * (fa + fb) - 1e-12 * scale {
                    return Err(ValuationError::InvalidConcFn(format!(
                        "not concave between {} and {}",
                        a, b
                    )));
                }
            }
        }
        let (lo0, lo1) = (self.eval(PROBE_LO[0], dim), self.eval(PROBE_LO[1], dim));
        if lo0 > 1e-12 && lo0 > 0.9 * lo1 {
            return Err(ValuationError::InvalidConcFn("φ(t) does not tend to 0 as t → 0".into()));
        }
        let (hi0, hi1) = (
            self.eval(PROBE_HI[0], dim) / PROBE_HI[0],
            self.eval(PROBE_HI[1], dim) / PROBE_HI[1],
        );
        if hi1 > 1e-12 && hi1 > 0.9 * hi0 {
            return Err(ValuationError::InvalidConcFn("φ(t)/t does not tend to 0 as t → ∞".into()));
        }
        if !(lo0.is_finite() && self.eval(PROBE_HI[1], dim).is_finite()) {
            return Err(ValuationError::InvalidConcFn("φ takes infinite values".into()));
        }
        Ok(())
    }
}
