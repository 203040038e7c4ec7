//! Adaptive Gauss–Legendre quadrature on intervals and rectangles.
//!
//! Panels are refined by halving (bisection in 1-D, quartering in 2-D) until
//! the panel estimate and the sum of its children agree to within the
//! panel's share of the tolerance. Accepted panels are summed in a fixed
//! order (by position), so results are reproducible bit for bit.

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    /// Relative agreement required between successive refinements.
    pub rel_tol: f64,
    /// Absolute floor below which no further refinement is attempted.
    pub abs_floor: f64,
    /// Maximum number of accepted panels before giving up.
    pub max_panels: usize,
    /// Gauss–Legendre points per panel (per axis in 2-D).
    pub order: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_floor: 1e-12,
            max_panels: 1 << 14,
            order: 10,
        }
    }
}

/// Outcome of a quadrature: best estimate, an error estimate, and whether
/// the tolerance was reached within the panel budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
    pub converged: bool,
}

impl Integral {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            error: 0.0,
            panels: 0,
            converged: true,
        }
    }

    /// Sum of independent integrals; convergence requires all parts.
    pub fn combine(parts: &[Integral]) -> Self {
        parts.iter().fold(Integral::exact(0.0), |acc, p| Integral {
            value: acc.value + p.value,
            error: acc.error + p.error,
            panels: acc.panels + p.panels,
            converged: acc.converged && p.converged,
        })
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            error: self.error * factor.abs(),
            ..self
        }
    }
}

/// Nodes and weights of the `k`-point Gauss–Legendre rule on `[-1, 1]`,
/// by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(k: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; k];
    let mut weights = vec![0.0; k];
    for i in 0..k.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=k {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if k == 0 { 1.0 } else { p1 };
            // derivative from the last two polynomials
            dp = k as f64 * (x * p - p0) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[k - 1 - i] = x;
        weights[i] = w;
        weights[k - 1 - i] = w;
    }
    (nodes, weights)
}

struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    fn new(order: usize) -> Self {
        let (nodes, weights) = gauss_legendre(order.max(1));
        Self { nodes, weights }
    }

    fn interval<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
    }

    fn rectangle<F: Fn(f64, f64) -> f64>(&self, f: &F, r: [f64; 4]) -> f64 {
        let [a, b, c, d] = r;
        let (hu, mu) = (0.5 * (b - a), 0.5 * (a + b));
        let (hv, mv) = (0.5 * (d - c), 0.5 * (c + d));
        let mut total = 0.0;
        for (x, wx) in self.nodes.iter().zip(&self.weights) {
            let u = mu + hu * x;
            let mut row = 0.0;
            for (y, wy) in self.nodes.iter().zip(&self.weights) {
                row += wy * f(u, mv + hv * y);
            }
            total += wx * row;
        }
        hu * hv * total
    }
}

/// Adaptive integral of `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadratureOptions) -> Integral {
    if a == b {
        return Integral::exact(0.0);
    }
    let rule = Rule::new(opts.order);
    let width = b - a;
    let coarse = rule.interval(&f, a, b);
    let tol = (opts.rel_tol * coarse.abs()).max(opts.abs_floor);
    // (left, right, estimate)
    let mut stack = vec![(a, b, coarse)];
    let mut accepted: Vec<(f64, f64, f64)> = Vec::new();
    let mut converged = true;
    while let Some((lo, hi, whole)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = rule.interval(&f, lo, mid);
        let right = rule.interval(&f, mid, hi);
        let err = (left + right - whole).abs();
        let share = tol * ((hi - lo) / width).abs();
        if err <= share.max(opts.abs_floor * 1e-3) || err <= opts.abs_floor * ((hi - lo) / width).abs()
        {
            accepted.push((lo, left + right, err));
        } else if accepted.len() + stack.len() + 2 > opts.max_panels {
            converged = false;
            accepted.push((lo, left + right, err));
        } else {
            stack.push((mid, hi, right));
            stack.push((lo, mid, left));
        }
    }
    accepted.sort_by(|x, y| x.0.total_cmp(&y.0));
    Integral {
        value: accepted.iter().map(|p| p.1).sum(),
        error: accepted.iter().map(|p| p.2).sum(),
        panels: accepted.len(),
        converged,
    }
}

/// Adaptive integral of `f(u, v)` over `[a, b] × [c, d]`.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    rect: [f64; 4],
    opts: &QuadratureOptions,
) -> Integral {
    let rule = Rule::new(opts.order);
    let [a, b, c, d] = rect;
    let area = ((b - a) * (d - c)).abs();
    if area == 0.0 {
        return Integral::exact(0.0);
    }
    let coarse = rule.rectangle(&f, rect);
    let tol = (opts.rel_tol * coarse.abs()).max(opts.abs_floor);
    let mut stack = vec![(rect, coarse)];
    let mut accepted: Vec<([f64; 4], f64, f64)> = Vec::new();
    let mut converged = true;
    while let Some((r, whole)) = stack.pop() {
        let [a, b, c, d] = r;
        let (mu, mv) = (0.5 * (a + b), 0.5 * (c + d));
        let kids = [[a, mu, c, mv], [mu, b, c, mv], [a, mu, mv, d], [mu, b, mv, d]];
        let vals: Vec<f64> = kids.iter().map(|k| rule.rectangle(&f, *k)).collect();
        let sum: f64 = vals.iter().sum();
        let err = (sum - whole).abs();
        let frac = ((b - a) * (d - c)).abs() / area;
        if err <= (tol * frac).max(opts.abs_floor * frac) {
            accepted.push((r, sum, err));
        } else if accepted.len() + stack.len() + 4 > opts.max_panels {
            converged = false;
            accepted.push((r, sum, err));
        } else {
            for (k, v) in kids.into_iter().zip(vals).rev() {
                stack.push((k, v));
            }
        }
    }
    accepted.sort_by(|x, y| x.0[2].total_cmp(&y.0[2]).then(x.0[0].total_cmp(&y.0[0])));
    Integral {
        value: accepted.iter().map(|p| p.1).sum(),
        error: accepted.iter().map(|p| p.2).sum(),
        panels: accepted.len(),
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_rule_integrates_polynomials_exactly() {
        for k in 1..=12 {
            let (x, w) = gauss_legendre(k);
            assert_relative_eq!(w.iter().sum::<f64>(), 2.0, epsilon = 1e-13);
            // degree 2k-1 monomial with even part
            let deg = 2 * k - 2;
            let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
            assert_relative_eq!(approx, 2.0 / (deg as f64 + 1.0), epsilon = 1e-12);
        }
    }

    #[test]
    fn adaptive_handles_endpoint_behavior() {
        let opts = QuadratureOptions::default();
        let r = integrate(|x: f64| x.sqrt(), 0.0, 1.0, &opts);
        assert!(r.converged);
        assert_relative_eq!(r.value, 2.0 / 3.0, epsilon = 1e-9);
        let r = integrate(|x: f64| x.sin(), 0.0, PI, &opts);
        assert_relative_eq!(r.value, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let opts = QuadratureOptions {
            max_panels: 4,
            ..Default::default()
        };
        let r = integrate(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, &opts);
        assert!(!r.converged);
    }

    #[test]
    fn sphere_area_in_2d() {
        let opts = QuadratureOptions::default();
        let r = integrate_2d(|t: f64, _p: f64| t.sin(), [0.0, PI, 0.0, 2.0 * PI], &opts);
        assert_relative_eq!(r.value, 4.0 * PI, epsilon = 1e-11);
    }
}
