//! Named polytope families: cubes, cross-polytopes, the axis-interval class,
//! the planar quadrilateral class with the x-axis condition, double
//! pyramids, interval products, inscribed polygons and random samples.

use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::error::{GeometryError, Result};
use super::kernel::{convex_hull, Polytope};
use crate::scalar::{self, frac, int, Point, Scalar};

/// `[-1, 1]^n`.
pub fn cube(n: usize) -> Polytope {
    let mut pts: Vec<Point> = vec![Vec::new()];
    for _ in 0..n {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                [-1, 1].map(|s| {
                    let mut q = p.clone();
                    q.push(int(s));
                    q
                })
            })
            .collect();
    }
    convex_hull(&pts).expect("cube is a valid polytope")
}

/// `[±e_1, ..., ±e_n]`.
pub fn cross_polytope(n: usize) -> Polytope {
    let ones = vec![Scalar::one(); n];
    make_q(n, &ones, &ones).expect("cross-polytope needs n >= 1")
}

/// `[I_1, ..., I_n]` with `I_k = [-a_k e_k, b_k e_k]`.
pub fn make_q(n: usize, a: &[Scalar], b: &[Scalar]) -> Result<Polytope> {
    if n == 0 || a.len() != n || b.len() != n {
        return Err(GeometryError::InvalidParameter(
            "need n >= 1 and n lower/upper extents".into(),
        ));
    }
    if a.iter().chain(b).any(|x| !x.is_positive()) {
        return Err(GeometryError::InvalidParameter("extents must be positive".into()));
    }
    let mut pts = Vec::with_capacity(2 * n);
    for k in 0..n {
        pts.push(scalar::scale(&scalar::unit(n, k), &-a[k].clone()));
        pts.push(scalar::scale(&scalar::unit(n, k), &b[k]));
    }
    convex_hull(&pts)
}

/// Where the segment from `c(x,-1)` to `d(y,1)` crosses the x-axis.
pub fn r2_axis_crossing(c: &Scalar, d: &Scalar, x: &Scalar, y: &Scalar) -> Scalar {
    let lower = c * x;
    let upper = d * y;
    &lower + (&upper - &lower) * c / (c + d)
}

/// `[-a e_1, b e_1, c(x,-1), d(y,1)]` subject to the x-axis condition
/// `P ∩ (R × {0}) = [-a e_1, b e_1]`, which is checked exactly.
pub fn make_r2(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar, x: &Scalar, y: &Scalar) -> Result<Polytope> {
    if [a, b, c, d].iter().any(|v| !v.is_positive()) {
        return Err(GeometryError::InvalidParameter("a, b, c, d must be positive".into()));
    }
    let cross = r2_axis_crossing(c, d, x, y);
    if cross < -a.clone() || &cross > b {
        return Err(GeometryError::ClassViolation(format!(
            "hull meets the x-axis at {} outside [-{}, {}]",
            cross, a, b
        )));
    }
    let pts = vec![
        vec![-a.clone(), Scalar::zero()],
        vec![b.clone(), Scalar::zero()],
        vec![c * x, -c.clone()],
        vec![d * y, d.clone()],
    ];
    convex_hull(&pts)
}

/// `[P, -a e_n, b e_n]` for `P` in R^{n-1} (embedded in `e_n^⊥`).
pub fn make_double_pyramid(base: &Polytope, a: &Scalar, b: &Scalar) -> Result<Polytope> {
    if !a.is_positive() || !b.is_positive() {
        return Err(GeometryError::InvalidParameter("apex heights must be positive".into()));
    }
    let n = base.dim() + 1;
    let mut pts: Vec<Point> = base
        .vertices()
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.push(Scalar::zero());
            w
        })
        .collect();
    pts.push(scalar::scale(&scalar::unit(n, n - 1), &-a.clone()));
    pts.push(scalar::scale(&scalar::unit(n, n - 1), b));
    convex_hull(&pts)
}

/// `P × [lo, hi]` as a polytope in one more dimension (`lo < 0 < hi`).
pub fn interval_product(base: &Polytope, lo: &Scalar, hi: &Scalar) -> Result<Polytope> {
    if !lo.is_negative() || !hi.is_positive() {
        return Err(GeometryError::InvalidParameter("need lo < 0 < hi".into()));
    }
    let pts: Vec<Point> = base
        .vertices()
        .iter()
        .flat_map(|v| {
            [lo, hi].map(|t| {
                let mut w = v.clone();
                w.push(t.clone());
                w
            })
        })
        .collect();
    convex_hull(&pts)
}

/// A rational point exactly on the unit circle close to angle `theta`,
/// via the stereographic parametrization with a dyadic `tan(theta/2)`.
pub fn rational_circle_point(theta: f64, bits: u32) -> Point {
    let half = (theta / 2.0).rem_euclid(std::f64::consts::PI);
    // Keep tan finite: angles near pi map to the antipode of a small angle.
    if (half - std::f64::consts::FRAC_PI_2).abs() < 1e-12 {
        return vec![int(-1), int(0)];
    }
    let t = scalar::dyadic_approx(half.tan(), bits);
    let t2 = &t * &t;
    let denom = Scalar::one() + &t2;
    vec![(Scalar::one() - &t2) / &denom, int(2) * &t / &denom]
}

/// Polygon inscribed in the unit circle with `m` vertices near the angles
/// `2πk/m`; every vertex lies exactly on the circle.
pub fn inscribed_polygon(m: usize) -> Result<Polytope> {
    if m < 3 {
        return Err(GeometryError::InvalidParameter("need at least 3 vertices".into()));
    }
    let pts: Vec<Point> = (0..m)
        .map(|k| rational_circle_point(2.0 * std::f64::consts::PI * k as f64 / m as f64, 24))
        .collect();
    convex_hull(&pts)
}

/// Random full-dimensional polytope with the origin interior: random axis
/// points `±r_k e_k` (guaranteeing the interior condition) plus `extra`
/// random points in `[-1, 1]^n`, all with small denominators.
pub fn random_polytope<R: Rng>(rng: &mut R, n: usize, extra: usize) -> Polytope {
    let mut pts = Vec::new();
    for k in 0..n {
        for sign in [-1i64, 1] {
            let r = frac(rng.gen_range(1..=8), rng.gen_range(4..=8));
            pts.push(scalar::scale(&scalar::unit(n, k), &(int(sign) * r)));
        }
    }
    for _ in 0..extra {
        pts.push((0..n).map(|_| frac(rng.gen_range(-8..=8), 8)).collect());
    }
    convex_hull(&pts).expect("axis points keep the origin interior")
}

/// Random positive rational with denominator at most `den`.
pub fn random_positive<R: Rng>(rng: &mut R, max_num: i64, den: i64) -> Scalar {
    frac(rng.gen_range(1..=max_num), rng.gen_range(1..=den))
}
