//! Body models: balls, ellipsoids, piecewise planar curves and polytopes,
//! with boundary points, curvature and the cone measure.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use super::curve::{Piece, PiecewiseCurve};
use super::error::{BodyError, Result};
use super::quadrature::{integrate, integrate_2d, Integral, QuadratureOptions};
use crate::polytope::{LinearMap, Polytope, SupportFunction};
use crate::scalar;

/// Volume of the unit ball in R^n, `π^{n/2} / Γ(n/2 + 1)`.
pub fn unit_ball_volume(n: usize) -> f64 {
    // Γ(n/2 + 1) through the half-integer recurrence.
    let (mut v, start) = if n % 2 == 0 { (1.0, 2) } else { (2.0, 3) };
    let mut k = start;
    while k <= n {
        v *= 2.0 * PI / k as f64;
        k += 2;
    }
    v
}

/// `A·Bⁿ` for a symmetric positive definite `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ellipsoid {
    a: DMatrix<f64>,
    a_inv: DMatrix<f64>,
    det: f64,
}

impl Ellipsoid {
    pub fn new(a: DMatrix<f64>) -> Result<Self> {
        let n = a.nrows();
        if n == 0 || a.ncols() != n {
            return Err(BodyError::InvalidBody("ellipsoid matrix must be square".into()));
        }
        if a.iter().any(|x| !x.is_finite()) {
            return Err(BodyError::InvalidBody("non-finite matrix entry".into()));
        }
        let scale = a.amax().max(f64::MIN_POSITIVE);
        if (&a - a.transpose()).amax() > 1e-12 * scale {
            return Err(BodyError::InvalidBody("ellipsoid matrix must be symmetric".into()));
        }
        let a = (&a + a.transpose()) * 0.5;
        let chol = a
            .clone()
            .cholesky()
            .ok_or_else(|| BodyError::InvalidBody("ellipsoid matrix must be positive definite".into()))?;
        let det = a.determinant();
        let a_inv = chol.inverse();
        Ok(Self { a, a_inv, det })
    }

    /// Ellipsoid `M·Bⁿ` for an arbitrary invertible `M`, normalized to the
    /// symmetric factor `(M Mᵀ)^{1/2}`.
    pub fn from_linear_image(m: &DMatrix<f64>) -> Result<Self> {
        let mmt = m * m.transpose();
        let eig = mmt.symmetric_eigen();
        if eig.eigenvalues.iter().any(|&l| l <= 0.0) {
            return Err(BodyError::InvalidBody("linear image is degenerate".into()));
        }
        let sqrt = DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt));
        let a = &eig.eigenvectors * sqrt * eig.eigenvectors.transpose();
        Self::new((&a + a.transpose()) * 0.5)
    }

    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&DVector::from_column_slice(entries)))
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn volume(&self) -> f64 {
        unit_ball_volume(self.dim()) * self.det
    }

    /// Boundary data at `x = A w` for a unit vector `w`.
    fn point_from_sphere(&self, w: &DVector<f64>) -> BoundaryPoint {
        let n = self.dim();
        let x = &self.a * w;
        // Mx = A^{-1} w with M = A^{-2}.
        let mx = &self.a_inv * w;
        let len = mx.norm();
        BoundaryPoint {
            position: x.iter().copied().collect(),
            normal: (mx / len).iter().copied().collect(),
            curvature: 1.0 / (self.det * self.det * len.powi(n as i32 + 1)),
            cone_density: 1.0 / len,
        }
    }

    /// Boundary point with outer normal `u` (unit).
    fn point_with_normal(&self, u: &DVector<f64>) -> BoundaryPoint {
        let au = &self.a * u;
        self.point_from_sphere(&(&au / au.norm()))
    }
}

/// `(A·Bⁿ)* = A⁻¹·Bⁿ` (for symmetric `A`).
pub fn polar_ellipsoid(e: &Ellipsoid) -> Ellipsoid {
    Ellipsoid::new(e.a_inv.clone()).expect("inverse of an SPD matrix is SPD")
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPoint {
    pub position: Vec<f64>,
    pub normal: Vec<f64>,
    pub curvature: f64,
    pub cone_density: f64,
}

/// `κ₀ = κ / ⟨x,u⟩^{n+1}`.
pub fn kappa_zero(bp: &BoundaryPoint, n: usize) -> f64 {
    bp.curvature / bp.cone_density.powi(n as i32 + 1)
}

/// How to address a boundary point.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryParam {
    /// Outer-normal angle (planar bodies).
    Angle(f64),
    /// Outer unit normal.
    Normal(Vec<f64>),
    /// Piece (or polygon edge) index and local parameter in `[0, 1]`.
    Piece { index: usize, t: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum BodyModel {
    Ball { dim: usize, radius: f64 },
    Ellipsoid(Ellipsoid),
    Piecewise2D(PiecewiseCurve),
    Polytope(Polytope),
}

impl BodyModel {
    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        if dim == 0 || !(radius > 0.0 && radius.is_finite()) {
            return Err(BodyError::InvalidBody("ball needs dim >= 1 and radius > 0".into()));
        }
        Ok(BodyModel::Ball { dim, radius })
    }

    pub fn dim(&self) -> usize {
        match self {
            BodyModel::Ball { dim, .. } => *dim,
            BodyModel::Ellipsoid(e) => e.dim(),
            BodyModel::Piecewise2D(_) => 2,
            BodyModel::Polytope(p) => p.dim(),
        }
    }

    fn as_ellipsoid(&self) -> Option<Ellipsoid> {
        match self {
            BodyModel::Ball { dim, radius } => {
                Some(Ellipsoid::new(DMatrix::identity(*dim, *dim) * *radius).expect("ball is SPD"))
            }
            BodyModel::Ellipsoid(e) => Some(e.clone()),
            _ => None,
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            BodyModel::Ball { dim, radius } => unit_ball_volume(*dim) * radius.powi(*dim as i32),
            BodyModel::Ellipsoid(e) => e.volume(),
            BodyModel::Piecewise2D(c) => c.area(),
            BodyModel::Polytope(p) => scalar::to_f64(&p.volume()),
        }
    }

    pub fn polar_volume(&self, opts: &QuadratureOptions) -> Integral {
        match self {
            BodyModel::Ball { dim, radius } => {
                Integral::exact(unit_ball_volume(*dim) * radius.powi(-(*dim as i32)))
            }
            BodyModel::Ellipsoid(e) => Integral::exact(unit_ball_volume(e.dim()) / e.det()),
            BodyModel::Piecewise2D(c) => c.polar_area(opts),
            BodyModel::Polytope(p) => Integral::exact(scalar::to_f64(&p.polar_volume())),
        }
    }

    /// Dilation by `t > 0`. Polytopes are scaled by the exact rational value
    /// of the double `t`.
    pub fn scale(&self, t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(BodyError::ParamOutOfDomain("scale factor must be positive".into()));
        }
        Ok(match self {
            BodyModel::Ball { dim, radius } => BodyModel::Ball {
                dim: *dim,
                radius: radius * t,
            },
            BodyModel::Ellipsoid(e) => BodyModel::Ellipsoid(Ellipsoid::new(e.matrix() * t)?),
            BodyModel::Piecewise2D(c) => {
                BodyModel::Piecewise2D(c.apply_similarity([[t, 0.0], [0.0, t]])?)
            }
            BodyModel::Polytope(p) => {
                let exact = scalar::from_f64(t).expect("finite");
                BodyModel::Polytope(p.dilate(&exact)?)
            }
        })
    }

    /// Image under a linear map. Piecewise curves accept similarities only.
    pub fn apply_linear(&self, map: &LinearMap) -> Result<Self> {
        if map.dim() != self.dim() {
            return Err(BodyError::Geometry(crate::polytope::GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: map.dim(),
            }));
        }
        let rows = map.to_f64_rows();
        let n = rows.len();
        let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
        Ok(match self {
            BodyModel::Polytope(p) => BodyModel::Polytope(p.apply_linear(map)?),
            BodyModel::Piecewise2D(c) => BodyModel::Piecewise2D(
                c.apply_similarity([[rows[0][0], rows[0][1]], [rows[1][0], rows[1][1]]])?,
            ),
            _ => {
                let e = self.as_ellipsoid().expect("ball or ellipsoid");
                BodyModel::Ellipsoid(Ellipsoid::from_linear_image(&(m * e.matrix()))?)
            }
        })
    }

    pub fn boundary_point(&self, param: &BoundaryParam) -> Result<BoundaryPoint> {
        boundary_point(self, param)
    }
}

fn unit_normal(u: &[f64], n: usize) -> Result<DVector<f64>> {
    if u.len() != n {
        return Err(BodyError::ParamOutOfDomain(format!(
            "normal has {} components, expected {}",
            u.len(),
            n
        )));
    }
    let v = DVector::from_column_slice(u);
    if !v.iter().all(|x| x.is_finite()) || (v.norm() - 1.0).abs() > 1e-9 {
        return Err(BodyError::ParamOutOfDomain("normal must be a unit vector".into()));
    }
    Ok(v)
}

fn curve_point(c: &PiecewiseCurve, index: usize, t: f64) -> Result<BoundaryPoint> {
    let pieces = c.pieces();
    let piece = pieces
        .get(index)
        .ok_or_else(|| BodyError::ParamOutOfDomain(format!("no piece {}", index)))?;
    if !(0.0..=1.0).contains(&t) {
        return Err(BodyError::ParamOutOfDomain("local parameter must lie in [0, 1]".into()));
    }
    let prev = (index + pieces.len() - 1) % pieces.len();
    if (t == 0.0 && c.is_corner(prev)) || (t == 1.0 && c.is_corner(index)) {
        return Err(BodyError::NonSmoothPoint(format!(
            "corner at the {} of piece {}",
            if t == 0.0 { "start" } else { "end" },
            index
        )));
    }
    let x = piece.point(t);
    let u = piece.normal(t);
    Ok(BoundaryPoint {
        position: x.to_vec(),
        normal: u.to_vec(),
        curvature: piece.curvature(),
        cone_density: x[0] * u[0] + x[1] * u[1],
    })
}

pub fn boundary_point(body: &BodyModel, param: &BoundaryParam) -> Result<BoundaryPoint> {
    let n = body.dim();
    match (body, param) {
        (BodyModel::Ball { .. } | BodyModel::Ellipsoid(_), BoundaryParam::Angle(theta)) => {
            if n != 2 {
                return Err(BodyError::ParamOutOfDomain("angles address planar bodies only".into()));
            }
            let e = body.as_ellipsoid().expect("ball or ellipsoid");
            Ok(e.point_with_normal(&DVector::from_vec(vec![theta.cos(), theta.sin()])))
        }
        (BodyModel::Ball { .. } | BodyModel::Ellipsoid(_), BoundaryParam::Normal(u)) => {
            let u = unit_normal(u, n)?;
            Ok(body.as_ellipsoid().expect("ball or ellipsoid").point_with_normal(&u))
        }
        (BodyModel::Piecewise2D(c), BoundaryParam::Piece { index, t }) => curve_point(c, *index, *t),
        (BodyModel::Piecewise2D(c), BoundaryParam::Angle(psi)) => {
            for (i, p) in c.pieces().iter().enumerate() {
                if let Piece::Arc { from, to, .. } = *p {
                    let d = (psi - from).rem_euclid(2.0 * PI);
                    if d <= to - from {
                        return curve_point(c, i, d / (to - from));
                    }
                }
            }
            Err(BodyError::NonSmoothPoint(
                "normal is attained on a segment or at a corner".into(),
            ))
        }
        (BodyModel::Piecewise2D(_), BoundaryParam::Normal(u)) => {
            let u = unit_normal(u, 2)?;
            boundary_point(body, &BoundaryParam::Angle(u[1].atan2(u[0])))
        }
        (BodyModel::Polytope(p), BoundaryParam::Piece { index, t }) if n == 2 => {
            if *index >= p.facets().len() {
                return Err(BodyError::ParamOutOfDomain(format!("no edge {}", index)));
            }
            if !(0.0..=1.0).contains(t) {
                return Err(BodyError::ParamOutOfDomain("local parameter must lie in [0, 1]".into()));
            }
            if *t == 0.0 || *t == 1.0 {
                return Err(BodyError::NonSmoothPoint("polygon vertex".into()));
            }
            let (x0, x1) = edge(p, *index);
            let a = scalar::to_f64_vec(&p.facets()[*index]);
            let len = a[0].hypot(a[1]);
            Ok(BoundaryPoint {
                position: vec![x0[0] + t * (x1[0] - x0[0]), x0[1] + t * (x1[1] - x0[1])],
                normal: vec![a[0] / len, a[1] / len],
                curvature: 0.0,
                cone_density: 1.0 / len,
            })
        }
        (BodyModel::Polytope(_), _) => Err(BodyError::NonSmoothPoint(
            "polytope boundaries are addressed by edge (planar case) only".into(),
        )),
        _ => Err(BodyError::ParamOutOfDomain(
            "parameter kind does not fit this body".into(),
        )),
    }
}

fn edge(p: &Polytope, facet: usize) -> ([f64; 2], [f64; 2]) {
    let idx = p.facet_vertices(facet);
    let v0 = scalar::to_f64_vec(&p.vertices()[idx[0]]);
    let v1 = scalar::to_f64_vec(&p.vertices()[idx[1]]);
    ([v0[0], v0[1]], [v1[0], v1[1]])
}

/// `∫_{∂K} f dμ_K` with `dμ_K = ⟨x, u⟩ dH^{n−1}`.
///
/// Balls and ellipsoids are integrated over the sphere parametrization
/// (n = 2, 3); planar curves piece by piece; polygons edge by edge. For
/// polytopes with n ≥ 3, `f` is sampled at each facet's vertex centroid and
/// weighted by the exact cone mass of the facet, which is exact for
/// facetwise-constant `f`.
pub fn cone_measure_integral<F>(body: &BodyModel, f: F, opts: &QuadratureOptions) -> Result<Integral>
where
    F: Fn(&BoundaryPoint) -> f64,
{
    let n = body.dim();
    match body {
        BodyModel::Ball { .. } | BodyModel::Ellipsoid(_) => {
            let e = body.as_ellipsoid().expect("ball or ellipsoid");
            match n {
                2 => Ok(integrate(
                    |th| {
                        let w = DVector::from_vec(vec![th.cos(), th.sin()]);
                        let bp = e.point_from_sphere(&w);
                        let dw = DVector::from_vec(vec![-th.sin(), th.cos()]);
                        let ds = (e.matrix() * dw).norm();
                        f(&bp) * bp.cone_density * ds
                    },
                    0.0,
                    2.0 * PI,
                    opts,
                )),
                3 => Ok(integrate_2d(
                    |th, ph| {
                        let (st, ct, sp, cp) = (th.sin(), th.cos(), ph.sin(), ph.cos());
                        let w = DVector::from_vec(vec![st * cp, st * sp, ct]);
                        let bp = e.point_from_sphere(&w);
                        let d_th = e.matrix() * DVector::from_vec(vec![ct * cp, ct * sp, -st]);
                        let d_ph = e.matrix() * DVector::from_vec(vec![-st * sp, st * cp, 0.0]);
                        let da = d_th.cross(&d_ph).norm();
                        f(&bp) * bp.cone_density * da
                    },
                    [0.0, PI, 0.0, 2.0 * PI],
                    opts,
                )),
                _ => Err(BodyError::UnsupportedDimension(n)),
            }
        }
        BodyModel::Piecewise2D(c) => {
            let parts: Vec<Integral> = c
                .pieces()
                .iter()
                .map(|piece| {
                    let speed = piece.speed();
                    integrate(
                        |t| {
                            let x = piece.point(t);
                            let u = piece.normal(t);
                            let bp = BoundaryPoint {
                                position: x.to_vec(),
                                normal: u.to_vec(),
                                curvature: piece.curvature(),
                                cone_density: x[0] * u[0] + x[1] * u[1],
                            };
                            f(&bp) * bp.cone_density * speed
                        },
                        0.0,
                        1.0,
                        opts,
                    )
                })
                .collect();
            Ok(Integral::combine(&parts))
        }
        BodyModel::Polytope(p) if n == 2 => {
            let parts: Vec<Integral> = (0..p.facets().len())
                .map(|i| {
                    let (x0, x1) = edge(p, i);
                    let a = scalar::to_f64_vec(&p.facets()[i]);
                    let alen = a[0].hypot(a[1]);
                    let u = vec![a[0] / alen, a[1] / alen];
                    let len = (x1[0] - x0[0]).hypot(x1[1] - x0[1]);
                    integrate(
                        |t| {
                            let bp = BoundaryPoint {
                                position: vec![x0[0] + t * (x1[0] - x0[0]), x0[1] + t * (x1[1] - x0[1])],
                                normal: u.clone(),
                                curvature: 0.0,
                                cone_density: 1.0 / alen,
                            };
                            f(&bp) * bp.cone_density * len
                        },
                        0.0,
                        1.0,
                        opts,
                    )
                })
                .collect();
            Ok(Integral::combine(&parts))
        }
        BodyModel::Polytope(p) => {
            // Cone over facet F from the origin has volume vol(F)·h/n, so
            // its cone mass is n times that volume.
            let simplices = p.fan_simplices();
            let mut mass = vec![scalar::int(0); p.facets().len()];
            for s in &simplices {
                let rows: Vec<_> = s.iter().map(|&i| p.vertices()[i].clone()).collect();
                let facet = (0..p.facets().len())
                    .find(|&j| s.iter().all(|v| p.facet_vertices(j).contains(v)))
                    .expect("fan simplex lies in a facet");
                mass[facet] += num_traits::Signed::abs(&scalar::det(&rows));
            }
            let nf = scalar::factorial(n - 1);
            let mut total = 0.0;
            for (j, m) in mass.iter().enumerate() {
                let idx = p.facet_vertices(j);
                let mut c = vec![0.0; n];
                for &i in idx {
                    for (ck, xk) in c.iter_mut().zip(scalar::to_f64_vec(&p.vertices()[i])) {
                        *ck += xk / idx.len() as f64;
                    }
                }
                let a = scalar::to_f64_vec(&p.facets()[j]);
                let alen = a.iter().map(|x| x * x).sum::<f64>().sqrt();
                let bp = BoundaryPoint {
                    position: c,
                    normal: a.iter().map(|x| x / alen).collect(),
                    curvature: 0.0,
                    cone_density: 1.0 / alen,
                };
                total += f(&bp) * scalar::to_f64(&(m / &nf));
            }
            Ok(Integral::exact(total))
        }
    }
}

impl SupportFunction for BodyModel {
    fn ambient_dim(&self) -> usize {
        self.dim()
    }

    fn support(&self, u: &[f64]) -> f64 {
        match self {
            BodyModel::Ball { radius, .. } => radius * u.iter().map(|x| x * x).sum::<f64>().sqrt(),
            BodyModel::Ellipsoid(e) => (e.matrix() * DVector::from_column_slice(u)).norm(),
            BodyModel::Piecewise2D(c) => c.support([u[0], u[1]]),
            BodyModel::Polytope(p) => p.support(u),
        }
    }
}

impl Integral {
    /// The value, or `QuadratureNoConvergence` carrying the best estimate.
    pub fn require_converged(self) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(BodyError::QuadratureNoConvergence {
                estimate: self.value,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::construct::cube;
    use approx::assert_relative_eq;

    fn opts() -> QuadratureOptions {
        QuadratureOptions::default()
    }

    #[test]
    fn unit_ball_volumes() {
        assert_relative_eq!(unit_ball_volume(1), 2.0);
        assert_relative_eq!(unit_ball_volume(2), PI, epsilon = 1e-15);
        assert_relative_eq!(unit_ball_volume(3), 4.0 * PI / 3.0, epsilon = 1e-15);
        assert_relative_eq!(unit_ball_volume(4), PI * PI / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn ball_boundary_points() {
        let b = BodyModel::ball(2, 1.0).unwrap();
        let bp = b.boundary_point(&BoundaryParam::Angle(0.7)).unwrap();
        assert_relative_eq!(bp.curvature, 1.0, epsilon = 1e-14);
        assert_relative_eq!(bp.cone_density, 1.0, epsilon = 1e-14);
        for n in [2usize, 3] {
            let t0 = 1.7;
            let b = BodyModel::ball(n, t0).unwrap();
            let mut u = vec![0.0; n];
            u[n - 1] = 1.0;
            let bp = b.boundary_point(&BoundaryParam::Normal(u)).unwrap();
            assert_relative_eq!(bp.curvature, t0.powi(-(n as i32 - 1)), epsilon = 1e-13);
            assert_relative_eq!(bp.cone_density, t0, epsilon = 1e-13);
            assert_relative_eq!(kappa_zero(&bp, n), t0.powi(-2 * n as i32), epsilon = 1e-13);
        }
        let bad = b_unit().boundary_point(&BoundaryParam::Normal(vec![2.0, 0.0]));
        assert!(matches!(bad, Err(BodyError::ParamOutOfDomain(_))));
    }

    fn b_unit() -> BodyModel {
        BodyModel::ball(2, 1.0).unwrap()
    }

    #[test]
    fn ellipse_point_is_pushed_forward_ball_data() {
        let e = BodyModel::Ellipsoid(Ellipsoid::diagonal(&[2.0, 0.5]).unwrap());
        let bp = e.boundary_point(&BoundaryParam::Normal(vec![1.0, 0.0])).unwrap();
        assert_relative_eq!(bp.position[0], 2.0, epsilon = 1e-14);
        assert_relative_eq!(bp.position[1], 0.0, epsilon = 1e-14);
        // independent: parametrize x(θ) = (2cos θ, ½ sin θ) and use
        // κ = |x'×x''|/|x'|³ at θ = 0, ⟨x,u⟩ = 2.
        let kappa = (2.0 * 0.5) / 0.5f64.powi(3);
        assert_relative_eq!(bp.curvature, kappa, epsilon = 1e-12);
        assert_relative_eq!(bp.cone_density, 2.0, epsilon = 1e-14);
        // det A = 1, so κ₀ equals the unit ball's value
        assert_relative_eq!(kappa_zero(&bp, 2), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn total_cone_mass() {
        let one = |_: &BoundaryPoint| 1.0;
        let disc = cone_measure_integral(&b_unit(), one, &opts()).unwrap();
        assert_relative_eq!(disc.value, 2.0 * PI, epsilon = 1e-10);
        let sq = BodyModel::Polytope(cube(2));
        let m = cone_measure_integral(&sq, one, &opts()).unwrap();
        assert_relative_eq!(m.value, 8.0, epsilon = 1e-12);
        let c3 = BodyModel::Polytope(cube(3));
        assert_eq!(cone_measure_integral(&c3, one, &opts()).unwrap().value, 24.0);
        let e3 = BodyModel::Ellipsoid(Ellipsoid::diagonal(&[1.5, 0.7, 2.0]).unwrap());
        let m = cone_measure_integral(&e3, one, &opts()).unwrap();
        assert_relative_eq!(m.value, 3.0 * e3.volume(), max_relative = 1e-8);
        let cap = BodyModel::Piecewise2D(PiecewiseCurve::disc_cap_left(0.4).unwrap());
        let m = cone_measure_integral(&cap, one, &opts()).unwrap();
        assert_relative_eq!(m.value, 2.0 * cap.volume(), max_relative = 1e-10);
        let k13 = cone_measure_integral(&b_unit(), |bp| kappa_zero(bp, 2).powf(1.0 / 3.0), &opts()).unwrap();
        assert_relative_eq!(k13.value, 2.0 * PI, epsilon = 1e-10);
    }

    #[test]
    fn polar_ellipsoids() {
        let e = Ellipsoid::diagonal(&[2.0, 0.5]).unwrap();
        let p = polar_ellipsoid(&e);
        assert_relative_eq!(p.matrix()[(0, 0)], 0.5, epsilon = 1e-15);
        assert_relative_eq!(p.matrix()[(1, 1)], 2.0, epsilon = 1e-15);
        assert_relative_eq!(e.volume() * p.volume(), PI * PI, epsilon = 1e-12);
        let b = Ellipsoid::diagonal(&[3.0, 3.0]).unwrap();
        assert_relative_eq!(polar_ellipsoid(&b).matrix()[(0, 0)], 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn linear_images() {
        let shear = LinearMap::from_i64(&[&[1, 1], &[0, 1]]).unwrap();
        let img = b_unit().apply_linear(&shear).unwrap();
        match &img {
            BodyModel::Ellipsoid(e) => assert_relative_eq!(e.det(), 1.0, epsilon = 1e-12),
            other => panic!("expected ellipsoid, got {:?}", other),
        }
        // support of M·B is |Mᵀu|
        let u = [0.6, 0.8];
        assert_relative_eq!(img.support(&u), (0.6f64.powi(2) + 1.4f64.powi(2)).sqrt(), epsilon = 1e-12);
        let sq = BodyModel::Polytope(cube(2)).apply_linear(&shear).unwrap();
        assert_relative_eq!(sq.volume(), 4.0);
        let cap = BodyModel::Piecewise2D(PiecewiseCurve::disc_cap_left(0.5).unwrap());
        assert!(cap.apply_linear(&shear).is_err());
    }

    #[test]
    fn corners_are_not_smooth() {
        let cap = BodyModel::Piecewise2D(PiecewiseCurve::disc_cap_left(0.5).unwrap());
        let r = cap.boundary_point(&BoundaryParam::Piece { index: 1, t: 0.0 });
        assert!(matches!(r, Err(BodyError::NonSmoothPoint(_))));
        let flat = cap.boundary_point(&BoundaryParam::Piece { index: 1, t: 0.5 }).unwrap();
        assert_eq!(kappa_zero(&flat, 2), 0.0);
        let r = cap.boundary_point(&BoundaryParam::Angle(0.0));
        assert!(matches!(r, Err(BodyError::NonSmoothPoint(_))));
        let on_arc = cap.boundary_point(&BoundaryParam::Angle(PI)).unwrap();
        assert_relative_eq!(on_arc.position[0], -1.0, epsilon = 1e-14);
    }
}
