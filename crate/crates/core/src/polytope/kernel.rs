//! The exact polytope type: convex polytopes with the origin strictly in
//! their interiors, held in both vertex and normalized facet form.

use num_traits::{One, Signed, Zero};

use super::error::{GeometryError, Result};
use super::hull::{self, raw_hull};
use super::linear_map::LinearMap;
use std::cmp::Ordering;

use crate::scalar::{self, IntPlane, IntPoint, Point, Scalar};

/// Convex polytope in R^n containing the origin in its interior.
///
/// Facets are stored as normals `a` of the inequalities `<a, x> <= 1`,
/// which is always possible because the origin is interior. With this
/// normalization the polar body is a pure swap of the two lists. Both lists
/// are minimal and sorted lexicographically, so structural equality is
/// equality of sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Point>,
    /// facet index -> sorted indices of the vertices on that facet
    incidence: Vec<Vec<usize>>,
}

/// `{x : <normal, x> = offset}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    normal: Point,
    offset: Scalar,
}

impl Hyperplane {
    pub fn new(normal: Point, offset: Scalar) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(GeometryError::InvalidParameter("zero hyperplane normal".into()));
        }
        Ok(Self { normal, offset })
    }

    /// `{x : x_k = offset}` (0-based `k`).
    pub fn coordinate(n: usize, k: usize, offset: Scalar) -> Self {
        Self {
            normal: scalar::unit(n, k),
            offset,
        }
    }

    pub fn normal(&self) -> &Point {
        &self.normal
    }

    pub fn offset(&self) -> &Scalar {
        &self.offset
    }

    fn eval(&self, x: &[Scalar]) -> Scalar {
        scalar::dot(&self.normal, x) - &self.offset
    }
}

/// Which closed halfspace of a [`Hyperplane`] to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `<normal, x> <= offset`
    Below,
    /// `<normal, x> >= offset`
    Above,
}

/// Convex hull of `points` as a [`Polytope`].
///
/// Interior and repeated points are dropped. Fails with `DegenerateInput`
/// for lower-dimensional input and `OriginNotInterior` when the origin is on
/// the boundary or outside.
pub fn convex_hull(points: &[Point]) -> Result<Polytope> {
    let raw = raw_hull(points)?;
    let mut normals = Vec::with_capacity(raw.facets.len());
    for f in &raw.facets {
        if !f.offset.is_positive() {
            return Err(GeometryError::OriginNotInterior);
        }
        let inv = f.offset.recip();
        normals.push(scalar::scale(&f.normal, &inv));
    }
    let p = Polytope::assemble(raw.dim, raw.vertices, normals);
    p.validate()?;
    Ok(p)
}

impl Polytope {
    /// Builds the polytope from already-minimal vertex and normalized facet
    /// lists describing the same set.
    fn assemble(dim: usize, mut vertices: Vec<Point>, mut facets: Vec<Point>) -> Self {
        vertices.sort();
        facets.sort();
        let one = Scalar::one();
        let points: Vec<IntPoint> = vertices.iter().map(|v| IntPoint::new(v)).collect();
        let incidence = facets
            .iter()
            .map(|a| {
                let plane = IntPlane::new(a, &one);
                points
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| plane.side(v) == Ordering::Equal)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Self {
            dim,
            vertices,
            facets,
            incidence,
        }
    }

    /// Checks that the two representations agree: every vertex satisfies
    /// every facet inequality, every facet carries an (n-1)-dimensional
    /// vertex set, and every vertex is cut out by n independent facets.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        let one = Scalar::one();
        let points: Vec<IntPoint> = self.vertices.iter().map(|v| IntPoint::new(v)).collect();
        for a in &self.facets {
            let plane = IntPlane::new(a, &one);
            if points.iter().any(|v| plane.side(v) == Ordering::Greater) {
                return Err(GeometryError::DegenerateInput);
            }
        }
        for inc in &self.incidence {
            let pts: Vec<&Point> = inc.iter().map(|&i| &self.vertices[i]).collect();
            if scalar::affine_dim(&pts) != Some(n - 1) {
                return Err(GeometryError::DegenerateInput);
            }
        }
        for v in 0..self.vertices.len() {
            let normals: Vec<Point> = self
                .incidence
                .iter()
                .zip(&self.facets)
                .filter(|(inc, _)| inc.contains(&v))
                .map(|(_, a)| a.clone())
                .collect();
            if scalar::rank(&normals) != n {
                return Err(GeometryError::DegenerateInput);
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Normals `a_i` of the facet inequalities `<a_i, x> <= 1`.
    pub fn facets(&self) -> &[Point] {
        &self.facets
    }

    pub fn facet_vertices(&self, facet: usize) -> &[usize] {
        &self.incidence[facet]
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        let one = Scalar::one();
        self.facets.iter().all(|a| scalar::dot(a, x) <= one)
    }

    /// The polar body `{x : <x, y> <= 1 for all y in P}`.
    pub fn polar(&self) -> Polytope {
        Polytope::assemble(self.dim, self.facets.clone(), self.vertices.clone())
    }

    /// Origin-fan triangulation of the boundary: each facet is split by its
    /// own lexicographic fan, and every resulting (n-1)-simplex is returned
    /// as `n` vertex indices. Coning them from the origin triangulates `P`.
    pub fn fan_simplices(&self) -> Vec<Vec<usize>> {
        hull::boundary_simplices(&self.vertices, &self.incidence, self.dim)
    }

    /// Exact n-dimensional volume.
    pub fn volume(&self) -> Scalar {
        let simplices = self.fan_simplices();
        hull::fan_volume(&self.vertices, &simplices, &scalar::zeros(self.dim))
    }

    /// Volume of the polar body.
    pub fn polar_volume(&self) -> Scalar {
        self.polar().volume()
    }

    /// `m*(P) = integral of x over P*`, exact.
    pub fn moment_vector_of_polar(&self) -> Point {
        let polar = self.polar();
        let n = self.dim;
        let denom = scalar::factorial(n) * scalar::int(n as i64 + 1);
        let mut total = scalar::zeros(n);
        for s in polar.fan_simplices() {
            let rows: Vec<Point> = s.iter().map(|&i| polar.vertices[i].clone()).collect();
            let vol = scalar::det(&rows).abs();
            for row in &rows {
                for k in 0..n {
                    total[k] += &vol * &row[k];
                }
            }
        }
        total.iter().map(|x| x / &denom).collect()
    }

    /// Image under an invertible linear map: vertices go by `A`, facet
    /// normals by `A^{-t}`.
    pub fn apply_linear(&self, map: &LinearMap) -> Result<Polytope> {
        if map.dim() != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                found: map.dim(),
            });
        }
        let vertices = self.vertices.iter().map(|v| map.apply(v)).collect();
        let facets = self
            .facets
            .iter()
            .map(|a| map.apply_inverse_transpose(a))
            .collect();
        Ok(Polytope::assemble(self.dim, vertices, facets))
    }

    /// Dilation `tP` for `t > 0`.
    pub fn dilate(&self, t: &Scalar) -> Result<Polytope> {
        if !t.is_positive() {
            return Err(GeometryError::InvalidParameter("dilation factor must be positive".into()));
        }
        let inv = t.recip();
        let vertices = self.vertices.iter().map(|v| scalar::scale(v, t)).collect();
        let facets = self.facets.iter().map(|a| scalar::scale(a, &inv)).collect();
        Ok(Polytope::assemble(self.dim, vertices, facets))
    }

    /// Translate by `t`; fails unless the origin stays interior.
    pub fn translate(&self, t: &[Scalar]) -> Result<Polytope> {
        let pts: Vec<Point> = self.vertices.iter().map(|v| scalar::add(v, t)).collect();
        convex_hull(&pts)
    }

    /// `P ∩ Q`, exact, via `(P ∩ Q)* = conv(P* ∪ Q*)`.
    pub fn intersection(&self, other: &Polytope) -> Result<Polytope> {
        self.check_dim(other)?;
        let mut normals = self.facets.clone();
        normals.extend(other.facets.iter().cloned());
        Ok(convex_hull(&normals)?.polar())
    }

    /// `conv(P ∪ Q)`.
    pub fn hull_with(&self, other: &Polytope) -> Result<Polytope> {
        self.check_dim(other)?;
        let mut pts = self.vertices.clone();
        pts.extend(other.vertices.iter().cloned());
        convex_hull(&pts)
    }

    /// `P ∪ Q` when that union is convex, decided exactly by comparing
    /// `vol conv(P ∪ Q)` with `vol P + vol Q - vol(P ∩ Q)`.
    pub fn convex_union(&self, other: &Polytope) -> Result<Option<Polytope>> {
        let hull = self.hull_with(other)?;
        let inter = self.intersection(other)?;
        let expected = self.volume() + other.volume() - inter.volume();
        Ok((hull.volume() == expected).then_some(hull))
    }

    fn check_dim(&self, other: &Polytope) -> Result<()> {
        if self.dim != other.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Pairs of vertex indices spanning an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let nv = self.vertices.len();
        let on: Vec<Vec<usize>> = (0..nv)
            .map(|v| {
                (0..self.facets.len())
                    .filter(|&f| self.incidence[f].contains(&v))
                    .collect()
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..nv {
            for j in i + 1..nv {
                let normals: Vec<Point> = on[i]
                    .iter()
                    .filter(|f| on[j].contains(f))
                    .map(|&f| self.facets[f].clone())
                    .collect();
                if normals.len() + 1 >= self.dim && scalar::rank(&normals) == self.dim - 1 {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    fn side_range(&self, h: &Hyperplane) -> (Scalar, Scalar) {
        let vals: Vec<Scalar> = self.vertices.iter().map(|v| h.eval(v)).collect();
        let lo = vals.iter().min().cloned().unwrap_or_else(Scalar::zero);
        let hi = vals.iter().max().cloned().unwrap_or_else(Scalar::zero);
        (lo, hi)
    }

    fn cuts_interior(&self, h: &Hyperplane) -> Result<()> {
        if h.normal.len() != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                found: h.normal.len(),
            });
        }
        let (lo, hi) = self.side_range(h);
        if lo.is_negative() && hi.is_positive() {
            Ok(())
        } else {
            Err(GeometryError::NoIntersection)
        }
    }

    /// Vertex set of `P ∩ H^-` (or `H^+`): the vertices on that side plus
    /// the points where edges cross `H`.
    fn piece_points(&self, h: &Hyperplane, side: Side) -> Vec<Point> {
        let vals: Vec<Scalar> = self.vertices.iter().map(|v| h.eval(v)).collect();
        let keep = |s: &Scalar| match side {
            Side::Below => !s.is_positive(),
            Side::Above => !s.is_negative(),
        };
        let mut pts: Vec<Point> = self
            .vertices
            .iter()
            .zip(&vals)
            .filter(|(_, s)| keep(s))
            .map(|(v, _)| v.clone())
            .collect();
        for (i, j) in self.edges() {
            let (si, sj) = (&vals[i], &vals[j]);
            if (si.is_negative() && sj.is_positive()) || (si.is_positive() && sj.is_negative()) {
                let t = si / (si - sj);
                let dir = scalar::sub(&self.vertices[j], &self.vertices[i]);
                pts.push(scalar::add(&self.vertices[i], &scalar::scale(&dir, &t)));
            }
        }
        pts
    }

    /// Splits `P` into `P ∩ H^-` and `P ∩ H^+`, both of which must again
    /// contain the origin in their interiors.
    ///
    /// Because the two open halfspaces are disjoint, the origin can be
    /// interior to at most one piece; a hyperplane that meets `int P`
    /// therefore always yields `InvalidSplit`. Use [`Polytope::clip`] for
    /// the origin side and [`Polytope::split_volumes`] for exact piece
    /// volumes.
    pub fn split_by_hyperplane(&self, h: &Hyperplane) -> Result<(Polytope, Polytope)> {
        self.cuts_interior(h)?;
        let build = |side| {
            convex_hull(&self.piece_points(h, side)).map_err(|e| match e {
                GeometryError::OriginNotInterior => GeometryError::InvalidSplit,
                other => other,
            })
        };
        Ok((build(Side::Below)?, build(Side::Above)?))
    }

    /// `P` intersected with one closed halfspace of `h`; the origin must be
    /// strictly inside the kept halfspace. A halfspace that already contains
    /// `P` returns `P` unchanged.
    pub fn clip(&self, h: &Hyperplane, side: Side) -> Result<Polytope> {
        if h.normal.len() != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                found: h.normal.len(),
            });
        }
        let origin_inside = match side {
            Side::Below => h.offset.is_positive(),
            Side::Above => h.offset.is_negative(),
        };
        if !origin_inside {
            return Err(GeometryError::InvalidSplit);
        }
        // Both sides reduce to <normal/offset, x> <= 1.
        let g = scalar::scale(&h.normal, &h.offset.recip());
        let mut normals = self.facets.clone();
        normals.push(g);
        Ok(convex_hull(&normals)?.polar())
    }

    /// Exact volumes of `P ∩ H^-` and `P ∩ H^+`, each computed from its own
    /// vertex set (no origin condition on the pieces).
    pub fn split_volumes(&self, h: &Hyperplane) -> Result<(Scalar, Scalar)> {
        self.cuts_interior(h)?;
        let below = raw_hull(&self.piece_points(h, Side::Below))?.volume();
        let above = raw_hull(&self.piece_points(h, Side::Above))?.volume();
        Ok((below, above))
    }

    /// Support function `h_P(u) = max <v, u>`, exact.
    pub fn support_exact(&self, u: &[Scalar]) -> Scalar {
        self.vertices
            .iter()
            .map(|v| scalar::dot(v, u))
            .max()
            .unwrap_or_else(Scalar::zero)
    }
}
