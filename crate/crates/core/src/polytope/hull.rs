//! Exact incremental (beneath-beyond) convex hull in arbitrary dimension.
//!
//! Points are inserted in lexicographic order. The boundary is kept as a
//! simplicial complex; a point is "beyond" a simplex only when it lies
//! strictly on the outer side, so coplanar points never create sliver
//! facets. Once all points are in, coplanar simplices are merged into true
//! facets and the vertex set is reduced to extreme points (points whose
//! tight facet normals have full rank).

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};

use super::error::{GeometryError, Result};
use std::cmp::Ordering;

use crate::scalar::{self, IntPlane, IntPoint, Point, Scalar};

/// A facet of a general hull: `<normal, x> <= offset`, together with the
/// indices of the hull vertices lying on it.
#[derive(Debug, Clone)]
pub(crate) struct RawFacet {
    pub normal: Point,
    pub offset: Scalar,
    pub vertices: Vec<usize>,
}

/// Hull of an arbitrary full-dimensional point set (origin not required).
#[derive(Debug, Clone)]
pub(crate) struct RawHull {
    pub dim: usize,
    /// Extreme points, sorted lexicographically.
    pub vertices: Vec<Point>,
    /// Facets, sorted by normalized normal.
    pub facets: Vec<RawFacet>,
}

struct Simplex {
    verts: Vec<usize>,
    normal: Point,
    offset: Scalar,
    plane: IntPlane,
    alive: bool,
}

fn oriented_plane(points: &[Point], verts: &[usize], interior: &[Scalar]) -> (Point, Scalar) {
    let base = &points[verts[0]];
    let diffs: Vec<Point> = verts[1..].iter().map(|&i| scalar::sub(&points[i], base)).collect();
    let normal = scalar::null_vector(&diffs, base.len()).expect("facet simplex is affinely independent");
    let offset = scalar::dot(&normal, base);
    if scalar::dot(&normal, interior) > offset {
        (normal.iter().map(|x| -x).collect(), -offset)
    } else {
        (normal, offset)
    }
}

/// Computes the hull of `input`. Fails with `DegenerateInput` when the
/// points do not span the ambient space.
pub(crate) fn raw_hull(input: &[Point]) -> Result<RawHull> {
    let dim = input.first().map(Vec::len).ok_or(GeometryError::DegenerateInput)?;
    if dim == 0 {
        return Err(GeometryError::DegenerateInput);
    }
    if let Some(bad) = input.iter().find(|p| p.len() != dim) {
        return Err(GeometryError::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    let mut points: Vec<Point> = input.to_vec();
    points.sort();
    points.dedup();

    // Greedy initial simplex in lexicographic order.
    let mut simplex_idx = vec![0usize];
    let mut diffs: Vec<Point> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        if simplex_idx.len() == dim + 1 {
            break;
        }
        let d = scalar::sub(p, &points[0]);
        diffs.push(d);
        if scalar::rank(&diffs) == diffs.len() {
            simplex_idx.push(i);
        } else {
            diffs.pop();
        }
    }
    if simplex_idx.len() != dim + 1 {
        return Err(GeometryError::DegenerateInput);
    }

    let inv = Scalar::new(One::one(), ((dim + 1) as i64).into());
    let interior: Point = (0..dim)
        .map(|k| simplex_idx.iter().fold(Scalar::zero(), |acc, &i| acc + &points[i][k]) * &inv)
        .collect();

    let mut faces: Vec<Simplex> = Vec::new();
    for skip in 0..=dim {
        let verts: Vec<usize> = simplex_idx
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != skip)
            .map(|(_, &i)| i)
            .collect();
        let (normal, offset) = oriented_plane(&points, &verts, &interior);
        faces.push(Simplex {
            verts,
            plane: IntPlane::new(&normal, &offset),
            normal,
            offset,
            alive: true,
        });
    }

    let int_points: Vec<IntPoint> = points.iter().map(|p| IntPoint::new(p)).collect();
    for p in 0..points.len() {
        if simplex_idx.contains(&p) {
            continue;
        }
        let visible: Vec<usize> = faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.alive && f.plane.side(&int_points[p]) == Ordering::Greater)
            .map(|(i, _)| i)
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for &fi in &visible {
            let verts = &faces[fi].verts;
            for skip in 0..verts.len() {
                let mut ridge: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &v)| v)
                    .collect();
                ridge.sort_unstable();
                *ridges.entry(ridge).or_insert(0) += 1;
            }
            faces[fi].alive = false;
        }
        let mut horizon: Vec<Vec<usize>> = ridges
            .into_iter()
            .filter(|(_, count)| *count == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort();
        for mut verts in horizon {
            verts.push(p);
            verts.sort_unstable();
            let (normal, offset) = oriented_plane(&points, &verts, &interior);
            faces.push(Simplex {
                verts,
                plane: IntPlane::new(&normal, &offset),
                normal,
                offset,
                alive: true,
            });
        }
    }

    // Merge coplanar simplices into facets keyed by a normalized plane.
    let mut planes: BTreeMap<(Point, Scalar), ()> = BTreeMap::new();
    for f in faces.iter().filter(|f| f.alive) {
        let lead = f
            .normal
            .iter()
            .find(|x| !x.is_zero())
            .expect("nonzero normal")
            .abs();
        let normal = scalar::normalize_direction(&f.normal);
        let offset = &f.offset / lead;
        planes.insert((normal, offset), ());
    }
    let planes: Vec<(Point, Scalar)> = planes.into_keys().collect();

    // Tight planes per input point; a point is extreme iff their normals
    // have full rank.
    let int_planes: Vec<IntPlane> = planes.iter().map(|(n, o)| IntPlane::new(n, o)).collect();
    let tight: Vec<Vec<usize>> = int_points
        .iter()
        .map(|pt| {
            int_planes
                .iter()
                .enumerate()
                .filter(|(_, h)| h.side(pt) == Ordering::Equal)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let mut vertices = Vec::new();
    let mut facet_vertices: Vec<Vec<usize>> = vec![Vec::new(); planes.len()];
    for (pt, on) in points.iter().zip(&tight) {
        if on.len() < dim {
            continue;
        }
        let normals: Vec<Point> = on.iter().map(|&i| planes[i].0.clone()).collect();
        if scalar::rank(&normals) == dim {
            let idx = vertices.len();
            vertices.push(pt.clone());
            for &i in on {
                facet_vertices[i].push(idx);
            }
        }
    }
    let facets = planes
        .into_iter()
        .zip(facet_vertices)
        .map(|((normal, offset), vertices)| RawFacet {
            normal,
            offset,
            vertices,
        })
        .collect();
    Ok(RawHull {
        dim,
        vertices,
        facets,
    })
}

/// Triangulates a face (given by its sorted vertex indices and dimension)
/// by the lexicographic fan: cone the smallest vertex over every subface
/// that avoids it, recursively. Subfaces are found as intersections with
/// facets of the enclosing polytope.
pub(crate) fn lex_fan_face(
    points: &[Point],
    incidence: &[Vec<usize>],
    face: &[usize],
    k: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if k == 0 {
        out.push(vec![face[0]]);
        return;
    }
    let apex = face[0];
    let mut subfaces: Vec<Vec<usize>> = Vec::new();
    for facet in incidence {
        let common: Vec<usize> = face.iter().copied().filter(|v| facet.contains(v)).collect();
        if common.len() < k || common.len() == face.len() || common.contains(&apex) {
            continue;
        }
        let pts: Vec<&Point> = common.iter().map(|&i| &points[i]).collect();
        if scalar::affine_dim(&pts) == Some(k - 1) && !subfaces.contains(&common) {
            subfaces.push(common);
        }
    }
    for sub in subfaces {
        let mut inner = Vec::new();
        lex_fan_face(points, incidence, &sub, k - 1, &mut inner);
        for mut s in inner {
            s.insert(0, apex);
            out.push(s);
        }
    }
}

/// Boundary triangulation: one list of `dim` vertex indices per
/// (dim-1)-simplex, facet by facet.
pub(crate) fn boundary_simplices(
    points: &[Point],
    incidence: &[Vec<usize>],
    dim: usize,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for facet in incidence {
        lex_fan_face(points, incidence, facet, dim - 1, &mut out);
    }
    out
}

/// Volume of the cone from `apex` over the triangulated boundary.
pub(crate) fn fan_volume(points: &[Point], simplices: &[Vec<usize>], apex: &[Scalar]) -> Scalar {
    let dim = apex.len();
    let mut total = Scalar::zero();
    for s in simplices {
        let m: Vec<Point> = s.iter().map(|&i| scalar::sub(&points[i], apex)).collect();
        total += scalar::det(&m).abs();
    }
    total / scalar::factorial(dim)
}

impl RawHull {
    pub fn volume(&self) -> Scalar {
        let incidence: Vec<Vec<usize>> = self.facets.iter().map(|f| f.vertices.clone()).collect();
        let simplices = boundary_simplices(&self.vertices, &incidence, self.dim);
        let n = Scalar::from_integer((self.vertices.len() as i64).into());
        let apex: Point = (0..self.dim)
            .map(|k| self.vertices.iter().fold(Scalar::zero(), |acc, v| acc + &v[k]) / &n)
            .collect();
        fan_volume(&self.vertices, &simplices, &apex)
    }
}
