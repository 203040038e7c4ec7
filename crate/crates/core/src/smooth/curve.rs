//! Closed convex curves in the plane built from circular arcs and segments.

use std::f64::consts::{PI, TAU};

use super::error::{BodyError, Result};
use super::quadrature::{integrate, Integral, QuadratureOptions};

const JOINT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Piece {
    /// Counterclockwise arc `center + radius·(cos θ, sin θ)`, θ from `from` to `to`.
    Arc {
        center: [f64; 2],
        radius: f64,
        from: f64,
        to: f64,
    },
    Segment { from: [f64; 2], to: [f64; 2] },
}

fn e(theta: f64) -> [f64; 2] {
    [theta.cos(), theta.sin()]
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn norm(a: [f64; 2]) -> f64 {
    a[0].hypot(a[1])
}

impl Piece {
    /// Point at local parameter `t ∈ [0, 1]`.
    pub fn point(&self, t: f64) -> [f64; 2] {
        match *self {
            Piece::Arc {
                center,
                radius,
                from,
                to,
            } => {
                let u = e(from + t * (to - from));
                [center[0] + radius * u[0], center[1] + radius * u[1]]
            }
            Piece::Segment { from, to } => [
                from[0] + t * (to[0] - from[0]),
                from[1] + t * (to[1] - from[1]),
            ],
        }
    }

    /// Outer unit normal at local parameter `t`.
    pub fn normal(&self, t: f64) -> [f64; 2] {
        match *self {
            Piece::Arc { from, to, .. } => e(from + t * (to - from)),
            Piece::Segment { from, to } => {
                let d = [to[0] - from[0], to[1] - from[1]];
                let l = norm(d);
                [d[1] / l, -d[0] / l]
            }
        }
    }

    fn tangent(&self, t: f64) -> [f64; 2] {
        let u = self.normal(t);
        [-u[1], u[0]]
    }

    /// Curvature (constant on each piece).
    pub fn curvature(&self) -> f64 {
        match *self {
            Piece::Arc { radius, .. } => 1.0 / radius,
            Piece::Segment { .. } => 0.0,
        }
    }

    /// Length element `ds/dt`.
    pub fn speed(&self) -> f64 {
        match *self {
            Piece::Arc {
                radius, from, to, ..
            } => radius * (to - from),
            Piece::Segment { from, to } => norm([to[0] - from[0], to[1] - from[1]]),
        }
    }

    fn turning(&self) -> f64 {
        match *self {
            Piece::Arc { from, to, .. } => to - from,
            Piece::Segment { .. } => 0.0,
        }
    }

    /// `½ ∫ x × dx` along the piece.
    fn signed_area(&self) -> f64 {
        match *self {
            Piece::Arc {
                center,
                radius,
                from,
                to,
            } => {
                let lin = center[0] * (to.sin() - from.sin()) + center[1] * (to.cos() - from.cos());
                0.5 * (radius * lin + radius * radius * (to - from))
            }
            Piece::Segment { from, to } => 0.5 * cross(from, to),
        }
    }

    /// Smallest value of `⟨x, u(x)⟩` along the piece.
    fn min_cone_density(&self) -> f64 {
        match *self {
            Piece::Arc {
                center,
                radius,
                from,
                to,
            } => {
                let mut m = dot(center, e(from)).min(dot(center, e(to)));
                if norm(center) > 0.0 {
                    let worst = (-center[1]).atan2(-center[0]);
                    if (worst - from).rem_euclid(TAU) <= to - from {
                        m = m.min(-norm(center));
                    }
                }
                m + radius
            }
            Piece::Segment { from, .. } => dot(from, self.normal(0.0)),
        }
    }

    fn support(&self, u: [f64; 2]) -> f64 {
        let mut h = dot(self.point(0.0), u).max(dot(self.point(1.0), u));
        if let Piece::Arc {
            center,
            radius,
            from,
            to,
        } = *self
        {
            let l = norm(u);
            let psi = u[1].atan2(u[0]);
            if l > 0.0 && (psi - from).rem_euclid(TAU) <= to - from {
                h = h.max(dot(center, u) + radius * l);
            }
        }
        h
    }

    fn map_points(&self, f: impl Fn([f64; 2]) -> [f64; 2], scale: f64, angle: impl Fn(f64) -> f64, flip: bool) -> Piece {
        match *self {
            Piece::Arc {
                center,
                radius,
                from,
                to,
            } => {
                let (a, b) = if flip { (angle(to), angle(from)) } else { (angle(from), angle(to)) };
                Piece::Arc {
                    center: f(center),
                    radius: radius * scale,
                    from: a,
                    to: b,
                }
            }
            Piece::Segment { from, to } => {
                let (a, b) = if flip { (to, from) } else { (from, to) };
                Piece::Segment {
                    from: f(a),
                    to: f(b),
                }
            }
        }
    }
}

/// A closed, counterclockwise, convex curve whose interior contains the
/// origin. Joints where the tangent does not turn are smooth; the others
/// are corners.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseCurve {
    pieces: Vec<Piece>,
    /// Turning angle at the joint after piece `i` (into piece `i + 1`).
    joints: Vec<f64>,
}

/// Where a normal angle ψ lands: an arc, a segment face, or a corner.
#[derive(Debug, Clone, Copy)]
enum NormalCell {
    Arc { center: [f64; 2], radius: f64 },
    Corner([f64; 2]),
}

impl PiecewiseCurve {
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(BodyError::InvalidBody("curve has no pieces".into()));
        }
        let scale = pieces
            .iter()
            .map(|p| norm(p.point(0.0)).max(norm(p.point(1.0))))
            .fold(1.0, f64::max);
        for p in &pieces {
            let finite = match *p {
                Piece::Arc {
                    center,
                    radius,
                    from,
                    to,
                } => center.iter().chain([radius, from, to].iter()).all(|x| x.is_finite()),
                Piece::Segment { from, to } => from.iter().chain(to.iter()).all(|x| x.is_finite()),
            };
            if !finite {
                return Err(BodyError::InvalidBody("non-finite piece data".into()));
            }
            match *p {
                Piece::Arc {
                    radius, from, to, ..
                } => {
                    if radius <= 0.0 {
                        return Err(BodyError::InvalidBody("arc radius must be positive".into()));
                    }
                    if !(to > from && to - from <= TAU + JOINT_TOL) {
                        return Err(BodyError::InvalidBody(
                            "arcs run counterclockwise with 0 < to - from <= 2π".into(),
                        ));
                    }
                }
                Piece::Segment { .. } => {
                    if p.speed() <= JOINT_TOL * scale {
                        return Err(BodyError::InvalidBody("degenerate segment".into()));
                    }
                }
            }
        }
        let m = pieces.len();
        let mut joints = Vec::with_capacity(m);
        for i in 0..m {
            let a = &pieces[i];
            let b = &pieces[(i + 1) % m];
            let (p, q) = (a.point(1.0), b.point(0.0));
            if norm([p[0] - q[0], p[1] - q[1]]) > JOINT_TOL * scale {
                return Err(BodyError::InvalidBody(format!(
                    "piece {} does not end where piece {} starts",
                    i,
                    (i + 1) % m
                )));
            }
            let (t0, t1) = (a.tangent(1.0), b.tangent(0.0));
            let turn = cross(t0, t1).atan2(dot(t0, t1));
            if turn < -JOINT_TOL {
                return Err(BodyError::InvalidBody(format!("negative turning at joint {}", i)));
            }
            joints.push(turn.max(0.0));
        }
        let total: f64 = pieces.iter().map(Piece::turning).sum::<f64>() + joints.iter().sum::<f64>();
        if (total - TAU).abs() > 1e-7 {
            return Err(BodyError::InvalidBody(format!(
                "total turning is {} rather than 2π",
                total
            )));
        }
        if pieces.iter().any(|p| p.min_cone_density() <= 0.0) {
            return Err(BodyError::InvalidBody("origin is not interior".into()));
        }
        Ok(Self { pieces, joints })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Whether the joint after piece `i` is a corner.
    pub fn is_corner(&self, i: usize) -> bool {
        self.joints[i % self.joints.len()] > JOINT_TOL
    }

    /// Circle of radius `r` about the origin as a single arc.
    pub fn disc(r: f64) -> Result<Self> {
        Self::new(vec![Piece::Arc {
            center: [0.0, 0.0],
            radius: r,
            from: 0.0,
            to: TAU,
        }])
    }

    /// `B² ∩ {x₁ ≤ a}` for `0 < a < 1`.
    pub fn disc_cap_left(a: f64) -> Result<Self> {
        let t = a.acos();
        let s = t.sin();
        Self::new(vec![
            Piece::Arc {
                center: [0.0, 0.0],
                radius: 1.0,
                from: t,
                to: TAU - t,
            },
            Piece::Segment {
                from: [a, -s],
                to: [a, s],
            },
        ])
    }

    /// `B² ∩ {x₁ ≥ -a}` for `0 < a < 1`.
    pub fn disc_cap_right(a: f64) -> Result<Self> {
        let t = a.acos();
        let s = t.sin();
        Self::new(vec![
            Piece::Segment {
                from: [-a, s],
                to: [-a, -s],
            },
            Piece::Arc {
                center: [0.0, 0.0],
                radius: 1.0,
                from: PI + t,
                to: 3.0 * PI - t,
            },
        ])
    }

    /// `B² ∩ {|x₁| ≤ a}` for `0 < a < 1`.
    pub fn disc_lens(a: f64) -> Result<Self> {
        let t = a.acos();
        let s = t.sin();
        Self::new(vec![
            Piece::Segment {
                from: [a, -s],
                to: [a, s],
            },
            Piece::Arc {
                center: [0.0, 0.0],
                radius: 1.0,
                from: t,
                to: PI - t,
            },
            Piece::Segment {
                from: [-a, s],
                to: [-a, -s],
            },
            Piece::Arc {
                center: [0.0, 0.0],
                radius: 1.0,
                from: PI + t,
                to: TAU - t,
            },
        ])
    }

    pub fn area(&self) -> f64 {
        self.pieces.iter().map(Piece::signed_area).sum()
    }

    pub fn support(&self, u: [f64; 2]) -> f64 {
        self.pieces
            .iter()
            .map(|p| p.support(u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// The circle of normal directions cut into arcs and corner cones, as
    /// `(start angle, span, cell)`; spans sum to 2π.
    fn normal_cells(&self) -> Vec<(f64, f64, NormalCell)> {
        let first = self.pieces[0].normal(0.0);
        let mut psi = first[1].atan2(first[0]);
        let mut cells = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            if let Piece::Arc {
                center,
                radius,
                from,
                to,
            } = *p
            {
                cells.push((psi, to - from, NormalCell::Arc { center, radius }));
                psi += to - from;
            }
            if self.joints[i] > 0.0 {
                cells.push((psi, self.joints[i], NormalCell::Corner(p.point(1.0))));
                psi += self.joints[i];
            }
        }
        cells
    }

    /// Area of the polar body, `½ ∫ h(ψ)⁻² dψ`.
    pub fn polar_area(&self, opts: &QuadratureOptions) -> Integral {
        let parts: Vec<Integral> = self
            .normal_cells()
            .into_iter()
            .map(|(start, span, cell)| {
                let h = move |psi: f64| match cell {
                    NormalCell::Arc { center, radius } => dot(center, e(psi)) + radius,
                    NormalCell::Corner(p) => dot(p, e(psi)),
                };
                integrate(|psi| h(psi).powi(-2), start, start + span, opts)
            })
            .collect();
        Integral::combine(&parts).scaled(0.5)
    }

    /// Image under the similarity `x ↦ m x` (`mᵀm = s²I`).
    pub fn apply_similarity(&self, m: [[f64; 2]; 2]) -> Result<Self> {
        let c0 = [m[0][0], m[1][0]];
        let c1 = [m[0][1], m[1][1]];
        let (s0, s1) = (norm(c0), norm(c1));
        let tol = 1e-12 * s0.max(s1);
        if (s0 - s1).abs() > tol || dot(c0, c1).abs() > tol * s0.max(s1) || s0 == 0.0 {
            return Err(BodyError::ParamOutOfDomain(
                "piecewise curves only support similarity maps".into(),
            ));
        }
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let rot = m[1][0].atan2(m[0][0]);
        let f = |x: [f64; 2]| [m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]];
        let pieces: Vec<Piece> = if det > 0.0 {
            self.pieces.iter().map(|p| p.map_points(f, s0, |a| a + rot, false)).collect()
        } else {
            // A reflection about the line at angle rot/2 sends θ to rot − θ
            // and reverses orientation.
            self.pieces
                .iter()
                .rev()
                .map(|p| p.map_points(f, s0, |a| rot - a, true))
                .collect()
        };
        Self::new(pieces)
    }
}
