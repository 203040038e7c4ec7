//! Valuation specs `c₀V₀ + c₁V_n + c₂V_n∘* + Ω_φ` and black-box oracles.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::conc::ConcFn;
use super::error::{Result, ValuationError};
use crate::polytope::Polytope;
use crate::scalar::{self, Scalar};
use crate::smooth::{cone_measure_integral, kappa_zero, unit_ball_volume, BodyModel, Integral, QuadratureOptions};

/// A valuation value: exact on rational paths, otherwise a float with the
/// quadrature convergence flag.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Scalar),
    Approx { value: f64, converged: bool },
}

impl Value {
    pub fn approx(i: Integral) -> Self {
        Value::Approx {
            value: i.value,
            converged: i.converged,
        }
    }

    pub fn float(value: f64) -> Self {
        Value::Approx {
            value,
            converged: true,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(x) => scalar::to_f64(x),
            Value::Approx { value, .. } => *value,
        }
    }

    pub fn as_exact(&self) -> Option<&Scalar> {
        match self {
            Value::Exact(x) => Some(x),
            Value::Approx { .. } => None,
        }
    }

    pub fn converged(&self) -> bool {
        match self {
            Value::Exact(_) => true,
            Value::Approx { converged, .. } => *converged,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(x) => x.is_zero(),
            Value::Approx { value, .. } => *value == 0.0,
        }
    }

    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            _ => Value::Approx {
                value: self.to_f64() + other.to_f64(),
                converged: self.converged() && other.converged(),
            },
        }
    }

    pub fn sub(&self, other: &Value) -> Value {
        self.add(&other.scale(&scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Value {
        match self {
            Value::Exact(a) => Value::Exact(a * c),
            Value::Approx { value, converged } => Value::Approx {
                value: value * scalar::to_f64(c),
                converged: *converged,
            },
        }
    }

    pub fn abs(&self) -> Value {
        match self {
            Value::Exact(a) => Value::Exact(a.abs()),
            Value::Approx { value, converged } => Value::Approx {
                value: value.abs(),
                converged: *converged,
            },
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(x) => write!(f, "{}", scalar::format_scalar(x)),
            Value::Approx { value, converged } => {
                write!(f, "{}{}", value, if *converged { "" } else { " (unconverged)" })
            }
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Exact(x) => {
                let mut st = s.serialize_struct("Value", 3)?;
                st.serialize_field("kind", "exact")?;
                st.serialize_field("value", &scalar::format_scalar(x))?;
                st.serialize_field("approx", &scalar::to_f64(x))?;
                st.end()
            }
            Value::Approx { value, converged } => {
                let mut st = s.serialize_struct("Value", 3)?;
                st.serialize_field("kind", "quadrature")?;
                st.serialize_field("value", value)?;
                st.serialize_field("converged", converged)?;
                st.end()
            }
        }
    }
}

pub type OracleFn = dyn Fn(&BodyModel) -> Result<Value> + Send + Sync;

/// A black-box valuation. The callback must be pure and reentrant.
#[derive(Clone)]
pub struct Oracle {
    name: String,
    f: Arc<OracleFn>,
}

impl Oracle {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&BodyModel) -> Result<Value> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn call(&self, body: &BodyModel) -> Result<Value> {
        (self.f)(body)
    }
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Oracle").field("name", &self.name).finish()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Composite {
    pub c0: Scalar,
    pub c1: Scalar,
    pub c2: Scalar,
    pub phi: Option<ConcFn>,
}

#[derive(Debug, Clone)]
pub enum ValuationSpec {
    Composite(Composite),
    Oracle(Oracle),
}

impl ValuationSpec {
    pub fn composite(c0: Scalar, c1: Scalar, c2: Scalar, phi: Option<ConcFn>) -> Self {
        ValuationSpec::Composite(Composite { c0, c1, c2, phi })
    }

    /// `V₀`, `V_n`, `V_n∘*`, `Ω_φ` as single-term specs.
    pub fn euler() -> Self {
        Self::composite(scalar::int(1), scalar::int(0), scalar::int(0), None)
    }

    pub fn volume() -> Self {
        Self::composite(scalar::int(0), scalar::int(1), scalar::int(0), None)
    }

    pub fn polar_volume() -> Self {
        Self::composite(scalar::int(0), scalar::int(0), scalar::int(1), None)
    }

    pub fn omega(phi: ConcFn) -> Self {
        Self::composite(scalar::int(0), scalar::int(0), scalar::int(0), Some(phi))
    }

    pub fn oracle<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&BodyModel) -> Result<Value> + Send + Sync + 'static,
    {
        ValuationSpec::Oracle(Oracle::new(name, f))
    }

    pub fn evaluate(&self, body: &BodyModel) -> Result<Value> {
        evaluate(self, body)
    }

    pub fn evaluate_polytope(&self, p: &Polytope) -> Result<Value> {
        evaluate(self, &BodyModel::Polytope(p.clone()))
    }
}

/// Evaluates a spec on a body. Composite specs are exact on polytopes
/// (where Ω_φ vanishes identically); on smooth bodies Ω_φ uses the closed
/// form for balls and ellipsoids and quadrature for planar curves.
pub fn evaluate(spec: &ValuationSpec, body: &BodyModel) -> Result<Value> {
    evaluate_with(spec, body, &QuadratureOptions::default())
}

pub fn evaluate_with(spec: &ValuationSpec, body: &BodyModel, opts: &QuadratureOptions) -> Result<Value> {
    let c = match spec {
        ValuationSpec::Oracle(o) => return o.call(body),
        ValuationSpec::Composite(c) => c,
    };
    if let BodyModel::Polytope(p) = body {
        let mut total = c.c0.clone();
        if !c.c1.is_zero() {
            total += &c.c1 * p.volume();
        }
        if !c.c2.is_zero() {
            total += &c.c2 * p.polar_volume();
        }
        return Ok(Value::Exact(total));
    }
    let mut total = Value::Exact(c.c0.clone());
    if !c.c1.is_zero() {
        total = total.add(&Value::float(body.volume()).scale(&c.c1));
    }
    if !c.c2.is_zero() {
        total = total.add(&Value::approx(body.polar_volume(opts)).scale(&c.c2));
    }
    if let Some(phi) = &c.phi {
        total = total.add(&omega_phi(body, phi, opts)?);
    }
    Ok(total)
}

/// `Ω_φ(K) = ∫_{∂K} φ(κ₀) dμ_K`. Balls and ellipsoids use
/// `n·κ_n·det A·φ((det A)⁻²)`; polytopes give exact 0.
pub fn omega_phi(body: &BodyModel, phi: &ConcFn, opts: &QuadratureOptions) -> Result<Value> {
    let n = body.dim();
    match body {
        BodyModel::Polytope(_) => Ok(Value::Exact(Scalar::zero())),
        BodyModel::Ball { dim, radius } => {
            let det = radius.powi(*dim as i32);
            Ok(Value::float(ellipsoid_closed_form(n, det, phi)))
        }
        BodyModel::Ellipsoid(e) => Ok(Value::float(ellipsoid_closed_form(n, e.det(), phi))),
        BodyModel::Piecewise2D(_) => Ok(Value::approx(omega_phi_quadrature(body, phi, opts)?)),
    }
}

pub fn ellipsoid_closed_form(n: usize, det: f64, phi: &ConcFn) -> f64 {
    n as f64 * unit_ball_volume(n) * det * phi.eval(det.powi(-2), n)
}

/// Ω_φ by boundary quadrature, for any body the cone-measure integral
/// supports (planar bodies, and ellipsoids in n = 2, 3).
pub fn omega_phi_quadrature(body: &BodyModel, phi: &ConcFn, opts: &QuadratureOptions) -> Result<Integral> {
    let n = body.dim();
    Ok(cone_measure_integral(body, |bp| phi.eval(kappa_zero(bp, n), n), opts)?)
}

/// Classical affine surface area Ω₁.
pub fn classical_asa(body: &BodyModel) -> Result<Value> {
    let phi = ConcFn::power(1.0)?;
    omega_phi(body, &phi, &QuadratureOptions::default())
}

pub(crate) fn require_exact(v: &Value) -> Result<&Scalar> {
    v.as_exact()
        .ok_or_else(|| ValuationError::Oracle("expected an exact value on a polytope".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::construct::{cube, inscribed_polygon};
    use crate::scalar::int;
    use crate::smooth::{Ellipsoid, PiecewiseCurve};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn composite_on_square() {
        let spec = ValuationSpec::composite(int(2), int(3), int(5), None);
        assert_eq!(spec.evaluate_polytope(&cube(2)).unwrap(), Value::Exact(int(24)));
    }

    #[test]
    fn omega_on_balls() {
        let phi1 = ConcFn::power(1.0).unwrap();
        for t in [0.5, 1.0, 3.0] {
            let b = BodyModel::ball(2, t).unwrap();
            let v = omega_phi(&b, &phi1, &QuadratureOptions::default()).unwrap();
            assert_relative_eq!(v.to_f64(), 2.0 * PI * t.powf(2.0 / 3.0), max_relative = 1e-14);
            let q = omega_phi_quadrature(&b, &phi1, &QuadratureOptions::default()).unwrap();
            assert_relative_eq!(q.value, v.to_f64(), max_relative = 1e-9);
        }
    }

    #[test]
    fn classical_asa_examples() {
        assert_relative_eq!(classical_asa(&BodyModel::ball(2, 1.0).unwrap()).unwrap().to_f64(), 2.0 * PI, epsilon = 1e-12);
        let e = BodyModel::Ellipsoid(Ellipsoid::diagonal(&[2.0, 0.5]).unwrap());
        assert_relative_eq!(classical_asa(&e).unwrap().to_f64(), 2.0 * PI, epsilon = 1e-12);
        let gon = BodyModel::Polytope(inscribed_polygon(12).unwrap());
        assert_eq!(classical_asa(&gon).unwrap(), Value::Exact(Scalar::zero()));
        // Ω₁ of a disc cap is its arc length
        let a: f64 = 0.5;
        let cap = BodyModel::Piecewise2D(PiecewiseCurve::disc_cap_left(a).unwrap());
        assert_relative_eq!(classical_asa(&cap).unwrap().to_f64(), 2.0 * (PI - a.acos()), max_relative = 1e-10);
    }
}
