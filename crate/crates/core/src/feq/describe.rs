//! Descriptions of planar valuations on the axis-quadrilateral families:
//! `μ[−ae₁,be₁,−ce₂,de₂] = F(ac) + F(bc) + F(ad) + F(bd)` and, off the
//! axes, the correction `k(b⁻² − a⁻²)(x+y)` with `F(r) = c₁/r + c₂ + c₃r`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::error::{FeqError, Result};
use super::grid::{multiplicative_grid, GridFunction1D};
use super::ser_scalar;
use crate::polytope::construct::{make_q, make_r2};
use crate::polytope::{GeometryError, LinearMap, Polytope};
use crate::scalar::{self, frac, int, Scalar};

fn quad(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> Result<Polytope> {
    Ok(make_q(2, &[a.clone(), c.clone()], &[b.clone(), d.clone()])?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Q2Report {
    /// `F(s) = ¼ μ[−se₁, se₁, −e₂, e₂]`.
    pub f: GridFunction1D,
    #[serde(serialize_with = "ser_scalar")]
    pub max_residual: Scalar,
    pub worst: Option<[String; 4]>,
    pub cases: usize,
}

/// Extracts `F` on `s_grid` and checks the four-term description on
/// `(a,b,c,d) ∈ abcd_grid⁴`. Evenness under both coordinate reflections
/// is checked first on the same quadruples.
pub fn extract_f_on_q2<M>(mu: M, s_grid: &[Scalar], abcd_grid: &[Scalar]) -> Result<Q2Report>
where
    M: Fn(&Polytope) -> Result<Scalar>,
{
    let quads: Vec<[Scalar; 4]> = abcd_grid
        .iter()
        .flat_map(|a| {
            abcd_grid.iter().flat_map(move |b| {
                abcd_grid.iter().flat_map(move |c| {
                    abcd_grid.iter().map(move |d| [a.clone(), b.clone(), c.clone(), d.clone()])
                })
            })
        })
        .collect();
    let reflections = [LinearMap::reflection(2, 0), LinearMap::reflection(2, 1)];
    let mut values = Vec::with_capacity(quads.len());
    for q in &quads {
        let p = quad(&q[0], &q[1], &q[2], &q[3])?;
        let v = mu(&p)?;
        for (axis, r) in reflections.iter().enumerate() {
            let w = mu(&p.apply_linear(r)?)?;
            if w != v {
                return Err(FeqError::NotEven(format!(
                    "reflection in axis {} changes the value at (a,b,c,d) = ({}, {}, {}, {})",
                    axis + 1,
                    q[0],
                    q[1],
                    q[2],
                    q[3]
                )));
            }
        }
        values.push(v);
    }
    let one = int(1);
    let quarter = frac(1, 4);
    let f_at = |s: &Scalar| -> Result<Scalar> { Ok(&quarter * mu(&quad(s, s, &one, &one)?)?) };
    let f = GridFunction1D::try_from_fn(s_grid.to_vec(), f_at)?;
    let lookup = |s: Scalar| -> Result<Scalar> {
        match f.get(&s) {
            Some(v) => Ok(v.clone()),
            None => f_at(&s),
        }
    };
    let mut max_residual = Scalar::zero();
    let mut worst = None;
    for (q, v) in quads.iter().zip(&values) {
        let [a, b, c, d] = q;
        let sum = lookup(a * c)? + lookup(b * c)? + lookup(a * d)? + lookup(b * d)?;
        let r = (v - sum).abs();
        if r > max_residual {
            max_residual = r;
            worst = Some(q.clone().map(|x| x.to_string()));
        }
    }
    Ok(Q2Report {
        f,
        max_residual,
        worst,
        cases: quads.len(),
    })
}

#[derive(Debug, Clone)]
pub struct R2Options {
    /// `(a, b, c, d)` for the off-axis fit; needs `a ≠ b`.
    pub base: [Scalar; 4],
    /// Values of `x` and `y`.
    pub shifts: Vec<Scalar>,
    /// Where `F` is tabulated and the three-term form is checked.
    pub r_grid: Vec<Scalar>,
    /// The three points at which `(c₁, c₂, c₃)` are solved for.
    pub fit_points: [Scalar; 3],
}

impl Default for R2Options {
    fn default() -> Self {
        Self {
            base: [int(1), int(2), int(1), int(1)],
            shifts: vec![frac(-1, 4), int(0), frac(1, 4)],
            r_grid: multiplicative_grid(),
            fit_points: [frac(1, 2), int(1), int(2)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DescriptorFit {
    pub f: GridFunction1D,
    #[serde(serialize_with = "ser_scalar")]
    pub k: Scalar,
    #[serde(serialize_with = "ser_scalar")]
    pub c1: Scalar,
    #[serde(serialize_with = "ser_scalar")]
    pub c2: Scalar,
    #[serde(serialize_with = "ser_scalar")]
    pub c3: Scalar,
    /// Largest deviation from `μ(x,y) − μ(0,0) = k(b⁻² − a⁻²)(x+y)`.
    #[serde(serialize_with = "ser_scalar")]
    pub k_residual: Scalar,
    /// Largest deviation of `F` from `c₁/r + c₂ + c₃r` on the r-grid.
    #[serde(serialize_with = "ser_scalar")]
    pub f_residual: Scalar,
    /// Whether `c₁ = −2k` holds exactly.
    pub c1_is_minus_2k: bool,
}

pub fn fit_r2_descriptor<M>(mu: M, opts: &R2Options) -> Result<DescriptorFit>
where
    M: Fn(&Polytope) -> Result<Scalar>,
{
    let [a, b, c, d] = &opts.base;
    let gap = b.recip() * b.recip() - a.recip() * a.recip();
    if gap.is_zero() {
        return Err(FeqError::FitDegenerate("need a ≠ b for the off-axis fit".into()));
    }
    let zero = Scalar::zero();
    let base = mu(&make_r2(a, b, c, d, &zero, &zero)?)?;
    let mut samples = Vec::new();
    for x in &opts.shifts {
        for y in &opts.shifts {
            match make_r2(a, b, c, d, x, y) {
                Ok(p) => samples.push((x + y, mu(&p)? - &base)),
                Err(GeometryError::ClassViolation(_)) => continue,
                Err(e) => return Err(e.into()),
            }
        }
    }
    let (s0, v0) = samples
        .iter()
        .find(|(s, _)| !s.is_zero())
        .ok_or_else(|| FeqError::FitDegenerate("no admissible shift with x + y ≠ 0".into()))?;
    let k = v0 / (&gap * s0);
    let k_residual = samples
        .iter()
        .map(|(s, v)| (v - &k * &gap * s).abs())
        .max()
        .unwrap_or_else(Scalar::zero);

    let one = int(1);
    let quarter = frac(1, 4);
    let f_at = |r: &Scalar| -> Result<Scalar> {
        Ok(&quarter * mu(&make_r2(r, r, &one, &one, &zero, &zero)?)?)
    };
    let rows: Vec<Vec<Scalar>> = opts
        .fit_points
        .iter()
        .map(|r| vec![r.recip(), int(1), r.clone()])
        .collect();
    let rhs = opts.fit_points.iter().map(f_at).collect::<Result<Vec<_>>>()?;
    let coeffs = scalar::solve(&rows, &rhs)
        .ok_or_else(|| FeqError::FitDegenerate("fit points give a singular system".into()))?;
    let f = GridFunction1D::try_from_fn(opts.r_grid.clone(), f_at)?;
    let f_residual = f
        .iter()
        .map(|(r, v)| (v - (&coeffs[0] / r + &coeffs[1] + &coeffs[2] * r)).abs())
        .max()
        .unwrap_or_else(Scalar::zero);
    Ok(DescriptorFit {
        f,
        c1_is_minus_2k: coeffs[0] == int(-2) * &k,
        k,
        c1: coeffs[0].clone(),
        c2: coeffs[1].clone(),
        c3: coeffs[2].clone(),
        k_residual,
        f_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feq::exact_oracle;
    use crate::valuation::ValuationSpec;

    fn small() -> Vec<Scalar> {
        vec![frac(1, 2), int(1), int(2)]
    }

    #[test]
    fn q2_base_cases() {
        let s = multiplicative_grid();
        let cases: [(ValuationSpec, fn(&Scalar) -> Scalar); 3] = [
            (ValuationSpec::volume(), |s| s / int(2)),
            (ValuationSpec::polar_volume(), |s| s.recip()),
            (ValuationSpec::euler(), |_| frac(1, 4)),
        ];
        for (spec, expected) in cases {
            let r = extract_f_on_q2(exact_oracle(&spec), &s, &small()).unwrap();
            assert_eq!(r.max_residual, int(0));
            for (x, v) in r.f.iter() {
                assert_eq!(v, &expected(x));
            }
        }
    }

    #[test]
    fn q2_rejects_odd_oracles() {
        let skew = |p: &Polytope| Ok(p.moment_vector_of_polar()[0].clone());
        let r = extract_f_on_q2(skew, &multiplicative_grid(), &small());
        assert!(matches!(r, Err(FeqError::NotEven(_))));
    }

    #[test]
    fn r2_base_cases() {
        let opts = R2Options::default();
        let v2 = fit_r2_descriptor(exact_oracle(&ValuationSpec::volume()), &opts).unwrap();
        assert_eq!((v2.k.clone(), v2.c1.clone(), v2.c2.clone(), v2.c3.clone()), (int(0), int(0), int(0), frac(1, 2)));
        let polar = fit_r2_descriptor(exact_oracle(&ValuationSpec::polar_volume()), &opts).unwrap();
        assert_eq!((polar.k.clone(), polar.c1.clone(), polar.c2.clone(), polar.c3.clone()), (frac(-1, 2), int(1), int(0), int(0)));
        assert!(polar.c1_is_minus_2k);
        let v0 = fit_r2_descriptor(exact_oracle(&ValuationSpec::euler()), &opts).unwrap();
        assert_eq!((v0.k.clone(), v0.c2.clone()), (int(0), frac(1, 4)));
        for fit in [v2, polar, v0] {
            assert_eq!((fit.k_residual, fit.f_residual), (int(0), int(0)));
        }
        let sym = R2Options {
            base: [int(1), int(1), int(1), int(1)],
            ..Default::default()
        };
        assert!(matches!(
            fit_r2_descriptor(exact_oracle(&ValuationSpec::volume()), &sym),
            Err(FeqError::FitDegenerate(_))
        ));
    }
}
