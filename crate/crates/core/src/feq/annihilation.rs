//! Propagation of zeros through the two-step recurrences satisfied by the
//! odd part of a valuation on axis quadrilaterals.
//!
//! With `G(k,l)` sampled on a uniform grid `x·(k,l)`, the instances
//!
//! ```text
//! G(k, l)  = G(k−1, l+1)     − G(−1, l+1)     − G(k−1, 1)
//! G(k, −l) = G(k−1, −(l−1))  − G(−1, −(l−1))  − G(k−1, 1)
//! ```
//!
//! are taken for both step signs (`x > 0`, and `x < 0` via
//! `G'(k,l) = G(−k,−l)`) wherever all terms are sampled. Each instance with
//! zero residual is a linear equation; together with antisymmetry and the
//! vanishing on the axes and anti-diagonal they are closed under
//! "one unknown left ⇒ it is zero".

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::error::{FeqError, Result};
use super::grid::GridFunction2D;
use super::ser_scalar;
use crate::polytope::construct::make_q;
use crate::polytope::Polytope;
use crate::scalar::{int, Scalar};

type Pt = (i64, i64);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecurrenceStep {
    /// 1 for the `(k, l)` instance, 2 for the `(k, −l)` one.
    pub family: u8,
    /// Sign of the grid step used.
    pub direction: i8,
    pub k: i64,
    pub l: i64,
    #[serde(serialize_with = "ser_scalar")]
    pub residual: Scalar,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnnihilationReport {
    #[serde(serialize_with = "ser_scalar")]
    pub step: Scalar,
    pub radius: i64,
    /// Every grid value is forced to vanish by the zero-residual instances.
    pub forced_zero: bool,
    /// Points `(k, l)` with `k < l` that are not forced.
    pub unforced: Vec<Pt>,
    pub first_violation: Option<RecurrenceStep>,
    #[serde(serialize_with = "ser_scalar")]
    pub max_residual: Scalar,
    pub steps: Vec<RecurrenceStep>,
}

/// Canonical antisymmetric variable: `None` on the diagonal.
fn canonical((k, l): Pt) -> Option<(Pt, i64)> {
    match k.cmp(&l) {
        std::cmp::Ordering::Less => Some(((k, l), 1)),
        std::cmp::Ordering::Greater => Some(((l, k), -1)),
        std::cmp::Ordering::Equal => None,
    }
}

pub fn odd_grid_annihilation(g: &GridFunction2D) -> Result<AnnihilationReport> {
    let (step, n) = g.uniform_square()?;
    let at = |k: i64, l: i64| -> Scalar {
        g.get(&(&step * int(k)), &(&step * int(l)))
            .cloned()
            .expect("uniform square grid is fully sampled")
    };
    let range = -n..=n;
    for k in range.clone() {
        for l in range.clone() {
            let v = at(k, l);
            if v != -at(l, k) {
                return Err(FeqError::PreconditionViolated(format!(
                    "G is not antisymmetric at ({k}, {l})"
                )));
            }
            if (k == 0 || l == 0 || k == -l) && !v.is_zero() {
                return Err(FeqError::PreconditionViolated(format!(
                    "G({k}, {l}) = {v} but must vanish on the axes and anti-diagonal"
                )));
            }
        }
    }

    let inside = |p: Pt| p.0.abs() <= n && p.1.abs() <= n;
    let mut steps = Vec::new();
    let mut equations: Vec<[Pt; 4]> = Vec::new();
    for direction in [1i8, -1] {
        let s = i64::from(direction);
        for k in 1..=n {
            for l in 0..=n {
                let candidates = [
                    (1u8, [(k, l), (k - 1, l + 1), (-1, l + 1), (k - 1, 1)]),
                    (2u8, [(k, -l), (k - 1, -(l - 1)), (-1, -(l - 1)), (k - 1, 1)]),
                ];
                for (family, terms) in candidates {
                    if family == 2 && l == 0 {
                        continue;
                    }
                    let terms = terms.map(|(a, b)| (s * a, s * b));
                    if !terms.iter().all(|&p| inside(p)) {
                        continue;
                    }
                    let [t0, t1, t2, t3] = terms.map(|(a, b)| at(a, b));
                    let residual = t0 - (t1 - t2 - t3);
                    if residual.is_zero() {
                        equations.push(terms);
                    }
                    steps.push(RecurrenceStep {
                        family,
                        direction,
                        k,
                        l,
                        residual,
                    });
                }
            }
        }
    }

    let mut forced: BTreeSet<Pt> = BTreeSet::new();
    let mut unknowns: BTreeSet<Pt> = BTreeSet::new();
    for k in range.clone() {
        for l in range.clone() {
            if let Some((p, _)) = canonical((k, l)) {
                if k == 0 || l == 0 || k == -l {
                    forced.insert(p);
                } else {
                    unknowns.insert(p);
                }
            }
        }
    }
    let linear: Vec<BTreeMap<Pt, i64>> = equations
        .iter()
        .map(|terms| {
            let mut eq = BTreeMap::new();
            for (p, c) in terms.iter().zip([1, -1, 1, 1]) {
                if let Some((q, sign)) = canonical(*p) {
                    *eq.entry(q).or_insert(0) += c * sign;
                }
            }
            eq.retain(|_, c| *c != 0);
            eq
        })
        .collect();
    loop {
        let mut changed = false;
        for eq in &linear {
            let mut open = eq.keys().filter(|p| !forced.contains(p));
            if let (Some(&p), None) = (open.next(), open.next()) {
                forced.insert(p);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let unforced: Vec<Pt> = unknowns.into_iter().filter(|p| !forced.contains(p)).collect();
    let first_violation = steps.iter().find(|s| !s.residual.is_zero()).cloned();
    let max_residual = steps
        .iter()
        .map(|s| s.residual.abs())
        .max()
        .unwrap_or_else(Scalar::zero);
    Ok(AnnihilationReport {
        step,
        radius: n,
        forced_zero: unforced.is_empty(),
        unforced,
        first_violation,
        max_residual,
        steps,
    })
}

/// `G(k, l) = μ[−e₁, 2ᵏe₁, −e₂, 2ˡe₂]` for `|k|, |l| ≤ radius`, on the
/// integer grid.
pub fn sample_odd_grid<M>(mu: M, radius: i64) -> Result<GridFunction2D>
where
    M: Fn(&Polytope) -> Result<Scalar>,
{
    let pow2 = |e: &Scalar| -> Scalar {
        let e = e.to_integer().to_i32().expect("small exponent");
        Pow::pow(int(2), e)
    };
    let one = int(1);
    let axis: Vec<Scalar> = (-radius..=radius).map(int).collect();
    GridFunction2D::try_from_fn(&axis, false, |k, l| {
        let p = make_q(2, &[one.clone(), one.clone()], &[pow2(k), pow2(l)])?;
        mu(&p)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feq::grid::additive_grid;
    use crate::feq::odd_part;
    use crate::valuation::ValuationSpec;

    #[test]
    fn zero_function_is_forced() {
        let g = GridFunction2D::from_fn(&additive_grid(), true, |_, _| int(0)).unwrap();
        let r = odd_grid_annihilation(&g).unwrap();
        assert!(r.forced_zero, "unforced: {:?}", r.unforced);
        assert!(r.first_violation.is_none());
        assert!(!r.steps.is_empty());
    }

    #[test]
    fn odd_part_of_a_composite_annihilates() {
        let spec = ValuationSpec::composite(int(1), int(2), int(3), None);
        let g = sample_odd_grid(odd_part(&spec, 1), 4).unwrap();
        let r = odd_grid_annihilation(&g).unwrap();
        assert!(r.forced_zero);
        assert_eq!(r.max_residual, int(0));
    }

    #[test]
    fn quartic_is_flagged() {
        let g = GridFunction2D::from_fn(&additive_grid(), true, |x, y| x * y * (x - y) * (x + y)).unwrap();
        let r = odd_grid_annihilation(&g).unwrap();
        assert!(!r.forced_zero);
        assert!(r.first_violation.is_some());
        assert!(r.max_residual > int(0));
    }

    #[test]
    fn preconditions() {
        let sym = GridFunction2D::from_fn(&additive_grid(), false, |x, y| x * y).unwrap();
        assert!(matches!(odd_grid_annihilation(&sym), Err(FeqError::PreconditionViolated(_))));
        let axis = GridFunction2D::from_fn(&additive_grid(), true, |x, y| x - y).unwrap();
        assert!(matches!(odd_grid_annihilation(&axis), Err(FeqError::PreconditionViolated(_))));
    }
}
