//! Support functions and the sampled support-gap monitor.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::error::{GeometryError, Result};
use super::kernel::Polytope;
use crate::scalar;

/// Anything with a support function `h(u) = max_{x in K} <x, u>`.
pub trait SupportFunction {
    fn ambient_dim(&self) -> usize;
    fn support(&self, u: &[f64]) -> f64;
}

impl SupportFunction for Polytope {
    fn ambient_dim(&self) -> usize {
        self.dim()
    }

    fn support(&self, u: &[f64]) -> f64 {
        self.vertices()
            .iter()
            .map(|v| scalar::to_f64_vec(v).iter().zip(u).map(|(a, b)| a * b).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `max_u |h_K(u) - h_L(u)|` over the supplied directions. A convergence
/// monitor only: it lower-bounds the Hausdorff distance.
pub fn support_gap<K, L>(k: &K, l: &L, directions: &[Vec<f64>]) -> Result<f64>
where
    K: SupportFunction + ?Sized,
    L: SupportFunction + ?Sized,
{
    if directions.is_empty() {
        return Err(GeometryError::EmptyDirections);
    }
    if k.ambient_dim() != l.ambient_dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: k.ambient_dim(),
            found: l.ambient_dim(),
        });
    }
    let mut gap: f64 = 0.0;
    for u in directions {
        if u.len() != k.ambient_dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: k.ambient_dim(),
                found: u.len(),
            });
        }
        gap = gap.max((k.support(u) - l.support(u)).abs());
    }
    Ok(gap)
}

/// Deterministic, roughly uniform unit directions.
///
/// n = 1: `±1`; n = 2: equally spaced angles; n = 3: the golden-angle
/// (Fibonacci) spiral; n >= 4: normalized Gaussian samples from a fixed
/// seed.
pub fn fibonacci_directions(n: usize, count: usize) -> Vec<Vec<f64>> {
    use std::f64::consts::PI;
    match n {
        0 => Vec::new(),
        1 => vec![vec![1.0], vec![-1.0]],
        2 => (0..count)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / count as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
        3 => {
            let golden = PI * (3.0 - 5f64.sqrt());
            (0..count)
                .map(|k| {
                    let z = 1.0 - 2.0 * (k as f64 + 0.5) / count as f64;
                    let r = (1.0 - z * z).sqrt();
                    let phi = golden * k as f64;
                    vec![r * phi.cos(), r * phi.sin(), z]
                })
                .collect()
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_d1c5 + n as u64);
            (0..count)
                .map(|_| {
                    let mut v: Vec<f64> = (0..n)
                        .map(|_| {
                            // Box-Muller
                            let u1: f64 = 1.0 - rng.gen::<f64>();
                            let u2: f64 = rng.gen();
                            (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
                        })
                        .collect();
                    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
                    v.iter_mut().for_each(|x| *x /= norm);
                    v
                })
                .collect()
        }
    }
}
