use num_traits::{One, Zero};

use super::error::{GeometryError, Result};
use crate::scalar::{self, Matrix, Point, Scalar};

/// An invertible linear map of R^n with exact entries.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    matrix: Matrix,
    inverse: Matrix,
    det: Scalar,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(GeometryError::InvalidParameter("empty matrix".into()));
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(GeometryError::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        let det = scalar::det(&matrix);
        if det.is_zero() {
            return Err(GeometryError::SingularMatrix);
        }
        let inverse = scalar::inverse(&matrix).ok_or(GeometryError::SingularMatrix)?;
        Ok(Self {
            matrix,
            inverse,
            det,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| scalar::int(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::new(scalar::identity(n)).expect("identity is invertible")
    }

    pub fn diagonal(entries: &[Scalar]) -> Result<Self> {
        let n = entries.len();
        Self::new(
            (0..n)
                .map(|i| {
                    let mut row = scalar::zeros(n);
                    row[i] = entries[i].clone();
                    row
                })
                .collect(),
        )
    }

    /// The coordinate reflection `e_k -> -e_k` (0-based `k`).
    pub fn reflection(n: usize, k: usize) -> Self {
        let mut m = scalar::identity(n);
        m[k][k] = -Scalar::one();
        Self::new(m).expect("reflection is invertible")
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inverse
    }

    pub fn det(&self) -> &Scalar {
        &self.det
    }

    /// Member of SL(n).
    pub fn is_unimodular(&self) -> bool {
        self.det.is_one()
    }

    pub fn apply(&self, x: &[Scalar]) -> Point {
        scalar::mat_vec(&self.matrix, x)
    }

    /// `A^{-t} x`, the action on facet normals and on polar points.
    pub fn apply_inverse_transpose(&self, x: &[Scalar]) -> Point {
        (0..self.dim())
            .map(|j| {
                self.inverse
                    .iter()
                    .zip(x)
                    .fold(Scalar::zero(), |acc, (row, xi)| acc + &row[j] * xi)
            })
            .collect()
    }

    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(scalar::mat_mul(&self.matrix, &other.matrix))
            .expect("product of invertible maps is invertible")
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.matrix.iter().map(|r| scalar::to_f64_vec(r)).collect()
    }
}
