//! Exact rational scalars and small dense linear algebra over them.
//!
//! Everything in the polytope kernel and the functional-equation lab runs on
//! [`Scalar`], an arbitrary-precision reduced fraction. Matrices are plain
//! row-major `Vec<Vec<Scalar>>`; the dimensions involved are tiny (n <= 4 in
//! practice), so straightforward Gaussian elimination is all we need.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number. Always stored in canonical (reduced, positive
/// denominator) form.
pub type Scalar = BigRational;

/// A point or vector of exact coordinates.
pub type Point = Vec<Scalar>;

/// Row-major dense matrix of exact entries.
pub type Matrix = Vec<Vec<Scalar>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError(pub String);

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse {:?} as an exact rational", self.0)
    }
}

impl std::error::Error for ParseScalarError {}

/// A point over a common positive denominator, for sign tests in integer
/// arithmetic (no gcd reductions in the inner loops).
#[derive(Debug, Clone)]
pub struct IntPoint {
    coords: Vec<BigInt>,
    denom: BigInt,
}

impl IntPoint {
    pub fn new(x: &[Scalar]) -> Self {
        let denom = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let coords = x.iter().map(|v| v.numer() * (&denom / v.denom())).collect();
        Self { coords, denom }
    }
}

/// The affine function `x ↦ <normal, x> − offset`, scaled to integers.
#[derive(Debug, Clone)]
pub struct IntPlane {
    normal: Vec<BigInt>,
    offset: BigInt,
}

impl IntPlane {
    pub fn new(normal: &[Scalar], offset: &Scalar) -> Self {
        let mut all = normal.to_vec();
        all.push(offset.clone());
        let IntPoint { mut coords, .. } = IntPoint::new(&all);
        let offset = coords.pop().expect("offset entry");
        Self {
            normal: coords,
            offset,
        }
    }

    /// Sign of `<normal, x> − offset`.
    pub fn side(&self, x: &IntPoint) -> Ordering {
        let lhs = self
            .normal
            .iter()
            .zip(&x.coords)
            .fold(BigInt::zero(), |acc, (a, b)| acc + a * b);
        lhs.cmp(&(&self.offset * &x.denom))
    }
}

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"`, `"p"`, or a finite decimal such as `"-1.25"` / `"3e-2"`
/// into an exact rational. Decimals are converted exactly (`"0.1"` is 1/10).
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseScalarError> {
    let s = text.trim();
    let err = || ParseScalarError(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Scalar::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| err())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, fraction) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && fraction.is_empty() {
        return Err(err());
    }
    if !whole.chars().chain(fraction.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let joined = format!("{whole}{fraction}");
    let numer: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().map_err(|_| err())?
    };
    let scale = exponent - fraction.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Scalar::from_integer(numer);
    if scale >= 0 {
        value *= Scalar::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Scalar::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Canonical `"p/q"` form, always with an explicit denominator.
pub fn format_scalar(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite float.
pub fn from_f64(x: f64) -> Option<Scalar> {
    Scalar::from_float(x)
}

/// Closest fraction with denominator `2^bits` (ties away from zero).
pub fn dyadic_approx(x: f64, bits: u32) -> Scalar {
    let scale = 2f64.powi(bits as i32);
    let numer = (x * scale).round();
    Scalar::new(
        BigInt::from(numer as i128),
        num_traits::pow(BigInt::from(2), bits as usize),
    )
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Scalar], t: &Scalar) -> Point {
    a.iter().map(|x| x * t).collect()
}

pub fn zeros(n: usize) -> Point {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, k: usize) -> Point {
    let mut e = zeros(n);
    e[k] = Scalar::one();
    e
}

pub fn to_f64_vec(p: &[Scalar]) -> Vec<f64> {
    p.iter().map(to_f64).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|k| unit(n, k)).collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_vec(m: &Matrix, v: &[Scalar]) -> Point {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let bt = transpose(b);
    a.iter()
        .map(|row| bt.iter().map(|col| dot(row, col)).collect())
        .collect()
}

/// Row-reduces `m` in place and returns the pivot columns.
fn row_reduce(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let delta = &factor * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Point]) -> usize {
    let mut m: Matrix = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Dimension of the affine hull of `points` (-1 for the empty set is
/// reported as `None`).
pub fn affine_dim(points: &[&Point]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Point> = rest.iter().map(|p| sub(p, first)).collect();
    Some(rank(&diffs))
}

pub fn det(m: &Matrix) -> Scalar {
    let n = m.len();
    let mut a = m.clone();
    let mut result = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            a.swap(p, c);
            result = -result;
        }
        let pivot = a[c][c].clone();
        result *= &pivot;
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = &a[i][c] / &pivot;
            for j in c..n {
                let delta = &factor * &a[c][j];
                a[i][j] -= delta;
            }
        }
    }
    result
}

/// Solves the square system `m x = rhs`; `None` when `m` is singular.
pub fn solve(m: &Matrix, rhs: &[Scalar]) -> Option<Point> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit(n, i));
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// A nonzero vector orthogonal to every row, provided the rows have rank
/// exactly `cols - 1`.
pub fn null_vector(rows: &[Point], cols: usize) -> Option<Point> {
    let mut m: Matrix = rows.to_vec();
    let pivots = row_reduce(&mut m);
    if pivots.len() + 1 != cols {
        return None;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = zeros(cols);
    v[free] = Scalar::one();
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = -m[r][free].clone();
    }
    Some(v)
}

/// Scales `v` by a positive factor so that its first nonzero entry has
/// absolute value one. Used to key hyperplanes exactly.
pub fn normalize_direction(v: &[Scalar]) -> Point {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let s = lead.abs().recip();
            scale(v, &s)
        }
        None => v.to_vec(),
    }
}

pub fn factorial(n: usize) -> Scalar {
    (1..=n as i64).fold(Scalar::one(), |acc, k| acc * int(k))
}
