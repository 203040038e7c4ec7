//! Sampled functions on rational grids, with CSV input.

use std::collections::BTreeMap;
use std::io::Read;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::error::{FeqError, Result};
use crate::scalar::{self, frac, int, Scalar};

/// `{j/4 : −8 ≤ j ≤ 8}`.
pub fn additive_grid() -> Vec<Scalar> {
    (-8..=8).map(|j| frac(j, 4)).collect()
}

/// `{2^i : −4 ≤ i ≤ 4}`.
pub fn multiplicative_grid() -> Vec<Scalar> {
    (-4..=4)
        .map(|i: i32| if i < 0 { frac(1, 1 << -i) } else { int(1 << i) })
        .collect()
}

/// A function sampled on a strictly increasing rational grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction1D {
    xs: Vec<Scalar>,
    values: Vec<Scalar>,
}

/// Serialized as `[["x", "value"], ...]`.
impl Serialize for GridFunction1D {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(
            self.iter()
                .map(|(x, v)| [scalar::format_scalar(x), scalar::format_scalar(v)]),
        )
    }
}

impl GridFunction1D {
    pub fn new(xs: Vec<Scalar>, values: Vec<Scalar>) -> Result<Self> {
        if xs.len() != values.len() {
            return Err(FeqError::InvalidGrid("grid and values differ in length".into()));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(FeqError::InvalidGrid("grid must increase strictly".into()));
        }
        Ok(Self { xs, values })
    }

    pub fn from_fn(xs: Vec<Scalar>, f: impl Fn(&Scalar) -> Scalar) -> Result<Self> {
        let values = xs.iter().map(f).collect();
        Self::new(xs, values)
    }

    pub fn try_from_fn(xs: Vec<Scalar>, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        let values = xs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::new(xs, values)
    }

    /// Rows `x,value`; a non-numeric first row is taken as a header.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let rows = read_rows(reader, 2)?;
        let (xs, values) = rows.into_iter().map(|r| (r[0].clone(), r[1].clone())).unzip();
        Self::new(xs, values)
    }

    pub fn xs(&self) -> &[Scalar] {
        &self.xs
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn get(&self, x: &Scalar) -> Option<&Scalar> {
        self.xs.binary_search(x).ok().map(|i| &self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Scalar, &Scalar)> {
        self.xs.iter().zip(&self.values)
    }
}

/// A partially sampled function of two variables.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction2D {
    values: BTreeMap<(Scalar, Scalar), Scalar>,
    antisymmetric: bool,
}

impl GridFunction2D {
    /// With `antisymmetric`, `G(x,y) = −G(y,x)` is enforced wherever both
    /// points are sampled (and `G(x,x) = 0`).
    pub fn new(values: BTreeMap<(Scalar, Scalar), Scalar>, antisymmetric: bool) -> Result<Self> {
        if antisymmetric {
            for ((x, y), v) in &values {
                if let Some(w) = values.get(&(y.clone(), x.clone())) {
                    if &-w.clone() != v {
                        return Err(FeqError::InvalidGrid(format!(
                            "G({}, {}) = {} but G({}, {}) = {}",
                            x, y, v, y, x, w
                        )));
                    }
                }
            }
        }
        Ok(Self {
            values,
            antisymmetric,
        })
    }

    /// Samples `g` on the square grid `xs × xs`.
    pub fn from_fn(xs: &[Scalar], antisymmetric: bool, g: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Self> {
        Self::try_from_fn(xs, antisymmetric, |x, y| Ok(g(x, y)))
    }

    pub fn try_from_fn(
        xs: &[Scalar],
        antisymmetric: bool,
        g: impl Fn(&Scalar, &Scalar) -> Result<Scalar>,
    ) -> Result<Self> {
        let mut values = BTreeMap::new();
        for x in xs {
            for y in xs {
                values.insert((x.clone(), y.clone()), g(x, y)?);
            }
        }
        Self::new(values, antisymmetric)
    }

    /// Rows `x,y,value`; a non-numeric first row is taken as a header.
    pub fn from_csv<R: Read>(reader: R, antisymmetric: bool) -> Result<Self> {
        let mut values = BTreeMap::new();
        for r in read_rows(reader, 3)? {
            if values.insert((r[0].clone(), r[1].clone()), r[2].clone()).is_some() {
                return Err(FeqError::Csv(format!("duplicate sample at ({}, {})", r[0], r[1])));
            }
        }
        Self::new(values, antisymmetric)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetric
    }

    pub fn get(&self, x: &Scalar, y: &Scalar) -> Option<&Scalar> {
        self.values.get(&(x.clone(), y.clone()))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sorted distinct abscissae.
    pub fn axis(&self) -> Vec<Scalar> {
        let mut xs: Vec<Scalar> = self
            .values
            .keys()
            .flat_map(|(x, y)| [x.clone(), y.clone()])
            .collect();
        xs.sort();
        xs.dedup();
        xs
    }

    /// The grid as `x = k·step` for `k ∈ [−N, N]`, if it is a fully sampled
    /// square uniform grid symmetric about 0.
    pub fn uniform_square(&self) -> Result<(Scalar, i64)> {
        let xs = self.axis();
        let m = xs.len();
        if m < 3 || m % 2 == 0 {
            return Err(FeqError::InvalidGrid("need an odd number (>= 3) of grid values".into()));
        }
        let n = (m / 2) as i64;
        let step = &xs[m / 2 + 1] - &xs[m / 2];
        if !xs[m / 2].is_zero() {
            return Err(FeqError::InvalidGrid("grid must be centered at 0".into()));
        }
        for (i, x) in xs.iter().enumerate() {
            if *x != &step * int(i as i64 - n) {
                return Err(FeqError::InvalidGrid("grid must be uniform".into()));
            }
        }
        if self.values.len() != m * m {
            return Err(FeqError::InvalidGrid("grid must be fully sampled".into()));
        }
        Ok((step, n))
    }
}

fn read_rows<R: Read>(reader: R, width: usize) -> Result<Vec<Vec<Scalar>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| FeqError::Csv(e.to_string()))?;
        if rec.len() != width {
            return Err(FeqError::Csv(format!(
                "row {} has {} fields, expected {}",
                i + 1,
                rec.len(),
                width
            )));
        }
        let parsed: std::result::Result<Vec<Scalar>, _> = rec.iter().map(scalar::parse_scalar).collect();
        match parsed {
            Ok(row) => out.push(row),
            Err(_) if i == 0 => continue,
            Err(e) => return Err(FeqError::Csv(format!("row {}: {}", i + 1, e))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grids() {
        let a = additive_grid();
        assert_eq!(a.len(), 17);
        assert_eq!(a[0], int(-2));
        let m = multiplicative_grid();
        assert_eq!(m.first(), Some(&frac(1, 16)));
        assert_eq!(m.last(), Some(&int(16)));
    }

    #[test]
    fn csv_tables() {
        let f = GridFunction1D::from_csv("x,value\n-1,2\n1/2,0.25\n3,-1\n".as_bytes()).unwrap();
        assert_eq!(f.get(&frac(1, 2)), Some(&frac(1, 4)));
        assert!(GridFunction1D::from_csv("2,1\n1,1\n".as_bytes()).is_err());
        let g = GridFunction2D::from_csv("x,y,value\n0,1,2\n1,0,-2\n".as_bytes(), true).unwrap();
        assert_eq!(g.len(), 2);
        assert!(GridFunction2D::from_csv("0,1,2\n1,0,2\n".as_bytes(), true).is_err());
    }

    #[test]
    fn uniform_square_detection() {
        let g = GridFunction2D::from_fn(&additive_grid(), true, |x, y| x - y).unwrap();
        assert_eq!(g.uniform_square().unwrap(), (frac(1, 4), 8));
        let h = GridFunction2D::from_fn(&multiplicative_grid(), false, |x, y| x * y).unwrap();
        assert!(h.uniform_square().is_err());
    }
}
