//! Polytope JSON: `{"dim": n, "vertices": [["p/q", ...], ...]}`.
//!
//! Facets are always derived from the vertices on read. The writer emits
//! canonical reduced fractions.

use serde::{Deserialize, Serialize};

use super::error::{GeometryError, Result};
use super::kernel::{convex_hull, Polytope};
use crate::scalar::{format_scalar, parse_scalar, Point};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
}

impl PolytopeJson {
    pub fn from_polytope(p: &Polytope) -> Self {
        Self {
            dim: p.dim(),
            vertices: p
                .vertices()
                .iter()
                .map(|v| v.iter().map(format_scalar).collect())
                .collect(),
        }
    }

    pub fn to_polytope(&self) -> Result<Polytope> {
        let pts = self
            .vertices
            .iter()
            .map(|v| {
                if v.len() != self.dim {
                    return Err(GeometryError::DimensionMismatch {
                        expected: self.dim,
                        found: v.len(),
                    });
                }
                v.iter()
                    .map(|s| parse_scalar(s).map_err(|e| GeometryError::Parse(e.to_string())))
                    .collect::<Result<Point>>()
            })
            .collect::<Result<Vec<Point>>>()?;
        convex_hull(&pts)
    }
}

pub fn polytope_from_json(text: &str) -> Result<Polytope> {
    let raw: PolytopeJson =
        serde_json::from_str(text).map_err(|e| GeometryError::Parse(e.to_string()))?;
    raw.to_polytope()
}

pub fn polytope_to_json(p: &Polytope) -> String {
    serde_json::to_string(&PolytopeJson::from_polytope(p)).expect("plain data serializes")
}
