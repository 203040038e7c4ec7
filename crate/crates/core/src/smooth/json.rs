//! Body JSON.
//!
//! ```json
//! {"type": "ball", "dim": 2, "radius": "1"}
//! {"type": "ellipsoid", "matrix": [["2", "0"], ["0", "0.5"]]}
//! {"type": "piecewise2d", "pieces": [{"kind": "arc", "center": [0, 0], "radius": 1, "from": 0, "to": 6.283185307179586}]}
//! {"type": "polytope", "dim": 2, "vertices": [["1", "0"], ...]}
//! ```
//!
//! Reals may be JSON numbers or decimal / `p/q` strings. Matrices are
//! row-major and written as decimal strings.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::body::{BodyModel, Ellipsoid};
use super::curve::{Piece, PiecewiseCurve};
use super::error::{BodyError, Result};
use crate::polytope::json::PolytopeJson;
use crate::scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Real {
    Number(f64),
    Text(String),
}

impl Real {
    pub fn value(&self) -> Result<f64> {
        match self {
            Real::Number(x) => Ok(*x),
            Real::Text(s) => {
                let t = s.trim();
                if let Ok(x) = scalar::parse_scalar(t) {
                    return Ok(scalar::to_f64(&x));
                }
                t.parse::<f64>()
                    .map_err(|_| BodyError::Parse(format!("not a real number: {:?}", s)))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PieceJson {
    Arc {
        center: [Real; 2],
        radius: Real,
        from: Real,
        to: Real,
    },
    Segment { from: [Real; 2], to: [Real; 2] },
}

fn default_dim() -> usize {
    2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BodyJson {
    Ball {
        #[serde(default = "default_dim")]
        dim: usize,
        radius: Real,
    },
    Ellipsoid { matrix: Vec<Vec<Real>> },
    Piecewise2d { pieces: Vec<PieceJson> },
    Polytope {
        dim: usize,
        vertices: Vec<Vec<String>>,
    },
}

fn pair(p: &[Real; 2]) -> Result<[f64; 2]> {
    Ok([p[0].value()?, p[1].value()?])
}

impl BodyJson {
    pub fn to_body(&self) -> Result<BodyModel> {
        match self {
            BodyJson::Ball { dim, radius } => BodyModel::ball(*dim, radius.value()?),
            BodyJson::Ellipsoid { matrix } => {
                let n = matrix.len();
                if matrix.iter().any(|r| r.len() != n) {
                    return Err(BodyError::InvalidBody("ellipsoid matrix must be square".into()));
                }
                let mut entries = Vec::with_capacity(n * n);
                for row in matrix {
                    for x in row {
                        entries.push(x.value()?);
                    }
                }
                Ok(BodyModel::Ellipsoid(Ellipsoid::new(DMatrix::from_row_slice(n, n, &entries))?))
            }
            BodyJson::Piecewise2d { pieces } => {
                let pieces = pieces
                    .iter()
                    .map(|p| {
                        Ok(match p {
                            PieceJson::Arc {
                                center,
                                radius,
                                from,
                                to,
                            } => Piece::Arc {
                                center: pair(center)?,
                                radius: radius.value()?,
                                from: from.value()?,
                                to: to.value()?,
                            },
                            PieceJson::Segment { from, to } => Piece::Segment {
                                from: pair(from)?,
                                to: pair(to)?,
                            },
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(BodyModel::Piecewise2D(PiecewiseCurve::new(pieces)?))
            }
            BodyJson::Polytope { dim, vertices } => Ok(BodyModel::Polytope(
                PolytopeJson {
                    dim: *dim,
                    vertices: vertices.clone(),
                }
                .to_polytope()?,
            )),
        }
    }

    pub fn from_body(body: &BodyModel) -> Self {
        let num = |x: f64| Real::Number(x);
        match body {
            BodyModel::Ball { dim, radius } => BodyJson::Ball {
                dim: *dim,
                radius: Real::Text(radius.to_string()),
            },
            BodyModel::Ellipsoid(e) => BodyJson::Ellipsoid {
                matrix: e
                    .matrix()
                    .row_iter()
                    .map(|r| r.iter().map(|x| Real::Text(x.to_string())).collect())
                    .collect(),
            },
            BodyModel::Piecewise2D(c) => BodyJson::Piecewise2d {
                pieces: c
                    .pieces()
                    .iter()
                    .map(|p| match *p {
                        Piece::Arc {
                            center,
                            radius,
                            from,
                            to,
                        } => PieceJson::Arc {
                            center: center.map(num),
                            radius: num(radius),
                            from: num(from),
                            to: num(to),
                        },
                        Piece::Segment { from, to } => PieceJson::Segment {
                            from: from.map(num),
                            to: to.map(num),
                        },
                    })
                    .collect(),
            },
            BodyModel::Polytope(p) => {
                let j = PolytopeJson::from_polytope(p);
                BodyJson::Polytope {
                    dim: j.dim,
                    vertices: j.vertices,
                }
            }
        }
    }
}

pub fn body_from_json(text: &str) -> Result<BodyModel> {
    let raw: BodyJson = serde_json::from_str(text).map_err(|e| BodyError::Parse(e.to_string()))?;
    raw.to_body()
}

pub fn body_to_json(body: &BodyModel) -> String {
    serde_json::to_string(&BodyJson::from_body(body)).expect("plain data serializes")
}
