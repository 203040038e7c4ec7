//! Parsing of `--spec`, `--phi` and body files.

use std::fs;
use std::path::Path;

use cvgeom::polytope::json::PolytopeJson;
use cvgeom::smooth::{BodyJson, BodyModel};
use cvgeom::valuation::{json::spec_from_value, Composite, ConcFn, ValuationSpec};
use serde_json::Value as Json;

use crate::error::{CliError, Result};

/// What `--spec` asked for.
#[derive(Debug, Clone)]
pub enum SpecArg {
    Mahler,
    Valuation(ValuationSpec),
}

/// `--spec` accepts inline JSON, a path to a JSON file, or one of the
/// names `mahler`, `volume`, `polar-volume`, `euler`.
pub fn parse_spec(text: &str) -> Result<SpecArg> {
    let trimmed = text.trim();
    let spec = match trimmed {
        "mahler" => return Ok(SpecArg::Mahler),
        "volume" => ValuationSpec::volume(),
        "polar-volume" => ValuationSpec::polar_volume(),
        "euler" => ValuationSpec::euler(),
        _ => {
            let raw = if trimmed.starts_with('{') {
                trimmed.to_string()
            } else {
                read(Path::new(trimmed))?
            };
            let json: Json = serde_json::from_str(&raw).map_err(|e| CliError::Spec(e.to_string()))?;
            spec_from_value(&json).map_err(|e| CliError::Spec(e.to_string()))?
        }
    };
    Ok(SpecArg::Valuation(spec))
}

/// `power:p=1[,n=2]`, `affine_cap:slope=1,cap=2`, `table:0.5=0.2,1=0.4`,
/// or the ConcFn JSON itself.
pub fn parse_phi(text: &str) -> Result<ConcFn> {
    let text = text.trim();
    let bad = |msg: String| CliError::Phi(format!("{text:?}: {msg}"));
    if text.starts_with('{') {
        let f: ConcFn = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        f.validate().map_err(|e| bad(e.to_string()))?;
        return Ok(f);
    }
    let (kind, params) = text.split_once(':').unwrap_or((text, ""));
    let mut pairs = Vec::new();
    for item in params.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key=value, got {item:?}")))?;
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    let number = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("not a number: {s:?}")));
    let field = |name: &str| -> Result<Option<f64>> {
        pairs
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| number(v))
            .transpose()
    };
    let phi = match kind {
        "power" => {
            let p = field("p")?.ok_or_else(|| bad("missing p".into()))?;
            match field("n")? {
                Some(n) if n >= 1.0 && n.fract() == 0.0 => ConcFn::power_in(p, n as usize),
                Some(_) => return Err(bad("n must be a positive integer".into())),
                None => ConcFn::power(p),
            }
        }
        "affine_cap" => {
            let slope = field("slope")?.ok_or_else(|| bad("missing slope".into()))?;
            let cap = field("cap")?.ok_or_else(|| bad("missing cap".into()))?;
            ConcFn::affine_cap(slope, cap)
        }
        "table" => {
            let points = pairs
                .iter()
                .map(|(k, v)| Ok([number(k)?, number(v)?]))
                .collect::<Result<Vec<_>>>()?;
            ConcFn::table(points)
        }
        other => return Err(bad(format!("unknown function kind {other:?}"))),
    };
    phi.map_err(|e| bad(e.to_string()))
}

/// Combines `--spec` and `--phi`. Without `--spec`, `--phi` alone means
/// `Ω_φ`.
pub fn merge_phi(spec: Option<SpecArg>, phi: Option<ConcFn>) -> Result<Option<SpecArg>> {
    match (spec, phi) {
        (s, None) => Ok(s),
        (None, Some(phi)) => Ok(Some(SpecArg::Valuation(ValuationSpec::omega(phi)))),
        (Some(SpecArg::Valuation(ValuationSpec::Composite(c))), Some(phi)) => {
            if c.phi.is_some() {
                return Err(CliError::Conflict("φ given both in --spec and --phi".into()));
            }
            Ok(Some(SpecArg::Valuation(ValuationSpec::Composite(Composite {
                phi: Some(phi),
                ..c
            }))))
        }
        (Some(_), Some(_)) => Err(CliError::Conflict("--phi only combines with a coefficient spec".into())),
    }
}

/// A body file: the tagged body JSON, or a bare `{"dim", "vertices"}`
/// polytope.
pub fn load_body(path: &Path) -> Result<BodyModel> {
    let raw = read(path)?;
    let json: Json = serde_json::from_str(&raw).map_err(|e| CliError::Body {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let parsed = if json.get("type").is_some() {
        serde_json::from_value::<BodyJson>(json)
            .map_err(|e| e.to_string())
            .and_then(|b| b.to_body().map_err(|e| e.to_string()))
    } else {
        serde_json::from_value::<PolytopeJson>(json)
            .map_err(|e| e.to_string())
            .and_then(|p| p.to_polytope().map_err(|e| e.to_string()))
            .map(BodyModel::Polytope)
    };
    parsed.map_err(|message| CliError::Body {
        path: path.display().to_string(),
        message,
    })
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_shorthand() {
        assert_eq!(parse_phi("power:p=1").unwrap(), ConcFn::power(1.0).unwrap());
        assert_eq!(parse_phi("power:p=2,n=3").unwrap(), ConcFn::power_in(2.0, 3).unwrap());
        assert!(parse_phi("table:1=1,2=1.5").is_ok());
        assert!(parse_phi("power:p=-1").is_err());
        assert!(parse_phi("gauss:s=1").is_err());
    }

    #[test]
    fn spec_names() {
        assert!(matches!(parse_spec("mahler").unwrap(), SpecArg::Mahler));
        assert!(matches!(parse_spec(r#"{"c1": 1}"#).unwrap(), SpecArg::Valuation(_)));
        assert!(parse_spec(r#"{"c9": 1}"#).is_err());
    }
}
