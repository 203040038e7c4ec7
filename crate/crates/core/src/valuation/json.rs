//! Valuation spec JSON:
//! `{"c0": .., "c1": .., "c2": .., "phi": {"type": "power", "p": ..} | {"type": "table", "points": [[s, v], ..]} | null}`.
//!
//! Coefficients may be JSON numbers or strings (`"3/2"`, `"0.25"`); both are
//! read exactly from their decimal text. Missing coefficients are 0.

use serde_json::{json, Map, Value as Json};

use super::conc::ConcFn;
use super::error::{Result, ValuationError};
use super::spec::{Composite, ValuationSpec};
use crate::scalar::{self, Scalar};

fn coefficient(obj: &Map<String, Json>, key: &str) -> Result<Scalar> {
    let text = match obj.get(key) {
        None | Some(Json::Null) => return Ok(scalar::int(0)),
        Some(Json::Number(x)) => x.to_string(),
        Some(Json::String(s)) => s.clone(),
        Some(other) => {
            return Err(ValuationError::Parse(format!("{} must be a number, got {}", key, other)))
        }
    };
    scalar::parse_scalar(&text).map_err(|e| ValuationError::Parse(format!("{}: {}", key, e)))
}

pub fn spec_from_json(text: &str) -> Result<ValuationSpec> {
    let raw: Json = serde_json::from_str(text).map_err(|e| ValuationError::Parse(e.to_string()))?;
    spec_from_value(&raw)
}

pub fn spec_from_value(raw: &Json) -> Result<ValuationSpec> {
    let obj = raw
        .as_object()
        .ok_or_else(|| ValuationError::Parse("valuation spec must be a JSON object".into()))?;
    if let Some(k) = obj.keys().find(|k| !matches!(k.as_str(), "c0" | "c1" | "c2" | "phi")) {
        return Err(ValuationError::Parse(format!("unknown field {:?}", k)));
    }
    let phi = match obj.get("phi") {
        None | Some(Json::Null) => None,
        Some(v) => {
            let f: ConcFn =
                serde_json::from_value(v.clone()).map_err(|e| ValuationError::Parse(e.to_string()))?;
            f.validate()?;
            Some(f)
        }
    };
    Ok(ValuationSpec::Composite(Composite {
        c0: coefficient(obj, "c0")?,
        c1: coefficient(obj, "c1")?,
        c2: coefficient(obj, "c2")?,
        phi,
    }))
}

pub fn composite_to_json(c: &Composite) -> Json {
    json!({
        "c0": scalar::format_scalar(&c.c0),
        "c1": scalar::format_scalar(&c.c1),
        "c2": scalar::format_scalar(&c.c2),
        "phi": c.phi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn parses_specs() {
        let s = spec_from_json(r#"{"c0":0,"c1":1,"c2":0}"#).unwrap();
        match s {
            ValuationSpec::Composite(c) => {
                assert_eq!((c.c0, c.c1, c.c2, c.phi), (int(0), int(1), int(0), None))
            }
            _ => panic!(),
        }
        let s = spec_from_json(r#"{"c0":0.1,"c2":"3/2","phi":{"type":"power","p":1}}"#).unwrap();
        match s {
            ValuationSpec::Composite(c) => {
                assert_eq!(c.c0, frac(1, 10));
                assert_eq!(c.c2, frac(3, 2));
                assert!(c.phi.is_some());
                let back = composite_to_json(&c).to_string();
                let again = spec_from_json(&back).unwrap();
                assert!(matches!(again, ValuationSpec::Composite(d) if d == c));
            }
            _ => panic!(),
        }
        assert!(spec_from_json(r#"{"c3":1}"#).is_err());
        assert!(spec_from_json(r#"{"phi":{"type":"power","p":-1}}"#).is_err());
        assert!(spec_from_json(r#"{"phi":{"type":"table","points":[[1,1],[2,5]]}}"#).is_err());
    }
}
