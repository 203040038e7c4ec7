//! `cvgeom compute`: evaluate functionals on body files.

use std::path::PathBuf;

use cvgeom::scalar;
use cvgeom::smooth::{BodyModel, Integral, QuadratureOptions};
use cvgeom::valuation::{composite_to_json, evaluate_with, ValuationSpec, Value};
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::error::Result;
use crate::input::{load_body, SpecArg};
use crate::output::Tabular;

#[derive(Debug, Serialize)]
pub struct Functional {
    pub name: String,
    pub value: Value,
    /// Relative tolerance requested from the quadrature, for non-exact values.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct BodyReport {
    pub path: String,
    pub dim: usize,
    pub functionals: Vec<Functional>,
}

#[derive(Debug, Serialize)]
pub struct ComputeReport {
    pub command: &'static str,
    pub spec: Json,
    pub bodies: Vec<BodyReport>,
}

impl Tabular for ComputeReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["body", "functional", "kind", "value", "approx", "converged"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for b in &self.bodies {
            for f in &b.functionals {
                let (kind, value) = match f.value.as_exact() {
                    Some(x) => ("exact", scalar::format_scalar(x)),
                    None => ("quadrature", format!("{}", f.value.to_f64())),
                };
                rows.push(vec![
                    b.path.clone(),
                    f.name.clone(),
                    kind.into(),
                    value,
                    format!("{}", f.value.to_f64()),
                    f.value.converged().to_string(),
                ]);
            }
        }
        rows
    }
}

fn functional(name: &str, value: Value, opts: &QuadratureOptions) -> Functional {
    let tolerance = value.as_exact().is_none().then_some(opts.rel_tol);
    Functional {
        name: name.into(),
        value,
        tolerance,
    }
}

fn mahler(body: &BodyModel, opts: &QuadratureOptions) -> Vec<Functional> {
    let (v, p) = match body {
        BodyModel::Polytope(p) => (Value::Exact(p.volume()), Value::Exact(p.polar_volume())),
        other => (
            Value::approx(Integral::exact(other.volume())),
            Value::approx(other.polar_volume(opts)),
        ),
    };
    let product = match (v.as_exact(), p.as_exact()) {
        (Some(a), Some(b)) => Value::Exact(a * b),
        _ => Value::approx(Integral {
            value: v.to_f64() * p.to_f64(),
            error: 0.0,
            panels: 0,
            converged: v.converged() && p.converged(),
        }),
    };
    vec![
        functional("volume", v, opts),
        functional("polar_volume", p, opts),
        functional("volume_product", product, opts),
    ]
}

pub fn run(spec: Option<SpecArg>, bodies: &[PathBuf], opts: &QuadratureOptions) -> Result<ComputeReport> {
    let spec = spec.unwrap_or(SpecArg::Mahler);
    let spec_json = match &spec {
        SpecArg::Mahler => json!("mahler"),
        SpecArg::Valuation(ValuationSpec::Composite(c)) => composite_to_json(c),
        SpecArg::Valuation(ValuationSpec::Oracle(o)) => json!(o.name()),
    };
    let mut reports = Vec::with_capacity(bodies.len());
    for path in bodies {
        let body = load_body(path)?;
        let functionals = match &spec {
            SpecArg::Mahler => mahler(&body, opts),
            SpecArg::Valuation(s) => vec![functional("valuation", evaluate_with(s, &body, opts)?, opts)],
        };
        reports.push(BodyReport {
            path: path.display().to_string(),
            dim: body.dim(),
            functionals,
        });
    }
    Ok(ComputeReport {
        command: "compute",
        spec: spec_json,
        bodies: reports,
    })
}
