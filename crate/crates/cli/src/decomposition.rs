//! `cvgeom decompose`: fit `(c₀, c₁, c₂, φ)` to a black-box valuation.

use cvgeom::scalar;
use cvgeom::valuation::{decompose, evaluate, DecomposeOptions, DecompositionReport, ValuationSpec, Value};
use serde::Serialize;

use crate::error::Result;
use crate::output::Tabular;

#[derive(Debug, Serialize)]
pub struct DecomposeOutput {
    pub command: &'static str,
    #[serde(flatten)]
    pub report: DecompositionReport,
}

impl Tabular for DecomposeOutput {
    fn header(&self) -> Vec<&'static str> {
        vec!["quantity", "s", "value", "converged"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let r = &self.report;
        let mut rows = vec![
            vec!["c0".into(), String::new(), scalar::format_scalar(&r.c0), "true".into()],
            vec!["c1".into(), String::new(), scalar::format_scalar(&r.c1), "true".into()],
            vec!["c2".into(), String::new(), scalar::format_scalar(&r.c2), "true".into()],
        ];
        for p in &r.phi_samples {
            rows.push(vec!["phi".into(), p.s.to_string(), p.phi.to_string(), p.converged.to_string()]);
        }
        for (i, v) in r.check_residuals.iter().enumerate() {
            rows.push(vec![
                format!("check_residual_{i}"),
                String::new(),
                residual_text(v),
                v.converged().to_string(),
            ]);
        }
        rows
    }
}

fn residual_text(v: &Value) -> String {
    match v.as_exact() {
        Some(x) => scalar::format_scalar(x),
        None => v.to_f64().to_string(),
    }
}

/// The spec is only ever queried through evaluation, like any oracle.
pub fn run(spec: ValuationSpec, opts: &DecomposeOptions) -> Result<DecomposeOutput> {
    let oracle = ValuationSpec::oracle("black-box valuation", move |body| evaluate(&spec, body));
    Ok(DecomposeOutput {
        command: "decompose",
        report: decompose(&oracle, opts)?,
    })
}
