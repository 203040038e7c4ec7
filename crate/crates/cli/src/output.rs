//! Report emission as pretty JSON or CSV, to stdout or `--out`.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A report with a flat tabular view for `--format csv`.
pub trait Tabular: Serialize {
    fn header(&self) -> Vec<&'static str>;
    fn rows(&self) -> Vec<Vec<String>>;
}

pub fn emit<R: Tabular>(report: &R, format: Format, out: Option<&Path>) -> Result<()> {
    let io_err = |source: io::Error| CliError::Io {
        path: out.map_or("<stdout>".into(), |p| p.display().to_string()),
        source,
    };
    let mut sink: Box<dyn Write> = match out {
        Some(p) => Box::new(File::create(p).map_err(io_err)?),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(report).expect("reports serialize");
            writeln!(sink, "{text}").map_err(io_err)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            let csv_err = |e: csv::Error| io_err(io::Error::other(e));
            w.write_record(report.header()).map_err(csv_err)?;
            for row in report.rows() {
                w.write_record(&row).map_err(csv_err)?;
            }
            w.flush().map_err(io_err)?;
        }
    }
    Ok(())
}
