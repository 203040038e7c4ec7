//! `cvgeom`: compute convex-geometric functionals, run verification suites
//! and fit valuation decompositions from the command line.

mod compute;
mod decomposition;
mod error;
mod input;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cvgeom::smooth::QuadratureOptions;
use cvgeom::valuation::DecomposeOptions;

use error::{CliError, Result};
use input::{merge_phi, parse_phi, parse_spec, SpecArg};
use output::{emit, Format};
use verify::VerifyConfig;

#[derive(Debug, Parser)]
#[command(name = "cvgeom", version, about = "Exact polytopes, smooth bodies and valuations on convex bodies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a valuation (default: volume, polar volume and their product) on body files.
    Compute(ComputeArgs),
    /// Run a named verification suite; exits 0 iff every case passes.
    Verify(VerifyArgs),
    /// Recover (c0, c1, c2, φ) from a valuation used as a black box.
    Decompose(DecomposeArgs),
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

#[derive(Debug, Args)]
struct ComputeArgs {
    /// Inline JSON `{"c0","c1","c2","phi"}`, a JSON file, or one of mahler, volume, polar-volume, euler.
    #[arg(long)]
    spec: Option<String>,
    /// Concave function for Ω_φ, e.g. power:p=1 or affine_cap:slope=1,cap=2.
    #[arg(long)]
    phi: Option<String>,
    /// Relative quadrature tolerance.
    #[arg(long, value_parser = positive)]
    tol: Option<f64>,
    #[arg(required = true)]
    bodies: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// valuation-identity, sl-invariance, usc-probe, homogeneity, q2-description,
    /// r2-description, one-dim, cauchy, moment-contravariance, polar-involution.
    suite: Option<String>,
    #[arg(long = "suite", conflicts_with = "suite")]
    suite_flag: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    cases: Option<usize>,
    #[arg(long, value_parser = positive)]
    tol: Option<f64>,
    /// Exponent of Ω_p where the suite uses one.
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    p: f64,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value = "ngon")]
    sequence: String,
    /// Largest polygon of the u.s.c. sequence.
    #[arg(long, default_value_t = 512)]
    max: usize,
    #[arg(long)]
    spec: Option<String>,
    #[arg(long)]
    phi: Option<String>,
    /// CSV table `x,value` for the cauchy suite.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    #[arg(long)]
    spec: String,
    #[arg(long)]
    phi: Option<String>,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// φ sample points s, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = positive)]
    grid: Option<Vec<f64>>,
    /// Also fit the homogeneity degree on the unit ball.
    #[arg(long)]
    homogeneity: bool,
}

fn valuation_arg(spec: Option<&str>, phi: Option<&str>) -> Result<Option<SpecArg>> {
    let spec = spec.map(parse_spec).transpose()?;
    let phi = phi.map(parse_phi).transpose()?;
    merge_phi(spec, phi)
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("CV_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| CliError::Argument(format!("CV_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Argument(e.to_string()))?;
    }
    Ok(())
}

/// Ok(true) iff the command succeeded and, for suites, every case passed.
fn run(cli: Cli) -> Result<bool> {
    configure_threads()?;
    let out = cli.out.as_deref();
    match cli.command {
        Command::Compute(a) => {
            let spec = valuation_arg(a.spec.as_deref(), a.phi.as_deref())?;
            let mut opts = QuadratureOptions::default();
            if let Some(t) = a.tol {
                opts.rel_tol = t;
            }
            let report = compute::run(spec, &a.bodies, &opts)?;
            emit(&report, cli.format, out)?;
            Ok(true)
        }
        Command::Verify(a) => {
            let suite = a
                .suite
                .or(a.suite_flag)
                .ok_or_else(|| CliError::Argument(format!("name a suite: {}", verify::SUITES.join(", "))))?;
            let spec = match valuation_arg(a.spec.as_deref(), a.phi.as_deref())? {
                None => None,
                Some(SpecArg::Valuation(s)) => Some(s),
                Some(SpecArg::Mahler) => {
                    return Err(CliError::Spec("mahler is not a valuation".into()));
                }
            };
            let cfg = VerifyConfig {
                seed: a.seed,
                cases: a.cases,
                tol: a.tol,
                p: a.p,
                dim: a.dim,
                sequence: a.sequence,
                max: a.max,
                spec,
                input: a.input,
            };
            let report = verify::run(&suite, &cfg)?;
            emit(&report, cli.format, out)?;
            Ok(report.all_pass)
        }
        Command::Decompose(a) => {
            let spec = match valuation_arg(Some(&a.spec), a.phi.as_deref())? {
                Some(SpecArg::Valuation(s)) => s,
                _ => return Err(CliError::Spec("decompose needs a coefficient spec".into())),
            };
            let mut opts = DecomposeOptions {
                dim: a.dim,
                homogeneity: a.homogeneity,
                ..Default::default()
            };
            if let Some(g) = a.grid {
                opts.grid = g;
            }
            let report = decomposition::run(spec, &opts)?;
            emit(&report, cli.format, out)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
