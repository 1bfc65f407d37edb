//! Command-line front end: argument and config-file handling, the four
//! subcommands, and the table/report writers.
//!
//! Exit codes: 0 success, 1 other failure, 2 invalid configuration,
//! 3 solver non-convergence, 4 a verification check failed.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{error, info};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::apoints::{self, count_contour_with, ContourOptions, TargetValue};
use crate::error::Error;
use crate::tolerances::{COUNT_LOG_FACTOR, MAIN_TERM_IDENTITY_TOL, MEAN_CHECK_MIN_T, MEAN_TOL};
use crate::verify::{self, PipelineConfig, MAX_ETA};
use crate::zetacore;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID_CONFIG: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

/// Smallest accepted --t-max.
pub const MIN_T_MAX: f64 = 50.0;

/// Samples on the log-spaced curve grid.
const CURVE_SAMPLES: usize = 200;

pub const APOINTS_CSV_HEADER: &str = "branch,beta,gamma,residual,zeta_re,zeta_im";
pub const CURVE_CSV_HEADER: &str = "kind,t,sigma,beta,deviation";

#[derive(Debug, Parser)]
#[command(
    name = "delta-apoints",
    version,
    about = "a-points of the zeta functional-equation factor and zeta values at them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the a-points with t_min < gamma <= t_max and zeta(eta + delta_a).
    Apoints(RunArgs),
    /// Compare counts and value sums with their main terms.
    Verify(RunArgs),
    /// Emit the clustering curve with the a-points overlaid.
    Curve(RunArgs),
    /// Count a-points with the argument principle.
    Count(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Real part of the target a.
    #[arg(long, allow_negative_numbers = true)]
    pub a_re: Option<f64>,
    /// Imaginary part of the target a.
    #[arg(long, allow_negative_numbers = true)]
    pub a_im: Option<f64>,
    /// Upper height T.
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Shift eta in zeta(eta + delta_a), in [0, 0.9].
    #[arg(long, allow_negative_numbers = true)]
    pub eta: Option<f64>,
    /// Height floor; defaults to max(30, 2*pi*exp(2|log|a||)).
    #[arg(long)]
    pub t_min: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the table here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// key = value config file; command-line flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Contents of a config file. Every key is optional.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub a_re: Option<f64>,
    pub a_im: Option<f64>,
    pub t_max: Option<f64>,
    pub eta: Option<f64>,
    pub t_min: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("config file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Fully resolved run settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub a_re: f64,
    pub a_im: f64,
    pub t_max: f64,
    pub eta: f64,
    pub t_min_override: Option<f64>,
    pub format: Format,
    pub out_path: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            a_re: 1.0,
            a_im: 0.0,
            t_max: 1000.0,
            eta: 0.0,
            t_min_override: None,
            format: Format::Csv,
            out_path: None,
            threads: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Numeric(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_INVALID_CONFIG,
            CliError::Numeric(e) if e.is_solver_failure() => EXIT_SOLVER,
            CliError::Numeric(Error::ZeroTarget | Error::InvalidConfig(_)) => EXIT_INVALID_CONFIG,
            _ => EXIT_FAILURE,
        }
    }
}

impl RunConfig {
    /// flags > config file > defaults
    pub fn resolve(args: &RunArgs, file: Option<&FileConfig>) -> Result<Self, CliError> {
        Self::resolve_with_format(args, file, Format::Csv)
    }

    pub fn resolve_with_format(
        args: &RunArgs,
        file: Option<&FileConfig>,
        default_format: Format,
    ) -> Result<Self, CliError> {
        let file = file.cloned().unwrap_or_default();
        let d = RunConfig {
            format: default_format,
            ..RunConfig::default()
        };
        let cfg = RunConfig {
            a_re: args.a_re.or(file.a_re).unwrap_or(d.a_re),
            a_im: args.a_im.or(file.a_im).unwrap_or(d.a_im),
            t_max: args.t_max.or(file.t_max).unwrap_or(d.t_max),
            eta: args.eta.or(file.eta).unwrap_or(d.eta),
            t_min_override: args.t_min.or(file.t_min),
            format: args.format.or(file.format).unwrap_or(d.format),
            out_path: args.out.clone().or(file.out),
            threads: args.threads.or(file.threads),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_args(args: &RunArgs, default_format: Format) -> Result<Self, CliError> {
        let file = args.config.as_deref().map(FileConfig::load).transpose()?;
        Self::resolve_with_format(args, file.as_ref(), default_format)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.a_re == 0.0 && self.a_im == 0.0 {
            return Err(CliError::Config(
                "a = 0 is excluded: its a-points are tied to the trivial zeros of zeta".into(),
            ));
        }
        if !self.a_re.is_finite() || !self.a_im.is_finite() {
            return Err(CliError::Config("a must be finite".into()));
        }
        if !(self.t_max > MIN_T_MAX) || !self.t_max.is_finite() {
            return Err(CliError::Config(format!(
                "t_max must exceed {MIN_T_MAX}, got {}",
                self.t_max
            )));
        }
        if self.t_max > zetacore::MAX_HEIGHT {
            return Err(CliError::Config(format!(
                "t_max must not exceed {}, got {}",
                zetacore::MAX_HEIGHT,
                self.t_max
            )));
        }
        if !(0.0..=MAX_ETA).contains(&self.eta) {
            return Err(CliError::Config(format!(
                "eta must lie in [0, {MAX_ETA}], got {}",
                self.eta
            )));
        }
        if self.threads == Some(0) {
            return Err(CliError::Config("threads must be at least 1".into()));
        }
        let pipeline = self.pipeline()?;
        pipeline
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        if !(self.t_max > pipeline.solver.t_min) {
            return Err(CliError::Config(format!(
                "t_max = {} must exceed t_min = {}",
                self.t_max, pipeline.solver.t_min
            )));
        }
        Ok(())
    }

    pub fn target(&self) -> Result<TargetValue, CliError> {
        TargetValue::from_parts(self.a_re, self.a_im).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn pipeline(&self) -> Result<PipelineConfig, CliError> {
        let a = self.target()?;
        let mut cfg = PipelineConfig::for_target(&a);
        if let Some(t_min) = self.t_min_override {
            cfg.solver.t_min = t_min;
        }
        Ok(cfg)
    }
}

/// One output row of `apoints`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct APointRow {
    pub branch: i64,
    pub beta: f64,
    pub gamma: f64,
    pub residual: f64,
    pub zeta_re: f64,
    pub zeta_im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// JSON document written by `verify`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub a: Complex64,
    pub eta: f64,
    #[serde(rename = "T")]
    pub t_max: f64,
    pub t_min: f64,
    pub count: usize,
    pub contour_count: usize,
    pub n_main: f64,
    pub empirical_sum: Complex64,
    pub main_term: Complex64,
    pub sum_main: Complex64,
    pub mean: Complex64,
    pub target: Complex64,
    pub abs_error: f64,
    pub normalized_error: f64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountReport {
    pub a: Complex64,
    pub t0: f64,
    #[serde(rename = "T")]
    pub t_max: f64,
    pub t_bottom: f64,
    pub t_top: f64,
    pub winding: Complex64,
    pub count: usize,
    pub n_main: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OverlayRow {
    pub gamma: f64,
    pub beta: f64,
    pub sigma: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveReport {
    pub curve: Vec<verify::CurveSample>,
    pub overlay: Vec<OverlayRow>,
}

/// 15 significant digits.
fn num(x: f64) -> String {
    format!("{x:.14e}")
}

pub fn apoint_rows(cfg: &RunConfig) -> Result<Vec<APointRow>, CliError> {
    let a = cfg.target()?;
    let pipeline = cfg.pipeline()?;
    let points = apoints::enumerate(&a, cfg.t_max, &pipeline.solver)?;
    let eta = cfg.eta;
    let values: Vec<Complex64> = {
        use rayon::prelude::*;
        points
            .par_iter()
            .map(|p| zetacore::zeta(p.location + eta, &pipeline.zeta))
            .collect::<crate::Result<_>>()?
    };
    Ok(points
        .iter()
        .zip(values)
        .map(|(p, z)| APointRow {
            branch: p.branch,
            beta: p.beta(),
            gamma: p.gamma(),
            residual: p.residual,
            zeta_re: z.re,
            zeta_im: z.im,
        })
        .collect())
}

pub fn render_apoints(rows: &[APointRow], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(rows)? + "\n"),
        Format::Csv => {
            let mut out = String::from(APOINTS_CSV_HEADER);
            out.push('\n');
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.branch,
                    num(r.beta),
                    num(r.gamma),
                    num(r.residual),
                    num(r.zeta_re),
                    num(r.zeta_im)
                );
            }
            Ok(out)
        }
    }
}

pub fn verify_report(cfg: &RunConfig) -> Result<VerifyReport, CliError> {
    let a = cfg.target()?;
    let pipeline = cfg.pipeline()?;
    let t_min = pipeline.solver.t_min;
    let points = apoints::enumerate(&a, cfg.t_max, &pipeline.solver)?;
    let sum = verify::sum_report_from_points(&a, cfg.eta, cfg.t_max, &points, &pipeline)?;
    let contour = count_contour_with(&a, t_min, cfg.t_max, ContourOptions::default())?;
    if let Ok(monitor) = zetacore::growth_monitor(cfg.t_max, &pipeline.zeta) {
        info!("growth monitor: {}", serde_json::to_string(&monitor)?);
    }

    let mean = sum.mean();
    let target = a.value + 1.0;
    let mut checks = vec![
        Check {
            name: "contour_count",
            passed: contour.count == sum.count,
            detail: format!("enumerated {} vs contour {}", sum.count, contour.count),
        },
        {
            let bound = COUNT_LOG_FACTOR * cfg.t_max.ln();
            let dev = (sum.count as f64 - sum.n_main).abs();
            Check {
                name: "count_main_term",
                passed: dev <= bound,
                detail: format!("|count - n_main| = {dev:.6} vs bound {bound:.6}"),
            }
        },
    ];
    if cfg.eta == 0.0 {
        let expected = (1.0 + a.value) * sum.n_main;
        let rel = (sum.main_term - expected).norm() / expected.norm().max(f64::MIN_POSITIVE);
        checks.push(Check {
            name: "main_term_identity",
            passed: rel <= MAIN_TERM_IDENTITY_TOL,
            detail: format!("relative deviation {rel:e}"),
        });
        if cfg.t_max >= MEAN_CHECK_MIN_T {
            let dev = (mean - target).norm();
            checks.push(Check {
                name: "mean_value",
                passed: dev <= MEAN_TOL,
                detail: format!("|mean - (a+1)| = {dev:.6} vs {MEAN_TOL}"),
            });
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        a: a.value,
        eta: cfg.eta,
        t_max: cfg.t_max,
        t_min,
        count: sum.count,
        contour_count: contour.count,
        n_main: sum.n_main,
        empirical_sum: sum.empirical_sum,
        main_term: sum.main_term,
        sum_main: sum.main_term,
        mean,
        target,
        abs_error: sum.abs_error,
        normalized_error: sum.normalized_error,
        checks,
        passed,
    })
}

pub fn render_verify(report: &VerifyReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Csv => {
            let mut out = String::from("key,value\n");
            let c = |out: &mut String, key: &str, z: Complex64| {
                let _ = writeln!(out, "{key}_re,{}", num(z.re));
                let _ = writeln!(out, "{key}_im,{}", num(z.im));
            };
            c(&mut out, "a", report.a);
            let _ = writeln!(out, "eta,{}", num(report.eta));
            let _ = writeln!(out, "T,{}", num(report.t_max));
            let _ = writeln!(out, "t_min,{}", num(report.t_min));
            let _ = writeln!(out, "count,{}", report.count);
            let _ = writeln!(out, "contour_count,{}", report.contour_count);
            let _ = writeln!(out, "n_main,{}", num(report.n_main));
            c(&mut out, "empirical_sum", report.empirical_sum);
            c(&mut out, "sum_main", report.sum_main);
            c(&mut out, "mean", report.mean);
            c(&mut out, "target", report.target);
            let _ = writeln!(out, "abs_error,{}", num(report.abs_error));
            let _ = writeln!(out, "normalized_error,{}", num(report.normalized_error));
            for check in &report.checks {
                let _ = writeln!(out, "check_{},{}", check.name, check.passed);
            }
            let _ = writeln!(out, "passed,{}", report.passed);
            Ok(out)
        }
    }
}

pub fn curve_report(cfg: &RunConfig) -> Result<CurveReport, CliError> {
    let a = cfg.target()?;
    let pipeline = cfg.pipeline()?;
    let modulus = a.modulus();
    let curve = verify::curve_grid(modulus, pipeline.solver.t_min, cfg.t_max, CURVE_SAMPLES)?;
    let points = apoints::enumerate(&a, cfg.t_max, &pipeline.solver)?;
    let overlay = points
        .iter()
        .map(|p| {
            let sigma = verify::curve_sigma(modulus, p.gamma())?.sigma;
            Ok(OverlayRow {
                gamma: p.gamma(),
                beta: p.beta(),
                sigma,
                deviation: (p.beta() - sigma).abs(),
            })
        })
        .collect::<crate::Result<Vec<_>>>()?;
    Ok(CurveReport { curve, overlay })
}

pub fn render_curve(report: &CurveReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Csv => {
            let mut out = String::from(CURVE_CSV_HEADER);
            out.push('\n');
            for s in &report.curve {
                let _ = writeln!(out, "curve,{},{},,", num(s.t), num(s.sigma));
            }
            for o in &report.overlay {
                let _ = writeln!(
                    out,
                    "apoint,{},{},{},{}",
                    num(o.gamma),
                    num(o.sigma),
                    num(o.beta),
                    num(o.deviation)
                );
            }
            Ok(out)
        }
    }
}

pub fn count_report(cfg: &RunConfig) -> Result<CountReport, CliError> {
    let a = cfg.target()?;
    let pipeline = cfg.pipeline()?;
    let t0 = pipeline.solver.t_min;
    let c = count_contour_with(&a, t0, cfg.t_max, ContourOptions::default())?;
    Ok(CountReport {
        a: a.value,
        t0,
        t_max: cfg.t_max,
        t_bottom: c.t_bottom,
        t_top: c.t_top,
        winding: c.winding,
        count: c.count,
        n_main: verify::n_main(cfg.t_max)?,
    })
}

pub fn render_count(report: &CountReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Csv => Ok(format!(
            "key,value\na_re,{}\na_im,{}\nt0,{}\nT,{}\nt_bottom,{}\nt_top,{}\nwinding_re,{}\nwinding_im,{}\ncount,{}\nn_main,{}\n",
            num(report.a.re),
            num(report.a.im),
            num(report.t0),
            num(report.t_max),
            num(report.t_bottom),
            num(report.t_top),
            num(report.winding.re),
            num(report.winding.im),
            report.count,
            num(report.n_main)
        )),
    }
}

fn emit(text: &str, cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cfg.out_path {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(command: &Command, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let (args, kind) = match command {
        Command::Apoints(a) => (a, 0),
        Command::Verify(a) => (a, 1),
        Command::Curve(a) => (a, 2),
        Command::Count(a) => (a, 3),
    };
    // verify writes a JSON report unless csv is asked for
    let default_format = if kind == 1 { Format::Json } else { Format::Csv };
    let cfg = RunConfig::from_args(args, default_format)?;
    let body = || -> Result<(String, i32), CliError> {
        Ok(match kind {
            0 => (render_apoints(&apoint_rows(&cfg)?, cfg.format)?, EXIT_OK),
            1 => {
                let report = verify_report(&cfg)?;
                let code = if report.passed {
                    EXIT_OK
                } else {
                    EXIT_CHECK_FAILED
                };
                for c in report.checks.iter().filter(|c| !c.passed) {
                    error!("check {} failed: {}", c.name, c.detail);
                }
                (render_verify(&report, cfg.format)?, code)
            }
            2 => (render_curve(&curve_report(&cfg)?, cfg.format)?, EXIT_OK),
            _ => (render_count(&count_report(&cfg)?, cfg.format)?, EXIT_OK),
        })
    };
    let (text, code) = match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?
            .install(body)?,
        None => body()?,
    };
    emit(&text, &cfg, stdout)?;
    Ok(code)
}

/// Runs a parsed command line and returns the process exit code. Errors are
/// reported on the log stream, never in the data output.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> i32 {
    match execute(&cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            if let CliError::Numeric(inner) = &e {
                if let Some(branch) = inner.branch() {
                    error!("solver failure on branch {branch}");
                }
            }
            error!("{e}");
            e.exit_code()
        }
    }
}
