use std::fmt::Write as _;
use std::path::Path;

use amalgam_core::amalgam::{function_amalgam_norm, sequence_norm_report, wiener_amalgam_norm};
use amalgam_core::asymptotics::{decompose, remainder_l1};
use amalgam_core::transforms::{fourier_transform, hilbert_transform, t_transform};
use amalgam_core::{NormReport, Piecewise, TransformKind};
use serde::Serialize;

use crate::cli::{Cli, Command, NormKind, TransformArg};
use crate::config::{resolve_workers, Config};
use crate::error::{CliError, CliResult};
use crate::input::{
    parse_grid, parse_model, parse_norm_input, parse_sequence, parse_window, Grid, NormInput,
};
use crate::pins::{REFERENCE_CORPUS, REFERENCE_SEED};
use crate::report;
use crate::suites::{self, Context, CLAIMS};

const DEFAULT_TOL: f64 = 1e-10;
const DEFAULT_DECOMPOSE_GRID: Grid = Grid { lo: 0.1, hi: 100.0, n: 100 };

/// What a command printed, and the exit code it ends with.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn from_error(err: &CliError) -> Self {
        Self { stdout: String::new(), stderr: format!("error: {err}\n"), code: err.exit_code() }
    }
}

pub fn run(cli: Cli) -> Outcome {
    let config = match Config::load(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => return Outcome::from_error(&e),
    };
    let result = match cli.command {
        Command::Norm { spec, kind, tol } => norm(&spec, kind, tol.or(config.tol)).map(stdout_only),
        Command::Transform { spec, kind, at, grid } => transform(&spec, kind, at, grid).map(stdout_only),
        Command::Decompose { spec, gamma, grid, l1_window, estimate, tol } => {
            decompose_cmd(&spec, gamma, grid, l1_window, estimate.as_deref(), tol, &config)
        }
        Command::Verify { suite, seed, corpus_size, out, workers, list } => {
            if list {
                Ok(stdout_only(CLAIMS.iter().map(|c| format!("{}\t{}\n", c.id, c.summary)).collect()))
            } else {
                verify(&suite, seed, corpus_size, out.as_deref(), workers, &config)
            }
        }
        Command::Sample { spec, grid } => sample(&spec, grid).map(stdout_only),
    };
    result.unwrap_or_else(|e| Outcome::from_error(&e))
}

fn stdout_only(stdout: String) -> Outcome {
    Outcome { stdout, ..Outcome::default() }
}

fn check_tol(tol: f64) -> CliResult<f64> {
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(CliError::Usage(format!("tolerance must be positive and finite, got {tol}")))
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output serializes");
    text.push('\n');
    text
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

#[derive(Serialize)]
struct NormOutput {
    kind: &'static str,
    #[serde(flatten)]
    report: NormReport,
}

fn norm(spec: &str, kind: NormKind, tol: Option<f64>) -> CliResult<String> {
    let tol = check_tol(tol.unwrap_or(DEFAULT_TOL))?;
    let (kind, report) = match kind {
        NormKind::Seq => ("seq", sequence_norm_report(&parse_sequence(spec)?)),
        NormKind::Fun => (
            "fun",
            match parse_norm_input(spec)? {
                NormInput::Linear(g) => function_amalgam_norm(&g, tol)?,
                NormInput::Steps(g) => function_amalgam_norm(&g, tol)?,
            },
        ),
        NormKind::Wiener => {
            let value = match parse_norm_input(spec)? {
                NormInput::Linear(g) => wiener_amalgam_norm(&g),
                NormInput::Steps(g) => wiener_amalgam_norm(&g),
            };
            let report = NormReport {
                value,
                tail_bound: 0.0,
                m_lo: 0,
                m_hi: 0,
                per_scale: vec![(0, value)],
                block_cap: 0.0,
            };
            ("wiener", report)
        }
    };
    Ok(to_json(&NormOutput { kind, report }))
}

fn transform(spec: &str, kind: TransformArg, at: Option<f64>, grid: Option<Grid>) -> CliResult<String> {
    let model = parse_model(spec)?;
    let eval = |x: f64| -> CliResult<f64> {
        if !(x > 0.0) {
            return Err(CliError::Usage(format!("evaluation point must be positive, got {x}")));
        }
        Ok(match kind {
            TransformArg::Cos => fourier_transform(&model, TransformKind::Cosine, x)?,
            TransformArg::Sin => fourier_transform(&model, TransformKind::Sine, x)?,
            TransformArg::T => t_transform(&model, x)?,
            TransformArg::Hilbert => hilbert_transform(&model, x)?,
        })
    };
    let name = match kind {
        TransformArg::Cos => "cos",
        TransformArg::Sin => "sin",
        TransformArg::T => "t",
        TransformArg::Hilbert => "hilbert",
    };
    if let Some(grid) = grid {
        grid.require_positive()?;
        let mut csv = String::from("x,value\n");
        for x in grid.points() {
            writeln!(csv, "{x},{}", eval(x)?).expect("string write");
        }
        return Ok(csv);
    }
    let x = at.ok_or_else(|| CliError::Usage("one of --at or --grid is required".into()))?;
    Ok(to_json(&serde_json::json!({ "kind": name, "x": x, "value": eval(x)? })))
}

fn config_grid(flag: Option<Grid>, config: Option<&str>, fallback: Grid) -> CliResult<Grid> {
    match (flag, config) {
        (Some(g), _) => Ok(g),
        (None, Some(text)) => parse_grid(text).map_err(|e| CliError::Usage(format!("config grid: {e}"))),
        (None, None) => Ok(fallback),
    }
}

fn decompose_cmd(
    spec: &str,
    gamma: u8,
    grid: Option<Grid>,
    window: Option<(f64, f64)>,
    estimate_path: Option<&Path>,
    tol: Option<f64>,
    config: &Config,
) -> CliResult<Outcome> {
    let model = parse_model(spec)?;
    let kind = TransformKind::from_gamma(gamma)?;
    let grid = config_grid(grid, config.grid.as_deref(), DEFAULT_DECOMPOSE_GRID)?;
    grid.require_positive()?;
    let window = match (window, config.l1_window.as_deref()) {
        (Some(w), _) => Some(w),
        (None, Some(text)) => {
            Some(parse_window(text).map_err(|e| CliError::Usage(format!("config l1_window: {e}")))?)
        }
        (None, None) => None,
    };
    let tol = check_tol(tol.or(config.tol).unwrap_or(1e-8))?;
    let mut csv = String::from("x,transform,main,remainder\n");
    for x in grid.points() {
        let d = decompose(&model, kind, x)?;
        writeln!(csv, "{},{},{},{}", d.x, d.transform_value, d.main_term, d.remainder).expect("string write");
    }
    let mut outcome = stdout_only(csv);
    if let Some((lo, hi)) = window {
        let estimate = to_json(&remainder_l1(&model, kind, lo, hi, tol)?);
        match estimate_path {
            Some(path) => write_file(path, &estimate)?,
            None => outcome.stderr = estimate,
        }
    }
    Ok(outcome)
}

fn verify(
    suite: &str,
    seed: Option<u64>,
    corpus_size: Option<usize>,
    out: Option<&Path>,
    workers: Option<usize>,
    config: &Config,
) -> CliResult<Outcome> {
    let seed = seed.or(config.seed).unwrap_or(REFERENCE_SEED);
    let corpus_size = corpus_size.or(config.corpus_size).unwrap_or(REFERENCE_CORPUS);
    let ctx = Context::new(seed, corpus_size, resolve_workers(workers, config)?)?;
    let reports = suites::run_suite(suite, &ctx)?;
    let json = report::to_json(&reports) + "\n";
    let failed = reports.iter().filter(|r| !r.passed).count();
    let mut outcome = match out {
        Some(path) => {
            write_file(path, &json)?;
            stdout_only(format!(
                "{} reports, {failed} failed, written to {}\n",
                reports.len(),
                path.display()
            ))
        }
        None => stdout_only(json),
    };
    if failed > 0 {
        let err = CliError::VerificationFailed { failed, total: reports.len() };
        outcome.stderr = format!("{err}\n");
        outcome.code = err.exit_code();
    }
    Ok(outcome)
}

fn sample(spec: &str, grid: Option<Grid>) -> CliResult<String> {
    let model = parse_model(spec)?;
    let grid = grid.unwrap_or_else(|| {
        let (t0, tk) = model.support();
        Grid { lo: t0, hi: tk, n: 101 }
    });
    let mut csv = String::from("t,f\n");
    for t in grid.points() {
        writeln!(csv, "{t},{}", model.evaluate(t)).expect("string write");
    }
    Ok(csv)
}
