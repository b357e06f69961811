use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::input::{parse_grid, parse_window, Grid};

#[derive(Debug, Parser)]
#[command(
    name = "amalgam",
    version,
    about = "Amalgam norms and Fourier asymptotics of piecewise-linear functions"
)]
pub struct Cli {
    /// JSON file with defaults (tol, seed, corpus_size, workers, grid, l1_window); flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormKind {
    /// Dyadic block norm of a coefficient sequence.
    Seq,
    /// Bilateral dyadic block norm of a function.
    Fun,
    /// Unit-block norm of a function.
    Wiener,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformArg {
    Cos,
    Sin,
    T,
    Hilbert,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a norm report as JSON.
    Norm {
        /// Inline JSON or a path: a model, a step function or a sequence.
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum, default_value = "fun")]
        kind: NormKind,
        /// Absolute accuracy for the function norm.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Evaluate a transform at one point (JSON) or on a grid (CSV).
    Transform {
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum)]
        kind: TransformArg,
        #[arg(long, conflicts_with = "grid", required_unless_present = "grid")]
        at: Option<f64>,
        /// lo:hi:n, all points positive.
        #[arg(long, value_parser = parse_grid)]
        grid: Option<Grid>,
    },
    /// Tabulate transform = main term + remainder (CSV), optionally integrating |remainder|.
    Decompose {
        #[arg(long)]
        spec: String,
        /// 0 for the cosine transform, 1 for the sine transform.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        gamma: u8,
        /// lo:hi:n; defaults to the config value or 0.1:100:100.
        #[arg(long, value_parser = parse_grid)]
        grid: Option<Grid>,
        /// lo:hi window for the integral of |remainder|.
        #[arg(long, value_parser = parse_window)]
        l1_window: Option<(f64, f64)>,
        /// Where to write the remainder estimate JSON; stderr when absent.
        #[arg(long)]
        estimate: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run verification suites and print their reports as JSON.
    Verify {
        /// `all` or a claim id (see --list).
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        corpus_size: Option<usize>,
        /// Write the reports here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; AMALGAM_WORKERS and the config are consulted when absent.
        #[arg(long)]
        workers: Option<usize>,
        /// List the claim ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Tabulate a model (CSV t,f).
    Sample {
        #[arg(long)]
        spec: String,
        /// lo:hi:n; defaults to the support with 101 points.
        #[arg(long, value_parser = parse_grid)]
        grid: Option<Grid>,
    },
}
