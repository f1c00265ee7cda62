//! Batch front end: JSON in, JSON or CSV out.
//!
//! Exit codes: 0 success, 1 a residual above its threshold, 2 input or
//! configuration error, 3 numerical failure (pole, small divisor,
//! non-convergence).

mod commands;
mod input;
mod output;
mod suites;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::error::Error;
use crate::oracle::QuadratureConfig;
use crate::special::Precision;

pub use suites::{run_suite, SuiteRow, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RESIDUAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Closed-form values: generalized Selberg, classical Selberg, loop Beta.
    Eval,
    /// Quadrature oracles with error estimates.
    Oracle,
    /// Run a verification suite; exit 0 iff every residual passes.
    Verify,
    /// Channel bookkeeping: s, a, A, μ, η and genericity.
    Channel,
    /// Harish-Chandra series dump with eigen-residuals.
    Series,
}

#[derive(Debug, Parser)]
#[command(
    name = "selberg",
    version,
    about = "Generalized Selberg integrals: closed forms and numerical checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON file path, `-` for stdin, or inline JSON.
    #[arg(long, global = true)]
    pub input: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Absolute quadrature tolerance (overrides the input `config`).
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    /// Relative quadrature tolerance (overrides the input `config`).
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    /// double | extended
    #[arg(long, global = true, value_parser = Precision::parse)]
    pub precision: Option<Precision>,
    /// Seed for parameter draws in `verify` and the Monte Carlo fallback.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Suite for `verify`: example2, two_variable, four_index, three_index,
    /// series, sekiguchi, monomial or all.
    #[arg(long, global = true, default_value = "all")]
    pub suite: String,
    /// Also write residual-vs-parameter CSV rows to this file (`verify`).
    #[arg(long, global = true)]
    pub emit_plot_data: Option<PathBuf>,
}

/// Resolved invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<Value>,
    pub format: Format,
    pub quadrature: QuadratureConfig,
    pub precision: Precision,
    pub seed: u64,
    pub suite: String,
    pub emit_plot_data: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, Error> {
        let input = cli.input.as_deref().map(input::read_input).transpose()?;
        let precision = cli.precision.unwrap_or_default();
        let mut quadrature = match input.as_ref().and_then(|v| v.get("config")) {
            Some(c) => serde_json::from_value(c.clone())?,
            None => QuadratureConfig::default(),
        };
        if let Some(t) = cli.abs_tol {
            quadrature.abs_tol = t;
        }
        if let Some(t) = cli.rel_tol {
            quadrature.rel_tol = t;
        }
        if cli.precision.is_some() {
            quadrature.precision = precision;
        }
        quadrature.seed = cli.seed;
        quadrature.validate()?;
        Ok(Self {
            command: cli.command,
            input,
            format: cli.format,
            quadrature,
            precision,
            seed: cli.seed,
            suite: cli.suite,
            emit_plot_data: cli.emit_plot_data,
        })
    }
}

fn error_status(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_INPUT
    }
}

fn failure(e: &Error) -> RunOutput {
    RunOutput {
        status: error_status(e),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

/// Executes one command.
pub fn run(cfg: &RunConfig) -> RunOutput {
    let result = match cfg.command {
        Command::Eval => commands::eval(cfg).map(|v| (v, EXIT_OK)),
        Command::Oracle => commands::oracle(cfg).map(|v| (v, EXIT_OK)),
        Command::Channel => commands::channel(cfg).map(|v| (v, EXIT_OK)),
        Command::Series => commands::series(cfg).map(|v| (v, EXIT_OK)),
        Command::Verify => commands::verify(cfg),
    };
    let (value, status) = match result {
        Ok(x) => x,
        Err(e) => return failure(&e),
    };
    match output::render(&value, cfg.format) {
        Ok(stdout) => RunOutput {
            status,
            stdout,
            stderr: String::new(),
        },
        Err(e) => failure(&e),
    }
}

/// Parses `args` (including the program name) and runs.
pub fn run_args<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if status == EXIT_OK {
                RunOutput {
                    status,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                RunOutput {
                    status,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match RunConfig::from_cli(cli) {
        Ok(cfg) => run(&cfg),
        Err(e) => failure(&e),
    }
}
