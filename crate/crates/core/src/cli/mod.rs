//! Command-line front end: `key = value` configs, sweeps and CSV output.
//!
//! Exit codes: 0 on success, 1 for configuration and I/O problems, 2 when a
//! numeric layer fails. Tables are computed in full before anything is
//! written, so a failed run leaves no partial output.

pub mod config;
pub mod csv;
pub mod run;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::Parser;

pub use config::{parse_config, Command, RunConfig, SweepSpec, Value};
pub use csv::{emit_csv, format_value, render_csv, OutputTable};
pub use run::{run_command, run_sweep};

use crate::error::Error;

/// Failure of a CLI run, carrying its exit code class.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("numeric error: {0}")]
    Numeric(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(msg) => CliError::Config(msg),
            other => CliError::Numeric(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Numeric(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "propertime",
    version,
    about = "Pair creation, Gamow spectra and proper-time kernels in a constant electric field"
)]
struct Args {
    /// Computation to run.
    #[arg(value_enum)]
    command: Command,
    /// `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a configuration key; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output path, `-` for standard output.
    #[arg(long)]
    out: Option<String>,
    /// Sweep one key over a list, e.g. `chi=0.5,1,2`.
    #[arg(long, value_name = "KEY=V1,V2,...")]
    sweep: Option<String>,
}

fn execute(args: Args) -> Result<(), CliError> {
    let cfg = parse_config(args.command, args.config.as_deref(), &args.set)?;
    let out = args
        .out
        .or_else(|| cfg.text("out_path").map(str::to_string))
        .unwrap_or_else(|| "-".into());
    let table = match args.sweep {
        Some(text) => run_sweep(&cfg, &SweepSpec::parse(&text)?)?,
        None => run_command(&cfg)?,
    };
    if table.rows().iter().flatten().any(|v| !v.is_finite()) {
        return Err(CliError::Numeric(Error::NonFinite("output table")));
    }
    emit_csv(&table, &out)
}

/// Parses `argv`, runs, and returns the process exit code.
pub fn main_with_args<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(args) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("propertime: {e}");
            e.exit_code()
        }
    }
}
