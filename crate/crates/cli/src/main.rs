//! `wcurv`: command-line driver for the weighted curvature workflows.
//!
//! Exit status: 0 when the check holds, 2 when it is violated or
//! infeasible, 1 on input errors.

mod commands;
mod config;
mod error;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Parser;
use serde::Serialize;
use serde_json::Value;

use commands::{Outcome, Table};
use config::{Command, Config};
use error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "wcurv", version, about = "Weighted sectional curvature of warped products with density")]
struct Args {
    command: Command,
    /// JSON config; optional for `gallery`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output prefix; reports go to `<prefix>.json` (and `<prefix>.csv`).
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    /// Gallery entry, e.g. `cusp(A=4)`.
    #[arg(long)]
    name: Option<String>,
    /// With `gallery --name`, print a `certify` config for the entry instead.
    #[arg(long)]
    emit_config: bool,
}

#[derive(Serialize)]
struct Meta {
    version: &'static str,
    generated_unix: u64,
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'static str,
    status: &'static str,
    passed: bool,
    seed: u64,
    config: &'a Config,
    result: &'a Value,
    /// Excluded from reproducibility comparisons.
    meta: Meta,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("WCURV_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Input(format!("WCURV_THREADS must be a positive integer, got `{raw}`")))?;
    // Fails only if a pool already exists, which cannot happen this early.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn load_config(args: &Args) -> Result<Config, CliError> {
    let mut cfg = match &args.input {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read `{}`: {e}", path.display())))?;
            Config::parse(&text, args.command)?
        }
        None if args.command == Command::Gallery => Config::default(),
        None => return Err(CliError::Input(format!("`{}` needs --input", args.command.name()))),
    };
    let keys = args.command.keys();
    let flag = |name: &str, present: bool| -> Result<bool, CliError> {
        if present && !keys.contains(&name) {
            return Err(CliError::Input(format!("--{name} does not apply to `{}`", args.command.name())));
        }
        Ok(present)
    };
    if flag("grid", args.grid.is_some())? {
        cfg.grid = args.grid;
    }
    if flag("samples", args.samples.is_some())? {
        cfg.samples = args.samples;
    }
    if args.seed.is_some() && keys.contains(&"seed") {
        cfg.seed = args.seed;
    }
    Ok(cfg)
}

fn write_file(path: PathBuf, body: &[u8]) -> Result<(), CliError> {
    fs::write(&path, body).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn csv_bytes(table: &Table) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io { path: "csv".into(), source: e.into() };
    w.write_record(&table.headers).map_err(io)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|v| v.to_string())).map_err(io)?;
    }
    w.into_inner().map_err(|e| CliError::Io { path: "csv".into(), source: e.into_error() })
}

fn with_extension(prefix: &PathBuf, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn emit(args: &Args, outcome: &Outcome) -> Result<(), CliError> {
    let seed = outcome.config.seed.or(args.seed).unwrap_or(0);
    let generated_unix = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let report = Report {
        command: args.command.name(),
        status: outcome.status,
        passed: outcome.passed,
        seed,
        config: &outcome.config,
        result: &outcome.result,
        meta: Meta { version: env!("CARGO_PKG_VERSION"), generated_unix },
    };
    let mut json = serde_json::to_vec_pretty(&report).expect("reports serialize");
    json.push(b'\n');
    let csv = match args.format {
        Format::Json => None,
        Format::Csv => {
            let table = outcome.table.as_ref().ok_or_else(|| {
                CliError::Input(format!("`{}` has no per-point curves; use --format json", args.command.name()))
            })?;
            Some(csv_bytes(table)?)
        }
    };
    match (&args.output, csv) {
        (Some(prefix), csv) => {
            write_file(with_extension(prefix, "json"), &json)?;
            if let Some(csv) = csv {
                write_file(with_extension(prefix, "csv"), &csv)?;
            }
        }
        (None, Some(csv)) => std::io::stdout().write_all(&csv).map_err(|source| CliError::Io { path: "stdout".into(), source })?,
        (None, None) => std::io::stdout().write_all(&json).map_err(|source| CliError::Io { path: "stdout".into(), source })?,
    }
    Ok(())
}

fn emit_gallery_config(args: &Args) -> Result<(), CliError> {
    let name = args.name.as_deref().ok_or_else(|| CliError::Input("--emit-config needs --name".into()))?;
    let mut body = serde_json::to_vec_pretty(&commands::gallery_config(name)?).expect("configs serialize");
    body.push(b'\n');
    match &args.output {
        Some(prefix) => write_file(with_extension(prefix, "json"), &body),
        None => std::io::stdout().write_all(&body).map_err(|source| CliError::Io { path: "stdout".into(), source }),
    }
}

fn run(args: &Args) -> Result<bool, CliError> {
    configure_threads()?;
    if args.emit_config {
        if args.command != Command::Gallery {
            return Err(CliError::Input("--emit-config applies to `gallery` only".into()));
        }
        emit_gallery_config(args)?;
        return Ok(true);
    }
    if args.name.is_some() && args.command != Command::Gallery {
        return Err(CliError::Input("--name applies to `gallery` only".into()));
    }
    let cfg = load_config(args)?;
    let outcome = commands::run(args.command, cfg, args.name.clone())?;
    emit(args, &outcome)?;
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("wcurv: {e}");
            ExitCode::from(1)
        }
    }
}
