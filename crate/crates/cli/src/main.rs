#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod table;

use table::Table;

/// Vacuum polarization of planar Dirac fermions in Coulomb and Aharonov-Bohm fields.
#[derive(Debug, Parser)]
#[command(name = "planar-vacuum", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Subcritical induced charge Q1 + Q_r (massless), optionally over a range of a.
    Qind(commands::QindArgs),
    /// Supercritical induced density profile (massless).
    Supercritical(commands::SupercriticalArgs),
    /// Screening renormalization-group flow of the effective coupling.
    Rgflow(commands::RgflowArgs),
    /// Massive induced charge Q_m(r) and real vacuum polarization density.
    Massive(commands::MassiveArgs),
    /// Bound-state spectrum of the massive Dirac-Coulomb problem.
    Spectrum(commands::SpectrumArgs),
    /// Quasistationary levels: massless ladder or the massive dived level.
    Resonance(commands::ResonanceArgs),
    /// Self-check of the special functions against closed forms.
    SpecfunCheck(commands::SpecfunCheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (standard output when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

/// Failure classes with their exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration (exit 1).
    Validation(String),
    /// Numerical method did not meet its tolerance (exit 2).
    Numerical(String),
    Io(io::Error),
}

impl From<planar_vacuum::Error> for CliError {
    fn from(e: planar_vacuum::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("PLANAR_VACUUM_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Validation(format!("PLANAR_VACUUM_THREADS = {raw:?} must be a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Validation(format!("thread pool: {e}")))
}

fn emit(table: &Table, out: &OutputArgs) -> Result<(), CliError> {
    let sink: Box<dyn Write> = match &out.output {
        Some(path) => Box::new(File::create(path).map_err(|e| {
            CliError::Validation(format!("cannot create {}: {e}", path.display()))
        })?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    match out.format {
        Format::Csv => table.write_csv(&mut sink)?,
        Format::Json => table.write_json(&mut sink)?,
    }
    sink.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let (table, out) = match cli.command {
        Command::Qind(a) => (commands::qind(&a)?, a.out),
        Command::Supercritical(a) => (commands::supercritical(&a)?, a.out),
        Command::Rgflow(a) => (commands::rgflow(&a)?, a.out),
        Command::Massive(a) => (commands::massive(&a)?, a.out),
        Command::Spectrum(a) => (commands::spectrum(&a)?, a.out),
        Command::Resonance(a) => (commands::resonance(&a)?, a.out),
        Command::SpecfunCheck(a) => {
            let table = commands::specfun_check()?;
            emit(&table, &a.out)?;
            return commands::specfun_verdict(&table);
        }
    };
    emit(&table, &out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
