//! `fnf`: reads a problem file, runs one stage of the pipeline (or all of
//! them), and writes `report.json` plus CSV plot data into `--out`.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fnf_core::problem::Convention;
use fnf_core::Error;

#[derive(Parser, Debug)]
#[command(name = "fnf", version, about = "Correction series and linearization maps for two-singularity Fuchsian systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Check,
    Linearize,
    Kam,
    Verify,
    Diagnose,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalue assumptions and saddle geometry.
    Check(Flags),
    /// Direct order-by-order correction series and linearization map.
    Linearize(Flags),
    /// KAM-style iteration, cross-validated against the direct recursion.
    Kam(Flags),
    /// Conjugacy residuals and monodromy along complex paths.
    Verify(Flags),
    /// Asymptotics of the weighted averages and step-bound fits.
    Diagnose(Flags),
    /// Every stage in turn.
    All(Flags),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Homolog,
    Perfuchs,
}

#[derive(Args, Debug, Clone)]
pub struct Flags {
    /// Problem file (JSON, schema "fnf-problem/1").
    #[arg(long)]
    pub input: PathBuf,
    /// Truncation order N, overriding the file.
    #[arg(long)]
    pub order: Option<usize>,
    /// Output directory for report.json and CSV files.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_enum)]
    convention: Option<ConventionArg>,
    /// Local error tolerance of the path integrator.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long)]
    pub delta1: Option<f64>,
}

impl Flags {
    pub fn convention(&self) -> Option<Convention> {
        self.convention.map(|c| match c {
            ConventionArg::Homolog => Convention::Homolog,
            ConventionArg::Perfuchs => Convention::Perfuchs,
        })
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_ASSUMPTION: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Invalid { .. } | Error::Json(_) | Error::Io(_) => EXIT_USAGE,
        Error::Assumption(_) | Error::ResonantDirection { .. } | Error::NearResonance { .. } | Error::Schedule(_) => EXIT_ASSUMPTION,
        _ => EXIT_NUMERIC,
    }
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("FNF_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("FNF_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("FNF_THREADS must be a positive integer, got 0".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Err(msg) = init_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    let (stage, flags) = match cli.command {
        Command::Check(f) => (Stage::Check, f),
        Command::Linearize(f) => (Stage::Linearize, f),
        Command::Kam(f) => (Stage::Kam, f),
        Command::Verify(f) => (Stage::Verify, f),
        Command::Diagnose(f) => (Stage::Diagnose, f),
        Command::All(f) => (Stage::All, f),
    };

    let run = commands::run(stage, &flags);
    if let Some(report) = &run.report {
        if let Err(e) = output::write_all(&flags.out, report, &run.csv) {
            eprintln!("error: writing outputs to {}: {e}", flags.out.display());
            return ExitCode::from(EXIT_USAGE);
        }
    }
    if let Some(e) = &run.error {
        eprintln!("error: {e}");
        return ExitCode::from(exit_code(e));
    }
    let report = run.report.as_ref().expect("report without error");
    let failures = report.failures();
    if failures.is_empty() {
        println!("{}: all {} checks passed", report.subcommand, report.checks.len());
        ExitCode::SUCCESS
    } else {
        for c in failures {
            eprintln!("FAIL {}: {} (tolerance {} {})", c.name, c.value, c.relation, c.tolerance);
        }
        ExitCode::from(EXIT_NUMERIC)
    }
}
