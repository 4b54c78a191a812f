use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use num_complex::Complex64;
use qjacobi::harness::{self, Summary};

#[derive(Parser)]
#[command(name = "qjacobi", version, about = "Evaluate continuous q-Jacobi machinery and verify its identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one identity (or an id prefix such as `kernel`) or the whole registry.
    Verify {
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        identity: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Override every selected identity's default tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Write the JSON report here (an array when several identities run).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// List registered identities.
    List,
    /// Evaluate a function at one point.
    Eval {
        /// Function name; `eval --function help` lists them.
        #[arg(long)]
        function: String,
        /// Comma-separated `k=v` pairs.
        #[arg(long, default_value = "")]
        params: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::List => {
            for rec in harness::registry() {
                let tag = if rec.report_only { " [report-only]" } else { "" };
                println!("{:<34} tol {:<7.0e} {}{}", rec.id, rec.default_tol, rec.notes, tag);
            }
            Ok(true)
        }
        Command::Eval { function, params } => {
            if function == "help" {
                for (name, args) in harness::FUNCTIONS {
                    println!("{name:<26} {args}");
                }
                return Ok(true);
            }
            let p = harness::parse_params(&params)?;
            let v = Complex64::from(harness::evaluate(&function, &p)?);
            if v.im == 0.0 {
                println!("{:.16e}", v.re);
            } else {
                println!("{:.16e} {:+.16e}i", v.re, v.im);
            }
            Ok(true)
        }
        Command::Verify { identity, all, trials, seed, tol, report } => {
            let filter = if all { "all".to_string() } else { identity.unwrap_or_default() };
            let records = harness::select(&filter)?;
            let summary = harness::run_records(&records, trials, seed, tol);
            println!("{summary}");
            if let Some(path) = report {
                write_report(&path, &summary, all || records.len() > 1)?;
            }
            Ok(summary.passed())
        }
    }
}

fn write_report(path: &PathBuf, summary: &Summary, many: bool) -> anyhow::Result<()> {
    let reports = summary.reports();
    let json = match (many, reports.as_slice()) {
        (false, [one]) => serde_json::to_string_pretty(one)?,
        (true, all) => serde_json::to_string_pretty(all)?,
        _ => bail!("no report to write"),
    };
    std::fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))
}
