//! `torus-wh`: Wiener-Hopf factorization on the contour of a genus-one surface,
//! from the command line. Results are JSON documents (schema "torus-wh/1").

mod commands;
mod job;
mod output;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use commands::{Command, Outcome};
use job::Job;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "torus-wh", version, about = "Wiener-Hopf factorization on a genus-one Riemann surface")]
struct Cli {
    #[command(subcommand)]
    command: Option<Sub>,
    /// Read the job from a JSON file; flags override its fields.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Write the result document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Sheet indices, invariant, region and factorization kind of a scalar symbol.
    Classify(Job),
    /// Factorize a scalar symbol.
    FactorScalar(Job),
    /// Wiener-Hopf factorization of a 2x2 symbol [[alpha, delta], [q delta, alpha]].
    FactorMatrix(Job),
    /// Kernel of the Toeplitz operator with a 2x2 symbol.
    Kernel(Job),
    /// Indices and invariant of a building block.
    Blocks(Job),
    /// Elliptic periods, lattice and branch points.
    Elliptic(Job),
    /// Factorize a scalar symbol and fail (exit 2) if the checks do not pass.
    Verify(Job),
}

impl Sub {
    fn split(self) -> (Command, Job) {
        match self {
            Sub::Classify(j) => (Command::Classify, j),
            Sub::FactorScalar(j) => (Command::FactorScalar, j),
            Sub::FactorMatrix(j) => (Command::FactorMatrix, j),
            Sub::Kernel(j) => (Command::Kernel, j),
            Sub::Blocks(j) => (Command::Blocks, j),
            Sub::Elliptic(j) => (Command::Elliptic, j),
            Sub::Verify(j) => (Command::Verify, j),
        }
    }
}

fn execute(cli: Cli) -> Result<Outcome> {
    let file_job = match &cli.json {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str::<Job>(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => Job::default(),
    };
    let (cmd, job) = match cli.command {
        Some(sub) => {
            let (cmd, flags) = sub.split();
            (cmd, file_job.overlay(&flags))
        }
        None => {
            let name = file_job
                .command
                .clone()
                .context("no subcommand given and the job file has no \"command\" field")?;
            (Command::from_name(&name)?, file_job)
        }
    };
    let outcome = commands::run(cmd, &job)?;
    let text = serde_json::to_string_pretty(&outcome.doc)? + "\n";
    match &cli.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(o) => ExitCode::from(o.code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
