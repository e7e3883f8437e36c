//! Batch front end for the pmat engine. One job per invocation, JSON in,
//! JSON out; exit code 0 on success, 2 on a definite negative verdict
//! (unsolvable system, non-invertible ideal test, false predicate), 1 on any
//! error.

mod json;
mod run;

use std::fs;
use std::io::Read as _;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::Value;

use pmat::{Error, HermiteConfig};

use crate::json::parse_domain;
use crate::run::{run_hermite, run_ideal_op, run_module, run_smith, run_solve, Options, Outcome};

#[derive(Parser)]
#[command(name = "pmat", about = "Pseudo-matrix calculus over Z and quadratic orders")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Domain descriptor file; overrides the job's own "domain" key.
    #[arg(long, global = true)]
    domain_file: Option<String>,

    /// Job file (defaults to stdin).
    #[arg(long, global = true)]
    job_file: Option<String>,

    /// Output file (defaults to stdout).
    #[arg(long, global = true)]
    out: Option<String>,

    /// Indent the JSON output and add a human-readable rendering.
    #[arg(long, global = true)]
    pretty: bool,

    /// Disable the divisibility fast path in the reductions.
    #[arg(long, global = true)]
    bezout_only: bool,

    /// Matrix dimension guard.
    #[arg(long, global = true, default_value_t = 64)]
    max_dim: usize,
}

#[derive(Subcommand)]
enum Command {
    /// One-sided Hermite reduction L·A·C = H.
    Hermite,
    /// Two-sided Hermite reduction (residual block cleared).
    DoubleHermite,
    /// Smith reduction with invariant-ideal chain.
    Smith,
    /// Linear system A·X = B over a pseudo-matrix.
    Solve,
    /// Cokernel structure: free rank and invariant ideals.
    Module,
    /// Binary and unary ideal operations.
    IdealOp,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Hermite => "hermite",
            Command::DoubleHermite => "double-hermite",
            Command::Smith => "smith",
            Command::Solve => "solve",
            Command::Module => "module",
            Command::IdealOp => "ideal-op",
        }
    }
}

fn read_job(cli: &Cli) -> Result<Value> {
    let text = match &cli.job_file {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {}", path))?,
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
            buf
        }
    };
    serde_json::from_str(&text).context("job is not valid JSON")
}

fn emit(cli: &Cli, doc: &Value) -> Result<()> {
    let text = if cli.pretty {
        serde_json::to_string_pretty(doc)?
    } else {
        serde_json::to_string(doc)?
    };
    match &cli.out {
        Some(path) => {
            fs::write(path, format!("{}\n", text)).with_context(|| format!("writing {}", path))?
        }
        None => println!("{}", text),
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let job = read_job(cli)?;
    if let Some(cmd) = job.get("command").and_then(Value::as_str) {
        if cmd != cli.command.name() {
            bail!("job names command {:?} but {:?} was invoked", cmd, cli.command.name());
        }
    }
    let dom = match &cli.domain_file {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path))?;
            let v: Value = serde_json::from_str(&text).context("domain file is not valid JSON")?;
            parse_domain(&v)?
        }
        None => {
            let v = job
                .get("domain")
                .ok_or_else(|| anyhow!("no domain: pass --domain-file or a \"domain\" key"))?;
            parse_domain(v)?
        }
    };
    let opts = Options {
        cfg: HermiteConfig { bezout_only: cli.bezout_only },
        max_dim: cli.max_dim,
        pretty: cli.pretty,
    };
    let outcome = match cli.command {
        Command::Hermite => run_hermite(&dom, &job, &opts, false)?,
        Command::DoubleHermite => run_hermite(&dom, &job, &opts, true)?,
        Command::Smith => run_smith(&dom, &job, &opts)?,
        Command::Solve => run_solve(&dom, &job, &opts)?,
        Command::Module => run_module(&dom, &job, &opts)?,
        Command::IdealOp => run_ideal_op(&dom, &job, &opts)?,
    };
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(outcome) => {
            if emit(&cli, &outcome.doc).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(err) => {
            // A definite negative from the engine keeps the exit-code
            // contract even when it surfaces as an error value.
            if let Some(Error::Negative(msg)) = err.downcast_ref::<Error>() {
                let doc = serde_json::json!({ "negative": msg });
                let _ = emit(&cli, &doc);
                return ExitCode::from(2);
            }
            eprintln!("pmat {}: {:#}", cli.command.name(), err);
            ExitCode::from(1)
        }
    }
}
