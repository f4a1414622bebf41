use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use cyclic_homology::cli::{error_json, parse, run, Command};
use cyclic_homology::Error;

/// Hochschild and cyclic homology of a presented commutative algebra.
#[derive(Parser, Debug)]
#[command(name = "cyhom", version)]
struct Args {
    /// Job file; standard input when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Command, overriding the job's `cmd` line: hh, hc, layers, oracle,
    /// compare, "witness24 p=<int>", selftest.
    #[arg(long)]
    cmd: Option<String>,
    /// Highest degree, overriding the job's `nmax` line.
    #[arg(long)]
    nmax: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Seed for the randomized checks of `selftest`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_ERROR: u8 = 2;

fn read_input(args: &Args) -> std::io::Result<String> {
    match &args.input {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn emit(args: &Args, value: &serde_json::Value) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize") + "\n";
    match &args.json {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fail(args: &Args, e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    let _ = emit(args, &error_json(e));
    ExitCode::from(EXIT_ERROR)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match read_input(&args) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read input: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    };
    let mut job = match parse(&text) {
        Ok(j) => j,
        Err(e) => return fail(&args, &e),
    };
    for w in &job.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(n) = args.nmax {
        job.n_max = n;
    }
    let cmd = match args.cmd.as_deref().map(str::parse::<Command>) {
        None => None,
        Some(Ok(c)) => Some(c),
        Some(Err(m)) => {
            return fail(
                &args,
                &Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("--cmd: {m}"),
                },
            )
        }
    };
    match run(&job, cmd, args.seed) {
        Ok(report) => {
            if let Err(e) = emit(&args, &report.json) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(EXIT_ERROR);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            }
        }
        Err(e) => fail(&args, &e),
    }
}
