use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgGroup, Parser};

use randic::bmatching::{solve_bmatching, Objective};
use randic::io;

/// Perfect b-matching of minimum or maximum total weight.
#[derive(Parser)]
#[command(name = "bmatch", version)]
#[command(group(ArgGroup::new("objective").required(true).args(["min", "max"])))]
struct Args {
    #[arg(long)]
    min: bool,
    #[arg(long)]
    max: bool,
    /// `n m`, then the b-vector, then `m` lines `i j w`
    instance: PathBuf,
}

fn run() -> Result<ExitCode> {
    let args = Args::parse();
    let text = std::fs::read_to_string(&args.instance)
        .with_context(|| format!("reading {}", args.instance.display()))?;
    let inst = io::parse_instance(&text)?;
    let objective = if args.max { Objective::Max } else { Objective::Min };
    match solve_bmatching(&inst, objective, &Default::default())? {
        Some(m) => {
            print!("{}", io::format_matching(&m));
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!("infeasible");
            Ok(ExitCode::from(2))
        }
    }
}

fn main() -> Result<ExitCode> {
    run()
}
