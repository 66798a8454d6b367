//! `modheight`: compute modular polynomials, their heights and bounds, and run
//! the machine checks.
//!
//! Exit codes: 0 success, 1 a verification found a counterexample, 2 an
//! internal consistency check failed, 3 usage or range error.

mod bounds_cmd;
mod phi;
mod verify;

use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use modheight::Error;

#[derive(Parser, Debug)]
#[command(name = "modheight", version, about = "Heights of classical modular polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Modular polynomials and their height table.
    #[command(subcommand)]
    Phi(PhiCommand),
    /// Explicit upper bounds on the height.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Run machine checks.
    Verify(verify::VerifyArgs),
    /// Farey partitions.
    #[command(subcommand)]
    Farey(FareyCommand),
}

#[derive(Subcommand, Debug)]
enum PhiCommand {
    /// Compute Phi_l and write it in canonical text form.
    Compute(phi::ComputeArgs),
    /// Per-prime height statistics as a table.
    Table(phi::TableArgs),
}

#[derive(Subcommand, Debug)]
enum BoundsCommand {
    /// Evaluate the bounds for one l or a range, one JSON object per line.
    Eval(bounds_cmd::EvalArgs),
}

#[derive(Subcommand, Debug)]
enum FareyCommand {
    /// Print the order-N partition, one interval per line.
    Dump {
        #[arg(short = 'N', long = "order")]
        n: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Text,
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 3, msg: msg.into() }
    }

    pub fn counterexample(msg: impl Into<String>) -> Self {
        Failure { code: 1, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::MemoryBudget(_) => 3,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 2, msg: e.to_string() }
    }
}

pub type CliResult<T = ()> = std::result::Result<T, Failure>;

/// Parses `a..b` (inclusive) or a single integer.
pub fn parse_range(s: &str) -> std::result::Result<RangeInclusive<u64>, String> {
    let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("bad bound '{t}': {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Phi(PhiCommand::Compute(a)) => phi::compute(a),
        Command::Phi(PhiCommand::Table(a)) => phi::table(a),
        Command::Bounds(BoundsCommand::Eval(a)) => bounds_cmd::eval(a),
        Command::Verify(a) => verify::run(a),
        Command::Farey(FareyCommand::Dump { n }) => {
            let p = modheight::farey::build_partition(n)?;
            print!("{}", p.dump());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
