use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use rayon::prelude::*;

use modheight::arith::{is_prime, primes_in};
use modheight::modpoly::{
    height, table_stats, write_atomic, CacheOutcome, HeightConvention, HeightReport, PhiCache, PhiConfig, Strategy,
    DEFAULT_MAX_L,
};

use crate::{CliResult, Failure, Format};

/// Hard ceiling for `--max-l`; beyond this the q-expansion method is impractical.
const ABSOLUTE_MAX_L: u64 = 199;

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[arg(short = 'l')]
    l: u64,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest l accepted (at most 199).
    #[arg(long, default_value_t = DEFAULT_MAX_L)]
    max_l: u64,
    #[arg(long, value_enum, default_value_t = StrategyArg::Linear)]
    strategy: StrategyArg,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Include every prime up to this bound.
    #[arg(long)]
    max_l: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Append the exact height and the statistics it gives.
    #[arg(long)]
    extended: bool,
    #[arg(long, value_enum, default_value_t = StrategyArg::Linear)]
    strategy: StrategyArg,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum StrategyArg {
    Linear,
    Reduction,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Linear => Strategy::LinearSolve,
            StrategyArg::Reduction => Strategy::JReduction,
        }
    }
}

fn config(max_l: u64) -> CliResult<PhiConfig> {
    if max_l > ABSOLUTE_MAX_L {
        return Err(Failure::usage(format!("--max-l {max_l} exceeds {ABSOLUTE_MAX_L}")));
    }
    if max_l > DEFAULT_MAX_L {
        eprintln!("warning: l above {DEFAULT_MAX_L} takes minutes to hours per prime");
    }
    Ok(PhiConfig { max_l })
}

pub fn compute(a: ComputeArgs) -> CliResult {
    let cfg = config(a.max_l)?;
    if !is_prime(a.l) {
        return Err(Failure::usage(format!("l = {} is not prime", a.l)));
    }
    if a.l > cfg.max_l {
        return Err(Failure::usage(format!("l = {} exceeds --max-l {}", a.l, cfg.max_l)));
    }
    let cache = PhiCache::from_env();
    let start = Instant::now();
    let (p, outcome) = cache.get_or_compute(a.l, a.strategy.into(), &cfg)?;
    eprintln!("l = {}: {} in {:.2?}", a.l, outcome_name(outcome), start.elapsed());
    let text = p.serialize();
    match a.out {
        Some(path) => write_atomic(&path, text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(())
}

fn outcome_name(o: CacheOutcome) -> &'static str {
    match o {
        CacheOutcome::Hit => "cache hit",
        CacheOutcome::Miss => "computed",
        CacheOutcome::Recomputed => "cache entry invalid, recomputed",
    }
}

/// Height reports for the given primes, computed in parallel through the cache.
pub fn reports(primes: &[u64], strategy: Strategy, cfg: &PhiConfig) -> CliResult<Vec<HeightReport>> {
    let cache = PhiCache::from_env();
    primes
        .par_iter()
        .map(|&l| {
            let start = Instant::now();
            let (p, outcome) = cache.get_or_compute(l, strategy, cfg)?;
            eprintln!("l = {l}: {} in {:.2?}", outcome_name(outcome), start.elapsed());
            Ok(height(&p))
        })
        .collect::<Result<Vec<_>, modheight::Error>>()
        .map_err(Failure::from)
}

pub fn table(a: TableArgs) -> CliResult {
    let cfg = config(a.max_l.max(DEFAULT_MAX_L).min(ABSOLUTE_MAX_L))?;
    if a.max_l > ABSOLUTE_MAX_L {
        return Err(Failure::usage(format!("--max-l {} exceeds {ABSOLUTE_MAX_L}", a.max_l)));
    }
    let primes = primes_in(2, a.max_l);
    let rows = reports(&primes, a.strategy.into(), &cfg)?;
    print!("{}", render_table(&rows, a.format, a.extended));
    Ok(())
}

pub fn render_table(rows: &[HeightReport], format: Format, extended: bool) -> String {
    let mut out = String::new();
    let header: &[&str] =
        if extended { &["l", "h2", "c_l", "r_l", "h", "c_l_exact", "r_l_exact"] } else { &["l", "h2", "c_l", "r_l"] };
    let cells = |r: &HeightReport| {
        let (c, rr) = table_stats(r, HeightConvention::BitLength);
        let mut v = vec![r.l.to_string(), r.h2.to_string(), c.to_string(), rr.to_string()];
        if extended {
            let (ce, re) = table_stats(r, HeightConvention::Exact);
            v.extend([format!("{:.6}", r.h), ce.to_string(), re.to_string()]);
        }
        v
    };
    match format {
        Format::Csv => {
            writeln!(out, "{}", header.join(",")).unwrap();
            for r in rows {
                writeln!(out, "{}", cells(r).join(",")).unwrap();
            }
        }
        Format::Text => {
            let body: Vec<Vec<String>> = rows.iter().map(cells).collect();
            let widths: Vec<usize> = (0..header.len())
                .map(|i| body.iter().map(|row| row[i].len()).chain([header[i].len()]).max().unwrap())
                .collect();
            let line = |cols: Vec<String>| {
                cols.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
            };
            writeln!(out, "{}", line(header.iter().map(|s| s.to_string()).collect())).unwrap();
            for row in body {
                writeln!(out, "{}", line(row)).unwrap();
            }
        }
    }
    out
}
