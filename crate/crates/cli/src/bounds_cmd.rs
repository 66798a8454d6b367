use clap::Args;
use rayon::prelude::*;
use serde_json::{json, Value};

use modheight::arith::is_prime;
use modheight::bounds::{b1, b2, bounds_record, corollary1_breakdown, theorem1_breakdown};
use modheight::modpoly::{height, HeightReport, PhiCache, PhiConfig, Strategy};

use crate::{parse_range, CliResult, Failure};

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("which").required(true).args(["l", "range"])))]
pub struct EvalArgs {
    #[arg(short = 'l')]
    l: Option<u64>,
    /// Inclusive range `a..b`.
    #[arg(long, value_parser = parse_range)]
    range: Option<std::ops::RangeInclusive<u64>>,
    /// Accept every integer l >= 2, not only primes.
    #[arg(long)]
    all: bool,
}

/// Primes up to this are cheap enough to compute on demand.
const COMPUTE_ON_DEMAND: u64 = 31;

/// Exact height from the cache, computing it first for small l.
fn cached_height(cache: &PhiCache, l: u64) -> Option<HeightReport> {
    if l <= COMPUTE_ON_DEMAND {
        return cache.get_or_compute(l, Strategy::LinearSolve, &PhiConfig::default()).ok().map(|(p, _)| height(&p));
    }
    cache.load(l).map(|p| height(&p))
}

fn record(cache: &PhiCache, l: u64) -> Value {
    let h = if is_prime(l) { cached_height(cache, l) } else { None };
    let rec = bounds_record(l, h.as_ref());
    let lf = l as f64;
    let mut breakdowns = vec![];
    if let Ok(b) = b1(lf) {
        breakdowns.push(b);
    }
    if let Ok(b) = b2(lf) {
        breakdowns.push(b);
    }
    breakdowns.push(theorem1_breakdown(lf));
    breakdowns.push(corollary1_breakdown(lf));
    let mut v = serde_json::to_value(rec).expect("record serializes");
    v["breakdowns"] = json!(breakdowns);
    v
}

pub fn eval(a: EvalArgs) -> CliResult {
    let ls: Vec<u64> = match (a.l, a.range) {
        (Some(l), _) => {
            if l < 2 || (!a.all && !is_prime(l)) {
                return Err(Failure::usage(format!("l = {l} is not prime (use --all for any l >= 2)")));
            }
            vec![l]
        }
        (None, Some(r)) => r.filter(|&l| l >= 2 && (a.all || is_prime(l))).collect(),
        (None, None) => unreachable!("clap requires one of -l, --range"),
    };
    let cache = PhiCache::from_env();
    let lines: Vec<String> = ls.par_iter().map(|&l| record(&cache, l).to_string()).collect();
    for line in lines {
        println!("{line}");
    }
    Ok(())
}
