use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use modheight::arith::{gcd, primes_in};
use modheight::bounds::{coth_sum, poisson_identity_residual, ramanujan_ck, tanh_sum};
use modheight::farey::{adjacent_bad_pairs, build_partition, classify_points, farey_order, kn_bound_threshold};
use modheight::modpoly::{compute_phi, Strategy};
use modheight::sumtheory::{verify_appendix, THEOREM9_SPOT_END};

use crate::{CliResult, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Appendix,
    Farey,
    Identities,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Upper end of the lemma sweeps in the appendix suite.
    #[arg(long, default_value_t = 100_000)]
    xmax: u64,
    /// Upper end of the literature spot ranges.
    #[arg(long, default_value_t = THEOREM9_SPOT_END)]
    spot_end: u64,
    /// Where to write one JSON object per check.
    #[arg(long, default_value = "verify_report.jsonl")]
    report: PathBuf,
}

/// One summary line and its JSON detail.
struct Check {
    name: String,
    passed: bool,
    detail: serde_json::Value,
}

impl Check {
    fn new(name: &str, passed: bool, detail: serde_json::Value) -> Self {
        let mut detail = detail;
        detail["check"] = json!(name);
        detail["status"] = json!(if passed { "pass" } else { "fail" });
        Check { name: name.to_string(), passed, detail }
    }
}

const IDENTITY_TOL: f64 = 1e-10;

fn appendix(xmax: u64, spot_end: u64) -> CliResult<Vec<Check>> {
    let reports = verify_appendix(xmax, spot_end)?;
    Ok(reports
        .into_iter()
        .map(|r| {
            let detail = serde_json::to_value(&r).expect("report serializes");
            Check::new(&r.lemma, r.passed(), detail)
        })
        .collect())
}

fn farey() -> CliResult<Vec<Check>> {
    let mut out = vec![];
    let bad: Vec<i64> = (1..=500i64)
        .into_par_iter()
        .filter(|&n| build_partition(n).map_or(true, |p| !p.is_exact_cover() || !p.endpoint_inequalities_hold()))
        .collect();
    out.push(Check::new("farey_partition", bad.is_empty(), json!({"n_range": [1, 500], "failing_n": bad})));

    let primes = primes_in(7, 503);
    let adjacency: Vec<(u64, f64, usize)> = primes
        .par_iter()
        .flat_map_iter(|&l| [1.0, 1.1, 1.2, 1.25].into_iter().map(move |t| (l, t)))
        .map(|(l, t)| -> modheight::Result<(u64, f64, usize)> {
            let p = build_partition(farey_order(l, t))?;
            Ok((l, t, adjacent_bad_pairs(&classify_points(l, t, &p)?).len()))
        })
        .collect::<modheight::Result<Vec<_>>>()?;
    let offending: Vec<_> = adjacency.iter().filter(|x| x.2 > 0).map(|&(l, t, _)| json!([l, t])).collect();
    out.push(Check::new(
        "farey_adjacent_bad_pairs",
        offending.is_empty(),
        json!({"l_range": [7, 503], "cases": adjacency.len(), "offending": offending}),
    ));

    // K_N <= 3N^2/pi^2 + (N ln N)/2 is claimed for every N >= 2.
    let threshold = kn_bound_threshold(10_000);
    out.push(Check::new(
        "farey_count_bound",
        threshold <= 2,
        json!({"n_max": 10_000, "claimed_from": 2, "holds_from": threshold}),
    ));
    Ok(out)
}

fn identities() -> CliResult<Vec<Check>> {
    let mut out = vec![];
    let ts: Vec<f64> = (0..20).map(|i| 1.0 + 0.254 * i as f64 / 20.0).chain([0.5, 2.0, 3.0]).collect();
    let mut worst = 0.0f64;
    for &t in &ts {
        for k in 0..16 {
            worst = worst.max(poisson_identity_residual(t, k as f64 / 16.0, 50));
        }
    }
    out.push(Check::new("poisson_identity", worst < IDENTITY_TOL, json!({"trunc": 50, "worst_residual": worst})));
    let (mut wt, mut wc) = (0.0f64, 0.0f64);
    for &t in &ts {
        wt = wt.max((tanh_sum(t, 50) - PI * (PI * t).tanh()).abs());
        wc = wc.max((coth_sum(t, 50) - PI / (PI * t).tanh()).abs());
    }
    out.push(Check::new("tanh_identity", wt < IDENTITY_TOL, json!({"trunc": 50, "worst_residual": wt})));
    out.push(Check::new("coth_identity", wc < IDENTITY_TOL, json!({"trunc": 50, "worst_residual": wc})));

    // Ramanujan sums against the exponential sums, rounded to the nearest integer.
    let mismatches: Vec<(u64, i64)> = (1..=200u64)
        .into_par_iter()
        .flat_map_iter(|k| (-200..=200i64).map(move |n| (k, n)))
        .filter(|&(k, n)| {
            let s: f64 = (1..=k)
                .filter(|&h| gcd(h, k) == 1)
                .map(|h| (2.0 * PI * ((n as i128 * h as i128).rem_euclid(k as i128)) as f64 / k as f64).cos())
                .sum();
            let r = s.round();
            (s - r).abs() > 1e-6 || r as i64 != ramanujan_ck(k, n)
        })
        .collect();
    out.push(Check::new(
        "ramanujan_sums",
        mismatches.is_empty(),
        json!({"k_max": 200, "n_abs_max": 200, "mismatches": mismatches.len()}),
    ));

    let mut differing = vec![];
    for l in primes_in(2, 13) {
        let a = compute_phi(l, Strategy::LinearSolve)?;
        let b = compute_phi(l, Strategy::JReduction)?;
        if a != b {
            differing.push(l);
        }
    }
    out.push(Check::new("phi_strategies_agree", differing.is_empty(), json!({"l_max": 13, "differing": differing})));
    Ok(out)
}

pub fn run(a: VerifyArgs) -> CliResult {
    let suites: &[Suite] = match a.suite {
        Suite::All => &[Suite::Appendix, Suite::Farey, Suite::Identities],
        _ => std::slice::from_ref(&a.suite),
    };
    let mut checks = vec![];
    for &s in suites {
        let start = Instant::now();
        checks.extend(match s {
            Suite::Appendix => appendix(a.xmax, a.spot_end)?,
            Suite::Farey => farey()?,
            Suite::Identities => identities()?,
            Suite::All => unreachable!(),
        });
        eprintln!("{s:?} suite finished in {:.1?}", start.elapsed());
    }

    let mut w = BufWriter::new(File::create(&a.report)?);
    for c in &checks {
        writeln!(w, "{}", c.detail)?;
    }
    w.flush()?;

    let failed = checks.iter().filter(|c| !c.passed).count();
    for c in &checks {
        println!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
    }
    println!("{} checks, {} failed; detail in {}", checks.len(), failed, a.report.display());
    if failed > 0 {
        return Err(Failure::counterexample(format!("{failed} check(s) found counterexamples")));
    }
    Ok(())
}
