//! Machine checks of the summatory estimates.
//!
//! Every statement has the shape `|S(x) - main(x)| <= E(x)` with `S` a step
//! function jumping at integers. On each `[n, n + 1)` the sum is constant and
//! `main +- E` is monotone, so the worst case sits at `x = n` or at the left
//! limit `x -> n + 1`. Both are evaluated exactly at the endpoint (the left
//! limit uses `S(n)` with `x = n + 1`), which dominates any point inside.

use std::collections::BTreeSet;

use rug::Float;
use serde::Serialize;

use super::constants::{euler_gamma, mobius_log_sum, six_over_pi2, squarefree_harmonic_const};
use super::partial::{PartialSum, COMPARE_PREC};
use super::sieve::{build_sieve, for_each_segment, SieveTables, SEGMENT_LEN};
use crate::error::{domain, Result};

pub const COROLLARY10_RANGE: (u64, u64) = (100_000, 2_160_535);
pub const THEOREM9_MERTENS_START: u64 = 2_160_535;
pub const THEOREM9_SQUAREFREE_START: u64 = 438_653;
pub const THEOREM9_SPOT_END: u64 = 5_000_000;
pub const MOBIUS_LEMMA_START: u64 = 100_000;
pub const QUARTILE_CONSTANTS: [(i64, i64); 3] = [(539, 1), (742, 2), (917, 3)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One line of the verification output.
///
/// `worst_margin` is `(E - |S - main| - error_budget)/E` minimised over the
/// checked points, so the statement is confirmed iff it is non-negative.
/// The quartile checks instead report the absolute slack `K(Cx) - qK(x) + 2`.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub x_range: [f64; 2],
    pub status: Status,
    pub worst_x: f64,
    pub worst_margin: f64,
    /// `worst_x` is a left limit.
    pub worst_left_limit: bool,
    pub points: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub last_failure: Option<f64>,
    /// Largest absolute numerical error allowed for at any point.
    pub error_budget: f64,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

struct Tracker {
    r: LemmaReport,
}

impl Tracker {
    fn new(lemma: &str, lo: f64, hi: f64) -> Self {
        Tracker {
            r: LemmaReport {
                lemma: lemma.to_string(),
                x_range: [lo, hi],
                status: Status::Pass,
                worst_x: f64::NAN,
                worst_margin: f64::INFINITY,
                worst_left_limit: false,
                points: 0,
                failures: 0,
                first_failure: None,
                last_failure: None,
                error_budget: 0.0,
            },
        }
    }

    fn record(&mut self, x: f64, left: bool, margin: f64, budget: f64) {
        let r = &mut self.r;
        r.points += 1;
        r.error_budget = r.error_budget.max(budget);
        if margin < r.worst_margin || r.worst_x.is_nan() {
            r.worst_margin = margin;
            r.worst_x = x;
            r.worst_left_limit = left;
        }
        if margin < 0.0 || margin.is_nan() {
            r.status = Status::Fail;
            r.failures += 1;
            r.first_failure.get_or_insert(x);
            r.last_failure = Some(x);
        }
    }

    fn finish(self) -> LemmaReport {
        self.r
    }
}

const P: u32 = COMPARE_PREC;
/// Rounding allowance for the analytic side at `COMPARE_PREC`.
const MAIN_ERR: f64 = 1e-85;

fn fl(x: impl Into<f64>) -> Float {
    Float::with_val(P, x.into())
}

/// `(E - |s - main| - err)/E`.
fn rel_margin(s: &Float, err: f64, main: &Float, bound: &Float) -> f64 {
    let diff = Float::with_val(P, s - main).abs();
    let slack = Float::with_val(P, bound - &diff) - (err + MAIN_ERR);
    Float::with_val(P, slack / bound).to_f64()
}

fn sieve_for(x_max: u64) -> Result<SieveTables> {
    build_sieve(x_max.max(2))
}

/// `|M(x)| <= x/900` and `|R(x)| <= sqrt(x)/25` on `[10^5, 2160535]`.
pub fn verify_corollary10() -> Result<Vec<LemmaReport>> {
    let t = build_sieve(COROLLARY10_RANGE.1)?;
    verify_corollary10_with(&t)
}

pub fn verify_corollary10_with(t: &SieveTables) -> Result<Vec<LemmaReport>> {
    let (lo, hi) = COROLLARY10_RANGE;
    Ok(vec![
        check_mertens(t, "corollary10_mertens", lo, hi, 900.0)?,
        check_squarefree(t, "corollary10_squarefree", lo, hi, 1.0 / 25.0, true)?,
    ])
}

/// The two explicit estimates quoted from the literature, spot-checked on
/// `[start, end]`. The square-free estimate is reported twice: over all real
/// `x`, and at integers only. The first fails just below `x = 441353`, where
/// `|R(x)|/sqrt(x)` reaches 0.027772.
pub fn verify_theorem9(end: u64) -> Result<Vec<LemmaReport>> {
    let t = build_sieve(end)?;
    verify_theorem9_with(&t, end)
}

pub fn verify_theorem9_with(t: &SieveTables, end: u64) -> Result<Vec<LemmaReport>> {
    Ok(vec![
        check_mertens(t, "theorem9_mertens", THEOREM9_MERTENS_START, end, 4345.0)?,
        check_squarefree(t, "theorem9_squarefree", THEOREM9_SQUAREFREE_START, end, 0.02767, true)?,
        check_squarefree(t, "theorem9_squarefree_integers", THEOREM9_SQUAREFREE_START, end, 0.02767, false)?,
    ])
}

/// `|M(x)| <= x/d` on `[lo, hi]`. Integers suffice: `M` is constant between
/// jumps and the bound increases.
fn check_mertens(t: &SieveTables, name: &str, lo: u64, hi: u64, d: f64) -> Result<LemmaReport> {
    if hi > t.x_max || lo > hi {
        return domain(format!("{name}: range [{lo}, {hi}] outside sieve limit {}", t.x_max));
    }
    let mut tr = Tracker::new(name, lo as f64, hi as f64);
    for n in lo..=hi {
        let m = t.prefix_m[n as usize].unsigned_abs() as f64;
        // d |M| and n are exact in f64 at these sizes.
        tr.record(n as f64, false, 1.0 - d * m / n as f64, 0.0);
    }
    Ok(tr.finish())
}

/// `|Q(x) - 6x/pi^2| <= c sqrt(x)` on `[lo, hi]`, at `x = n` and (if
/// `left_limits`) the left limit at `n + 1`. Decided in double precision unless the slack is within `1e-6`
/// of zero, then redone at `COMPARE_PREC`.
fn check_squarefree(t: &SieveTables, name: &str, lo: u64, hi: u64, c: f64, left_limits: bool) -> Result<LemmaReport> {
    if hi > t.x_max || lo > hi {
        return domain(format!("{name}: range [{lo}, {hi}] outside sieve limit {}", t.x_max));
    }
    let six_pi2 = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
    let six_pi2_hp = six_over_pi2(P);
    let c_hp = Float::with_val(P, Float::parse(format!("{c}")).unwrap());
    let mut tr = Tracker::new(name, lo as f64, hi as f64);
    let check = |q: u64, x: u64, left: bool, tr: &mut Tracker| {
        let xf = x as f64;
        let bound = c * xf.sqrt();
        let slack = bound - (q as f64 - six_pi2 * xf).abs();
        if slack.abs() > 1e-6 {
            tr.record(xf, left, slack / bound, 1e-6);
        } else {
            let main = Float::with_val(P, &six_pi2_hp * x);
            let b = Float::with_val(P, &c_hp * fl(xf).sqrt());
            tr.record(xf, left, rel_margin(&fl(q as f64), 0.0, &main, &b), MAIN_ERR);
        }
    };
    for n in lo..=hi {
        let q = t.prefix_q[n as usize] as u64;
        check(q, n, false, &mut tr);
        if left_limits && n < hi {
            check(q, n + 1, true, &mut tr);
        }
    }
    Ok(tr.finish())
}

/// `sum 1/n = log x + gamma + E(1/(2x) + 1/(12x^2))` and
/// `sum |mu(n)|/n = (6/pi^2) log x + gamma' + E(3/(25 sqrt x))` on `[1, x_max + 1)`.
pub fn verify_harmonic_lemma(x_max: u64) -> Result<Vec<LemmaReport>> {
    if x_max < 1 {
        return domain("x_max must be at least 1");
    }
    let t = sieve_for(x_max)?;
    let gamma = euler_gamma(P);
    let gp = squarefree_harmonic_const(P);
    let c6 = six_over_pi2(P);
    let hi = (x_max + 1) as f64;
    let mut tr_h = Tracker::new("harmonic", 1.0, hi);
    let mut tr_q = Tracker::new("harmonic_squarefree", 1.0, hi);
    let (mut h, mut hq) = (PartialSum::new(), PartialSum::new());
    let mut ln_x = Float::new(P);
    for n in 1..=x_max {
        h.add(n, 1, n);
        if t.mu[n as usize] != 0 {
            hq.add(n, 1, n);
        }
        let (hv, he) = h.value();
        let (qv, qe) = hq.value();
        let ln_next = Float::with_val(P, n + 1).ln();
        for (x, lnx, left) in [(n, &ln_x, false), (n + 1, &ln_next, true)] {
            let xf = fl(x as f64);
            let main = Float::with_val(P, lnx + &gamma);
            let bound = Float::with_val(P, 0.5 / &xf) + Float::with_val(P, xf.square_ref()).recip() / 12u32;
            tr_h.record(x as f64, left, rel_margin(&hv, he, &main, &bound), he);
            let main = Float::with_val(P, &c6 * lnx) + &gp;
            let bound = Float::with_val(P, xf.sqrt_ref()).recip() * 3u32 / 25u32;
            tr_q.record(x as f64, left, rel_margin(&qv, qe, &main, &bound), qe);
        }
        ln_x = ln_next;
    }
    Ok(vec![tr_h.finish(), tr_q.finish()])
}

/// Log-spaced integers in `[lo, hi]`, both ends included.
pub fn log_samples(lo: u64, hi: u64, count: usize) -> Vec<u64> {
    let mut s = BTreeSet::from([lo, hi]);
    if hi > lo && count > 1 {
        let r = (hi as f64 / lo as f64).ln();
        for i in 0..count {
            let x = (lo as f64 * (r * i as f64 / (count - 1) as f64).exp()).round() as u64;
            s.insert(x.clamp(lo, hi));
        }
    }
    s.into_iter().collect()
}

/// `sum mu(n)/n^2 = 6/pi^2 + E(1/(300x))` and
/// `sum mu(n) log n/n^2 = C + E((3 log x + 1)/(900x))`, checked at `10^5` and
/// at log-spaced points up to `x_max`. The sums run over every `n`.
pub fn verify_mobius_sums(x_max: u64) -> Result<Vec<LemmaReport>> {
    if x_max < MOBIUS_LEMMA_START {
        return domain(format!("the Mobius-sum estimates start at {MOBIUS_LEMMA_START}"));
    }
    let samples: BTreeSet<u64> = log_samples(MOBIUS_LEMMA_START, x_max, 100).into_iter().collect();
    let c6 = six_over_pi2(P);
    let c = mobius_log_sum(P);
    let lo = MOBIUS_LEMMA_START as f64;
    let hi = (x_max + 1) as f64;
    let mut tr1 = Tracker::new("mobius_inverse_square", lo, hi);
    let mut tr2 = Tracker::new("mobius_log", lo, hi);
    let (mut s1, mut s2) = (PartialSum::new_fixed(), PartialSum::new_fixed());
    for_each_segment(1, x_max, SEGMENT_LEN, |start, mu, _| {
        for (i, &m) in mu.iter().enumerate() {
            let n = start + i as u64;
            if m != 0 {
                let sq = n * n;
                s1.add(n, m as i64, sq);
                let mut term = Float::with_val(128, n).ln() / sq;
                if m < 0 {
                    term = -term;
                }
                // ln and the division are each correctly rounded.
                s2.add_float(&term, 2f64.powi(-120) / sq as f64);
            }
            if samples.contains(&n) {
                let (v1, e1) = s1.value();
                let (v2, e2) = s2.value();
                for (x, left) in [(n, false), (n + 1, true)] {
                    let xf = fl(x as f64);
                    let b1 = Float::with_val(P, 300u32 * &xf).recip();
                    tr1.record(x as f64, left, rel_margin(&v1, e1, &c6, &b1), e1);
                    let lnx = Float::with_val(P, xf.ln_ref());
                    let b2 = (lnx * 3u32 + 1u32) / (xf * 900u32);
                    tr2.record(x as f64, left, rel_margin(&v2, e2, &c, &b2), e2);
                }
            }
        }
    });
    Ok(vec![tr1.finish(), tr2.finish()])
}

/// `sum phi(n)/n^2 = (6/pi^2)(log x + gamma) - C + E((log x + 1)/(3x))` on `[1, x_max + 1)`.
pub fn verify_totient_over_square(x_max: u64) -> Result<LemmaReport> {
    if x_max < 1 {
        return domain("x_max must be at least 1");
    }
    let t = sieve_for(x_max)?;
    let c6 = six_over_pi2(P);
    let konst = Float::with_val(P, &c6 * euler_gamma(P)) - mobius_log_sum(P);
    let mut tr = Tracker::new("totient_over_square", 1.0, (x_max + 1) as f64);
    let mut s = PartialSum::new();
    let mut ln_x = Float::new(P);
    for n in 1..=x_max {
        s.add(n, t.phi[n as usize] as i64, n * n);
        let (v, e) = s.value();
        let ln_next = Float::with_val(P, n + 1).ln();
        for (x, lnx, left) in [(n, &ln_x, false), (n + 1, &ln_next, true)] {
            let main = Float::with_val(P, &c6 * lnx) + &konst;
            let bound = Float::with_val(P, lnx + 1u32) / (fl(x as f64) * 3u32);
            tr.record(x as f64, left, rel_margin(&v, e, &main, &bound), e);
        }
        ln_x = ln_next;
    }
    Ok(tr.finish())
}

/// `K(x) = 3x^2/pi^2 + E(x log x / 2)` on `[3/2, x_max + 1)`.
pub fn verify_totient_sum(x_max: u64) -> Result<LemmaReport> {
    if x_max < 2 {
        return domain("x_max must be at least 2");
    }
    let t = sieve_for(x_max)?;
    let c3 = Float::with_val(P, six_over_pi2(P) / 2u32);
    let mut tr = Tracker::new("totient_sum", 1.5, (x_max + 1) as f64);
    let mut check = |k: u64, x: f64, left: bool| {
        let xf = fl(x);
        let main = Float::with_val(P, xf.square_ref()) * &c3;
        let bound = Float::with_val(P, xf.ln_ref()) * &xf / 2u32;
        tr.record(x, left, rel_margin(&fl(k as f64), 0.0, &main, &bound), MAIN_ERR);
    };
    check(1, 1.5, false);
    check(1, 2.0, true);
    for n in 2..=x_max {
        let k = t.prefix_k[n as usize];
        check(k, n as f64, false);
        check(k, (n + 1) as f64, true);
    }
    Ok(tr.finish())
}

/// `K(C_i x) >= (i/4) K(x) - 2` for every real `x` in `[1, x_max)`.
///
/// Both sides are right-continuous step functions with jumps at `x = n` and
/// `x = 1000 n / c_i`, so each constant stretch is checked at its left end.
pub fn verify_quartiles(x_max: u64) -> Result<Vec<LemmaReport>> {
    if x_max < 2 {
        return domain("x_max must be at least 2");
    }
    let t = sieve_for(x_max)?;
    let k = |num: i64, den: i64| t.prefix_k[(num / den) as usize] as i64;
    let mut out = Vec::new();
    for (c, quarters) in QUARTILE_CONSTANTS {
        let mut tr = Tracker::new(&format!("quartile_C{quarters}"), 1.0, x_max as f64);
        // Jump points as fractions a/b.
        let mut pts: Vec<(i64, i64)> = (1..x_max as i64).map(|n| (n, 1)).collect();
        let mut n = 1i64;
        while 1000 * n < c * x_max as i64 {
            if 1000 * n >= c {
                pts.push((1000 * n, c));
            }
            n += 1;
        }
        pts.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
        pts.dedup_by(|a, b| a.0 * b.1 == b.0 * a.1);
        for (a, b) in pts {
            // 4 K(Cx) - q K(x) + 8, with Cx = c a / (1000 b).
            let slack4 = 4 * k(c * a, 1000 * b) - quarters * k(a, b) + 8;
            tr.record(a as f64 / b as f64, false, slack4 as f64 / 4.0, 0.0);
        }
        out.push(tr.finish());
    }
    Ok(out)
}

/// Beyond the exhaustive range, combine the two sides of the `K(x)` estimate:
/// `3C^2x^2/pi^2 - Cx log(Cx)/2 >= q (3x^2/pi^2 + x log x/2) - 2` on a log grid.
pub fn verify_quartiles_from_estimate(lo: f64, hi: f64, points: usize) -> Vec<LemmaReport> {
    let k3 = 3.0 / (std::f64::consts::PI * std::f64::consts::PI);
    QUARTILE_CONSTANTS
        .iter()
        .map(|&(c, quarters)| {
            let cf = c as f64 / 1000.0;
            let q = quarters as f64 / 4.0;
            let mut tr = Tracker::new(&format!("quartile_C{quarters}_estimate"), lo, hi);
            for i in 0..points {
                let x = lo * ((hi / lo).ln() * i as f64 / (points - 1).max(1) as f64).exp();
                let cx = cf * x;
                let lower = k3 * cx * cx - cx * cx.ln() / 2.0;
                let upper = k3 * x * x + x * x.ln() / 2.0;
                let slack = lower - (q * upper - 2.0);
                tr.record(x, false, slack / (q * upper), 1e-12);
            }
            tr.finish()
        })
        .collect()
}

/// Everything above at the given limits: corollary 10 and the literature
/// estimates to `spot_end`, the lemma sweeps to `x_max`, quartiles below 300.
pub fn verify_appendix(x_max: u64, spot_end: u64) -> Result<Vec<LemmaReport>> {
    let t = build_sieve(spot_end.max(COROLLARY10_RANGE.1))?;
    let (big, small) = rayon::join(
        || -> Result<Vec<LemmaReport>> {
            let mut v = verify_corollary10_with(&t)?;
            v.extend(verify_theorem9_with(&t, spot_end)?);
            v.extend(verify_mobius_sums(x_max.max(MOBIUS_LEMMA_START))?);
            Ok(v)
        },
        || -> Result<Vec<LemmaReport>> {
            let mut v = verify_harmonic_lemma(x_max)?;
            v.push(verify_totient_over_square(x_max)?);
            v.push(verify_totient_sum(x_max)?);
            v.extend(verify_quartiles(300)?);
            v.extend(verify_quartiles_from_estimate(300.0, 1e12, 200));
            Ok(v)
        },
    );
    let mut out = big?;
    out.extend(small?);
    Ok(out)
}
