//! Farey partitions of a unit interval and the lattice-point statistics
//! used to bound sums of `log+|j|` over `(it + b)/l`.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_rational::Ratio;
use rug::Float;

use crate::arith::{ext_gcd, is_prime, totient};
use crate::bounds::lognorm_j;
use crate::error::{domain, Result};
use crate::qseries::{ComplexPoint, Unimodular};

pub type Q = Ratio<i64>;

/// The subinterval `[rho1, rho2)` attached to `h/k`, with `r k - s h = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareyEntry {
    pub h: i64,
    pub k: i64,
    pub rho1: Q,
    pub rho2: Q,
    pub r: i64,
    pub s: i64,
}

impl FareyEntry {
    pub fn center(&self) -> Q {
        Q::new(self.h, self.k)
    }

    /// `[[s, -r], [k, -h]]`, which sends `h/k` to the cusp at infinity.
    pub fn lambda(&self) -> Unimodular {
        Unimodular { a: self.s, b: -self.r, c: self.k, d: -self.h }
    }
}

/// Partition of `[1/(N+1), (N+2)/(N+1))` into one interval per Farey
/// fraction of order N in `(0, 1]`, ordered by center.
#[derive(Clone, Debug)]
pub struct FareyPartition {
    pub n: i64,
    pub entries: Vec<FareyEntry>,
}

fn canonical_rs(h: i64, k: i64) -> (i64, i64) {
    // s = -h^{-1} mod k, then r from r k = 1 + s h.
    let (_, x, _) = ext_gcd(h.rem_euclid(k), k);
    let s = (-x).rem_euclid(k);
    ((1 + s * h) / k, s)
}

pub fn build_partition(n: i64) -> Result<FareyPartition> {
    if n < 1 {
        return domain(format!("Farey order must be at least 1, got {n}"));
    }
    // Standard next-term recurrence over [0, 1].
    let mut seq = vec![(0i64, 1i64)];
    let (mut a, mut b, mut c, mut d) = (0i64, 1i64, 1i64, n);
    seq.push((c, d));
    while c < n || d != 1 {
        let m = (n + b) / d;
        let (e, f) = (m * c - a, m * d - b);
        (a, b, c, d) = (c, d, e, f);
        seq.push((c, d));
        if (c, d) == (1, 1) {
            break;
        }
    }
    let mediant = |i: usize| Q::new(seq[i].0 + seq[i + 1].0, seq[i].1 + seq[i + 1].1);
    let mut entries = Vec::with_capacity(seq.len() - 1);
    let last = seq.len() - 1;
    for i in 1..=last {
        let (h, k) = seq[i];
        let rho1 = mediant(i - 1);
        // 0/1 is folded into 1/1: its right half [0, 1/(N+1)) moves up by one.
        let rho2 = if i == last { Q::from_integer(1) + mediant(0) } else { mediant(i) };
        let (r, s) = canonical_rs(h, k);
        entries.push(FareyEntry { h, k, rho1, rho2, r, s });
    }
    Ok(FareyPartition { n, entries })
}

impl FareyPartition {
    /// `[1/(N+1), (N+2)/(N+1))`.
    pub fn span(&self) -> (Q, Q) {
        (Q::new(1, self.n + 1), Q::new(self.n + 2, self.n + 1))
    }

    /// Index of the interval containing `x`, if `x` lies in the span.
    pub fn locate(&self, x: Q) -> Option<usize> {
        let (lo, hi) = self.span();
        if x < lo || x >= hi {
            return None;
        }
        let idx = self.entries.partition_point(|e| e.rho1 <= x);
        Some(idx - 1)
    }

    /// Intervals tile the span with no gaps or overlaps.
    pub fn is_exact_cover(&self) -> bool {
        let (lo, hi) = self.span();
        let Some(first) = self.entries.first() else { return false };
        if first.rho1 != lo || self.entries.last().unwrap().rho2 != hi {
            return false;
        }
        self.entries.windows(2).all(|w| w[0].rho2 == w[1].rho1) && self.entries.iter().all(|e| e.rho1 < e.rho2)
    }

    /// `1/(2kN) <= |rho - h/k| <= 1/(k(N+1))` at both endpoints, each
    /// interval containing its center, and `r k - s h = 1` with `0 <= s < k`.
    pub fn endpoint_inequalities_hold(&self) -> bool {
        let n = self.n;
        self.entries.iter().all(|e| {
            let c = e.center();
            let lo = Q::new(1, 2 * e.k * n);
            let hi = Q::new(1, e.k * (n + 1));
            let ok = |d: Q| lo <= d && d <= hi;
            e.rho1 < c
                && c < e.rho2
                && ok(c - e.rho1)
                && ok(e.rho2 - c)
                && e.r * e.k - e.s * e.h == 1
                && (0..e.k).contains(&e.s)
        })
    }

    /// One line per interval, `h/k rho1 rho2 k`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            writeln!(
                out,
                "{}/{} {}/{} {}/{} {}",
                e.h,
                e.k,
                e.rho1.numer(),
                e.rho1.denom(),
                e.rho2.numer(),
                e.rho2.denom(),
                e.k
            )
            .unwrap();
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    Interior,
    GoodExterior,
    BadExterior,
}

#[derive(Clone, Debug)]
pub struct PointClassification {
    /// The lattice point is `b/l`.
    pub b: i64,
    pub entry: usize,
    pub alpha: f64,
    pub beta: f64,
    pub kind: PointKind,
    /// Whether `b/l` lies at or right of the center.
    pub right_half: bool,
}

impl PointClassification {
    /// `Im(Lambda z)` for `z = (it + b)/l`.
    pub fn im_lambda(&self) -> f64 {
        1.0 / (self.alpha * self.alpha + self.beta * self.beta)
    }
}

/// `floor(sqrt(l/t))`.
pub fn farey_order(l: u64, t: f64) -> i64 {
    let mut n = (l as f64 / t).sqrt().floor() as i64;
    while ((n + 1) * (n + 1)) as f64 * t <= l as f64 {
        n += 1;
    }
    while n > 0 && (n * n) as f64 * t > l as f64 {
        n -= 1;
    }
    n
}

fn check_t(t: f64) -> Result<()> {
    if !(1.0..1.254).contains(&t) {
        return domain(format!("t = {t} outside [1, 1.254)"));
    }
    Ok(())
}

/// The `l` integers `b` with `b/l` in the span of an order-N partition.
pub fn lattice_range(l: u64, n: i64) -> std::ops::Range<i64> {
    let l = l as i64;
    // ceil(l/(N+1)) .. ceil(l(N+2)/(N+1))
    let lo = (l + n) / (n + 1);
    let hi = (l * (n + 2) + n) / (n + 1);
    lo..hi
}

pub fn classify_points(l: u64, t: f64, p: &FareyPartition) -> Result<Vec<PointClassification>> {
    if l <= 5 || !is_prime(l) {
        return domain(format!("classification needs a prime l > 5, got {l}"));
    }
    check_t(t)?;
    if p.n != farey_order(l, t) {
        return domain(format!("partition order {} is not floor(sqrt(l/t)) = {}", p.n, farey_order(l, t)));
    }
    let li = l as i64;
    let mut per_entry: Vec<Vec<i64>> = vec![Vec::new(); p.entries.len()];
    for b in lattice_range(l, p.n) {
        let idx = p.locate(Q::new(b, li)).expect("lattice point outside the span");
        per_entry[idx].push(b);
    }
    let half_gap = Q::new(1, 2 * li);
    let sqrt_lt = (l as f64 / t).sqrt();
    let mut out = Vec::with_capacity(l as usize);
    for (idx, bs) in per_entry.iter().enumerate() {
        let e = &p.entries[idx];
        for (pos, &b) in bs.iter().enumerate() {
            let x = Q::new(b, li);
            let exterior = pos == 0 || pos + 1 == bs.len();
            let kind = if !exterior {
                PointKind::Interior
            } else if x - e.rho1 >= half_gap && e.rho2 - x >= half_gap {
                PointKind::GoodExterior
            } else {
                PointKind::BadExterior
            };
            let dist = x - e.center();
            let dist = if dist < Q::from_integer(0) { -dist } else { dist };
            let dist = *dist.numer() as f64 / *dist.denom() as f64;
            out.push(PointClassification {
                b,
                entry: idx,
                alpha: e.k as f64 * sqrt_lt * dist,
                beta: e.k as f64 / sqrt_lt,
                kind,
                right_half: x.cmp(&e.center()) != Ordering::Less,
            });
        }
    }
    Ok(out)
}

/// Pairs of adjacent half-intervals, in different intervals, that both hold
/// a bad exterior point. The bounding argument needs this to be empty.
pub fn adjacent_bad_pairs(points: &[PointClassification]) -> Vec<(usize, usize)> {
    let bad_right = |i: usize| points.iter().any(|p| p.entry == i && p.right_half && p.kind == PointKind::BadExterior);
    let bad_left = |i: usize| points.iter().any(|p| p.entry == i && !p.right_half && p.kind == PointKind::BadExterior);
    let entries = points.iter().map(|p| p.entry).max().map_or(0, |m| m + 1);
    (0..entries.saturating_sub(1)).filter(|&i| bad_right(i) && bad_left(i + 1)).map(|i| (i, i + 1)).collect()
}

/// Certified enclosure of a real sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumInterval {
    pub lo: f64,
    pub hi: f64,
}

/// `sum_b log+|j((it + b)/l)|` over `b = 0..l`, as an interval.
pub fn empirical_s(l: u64, t: f64) -> Result<SumInterval> {
    if l == 0 || l > 200 {
        return domain(format!("l = {l} outside 1..=200"));
    }
    check_t(t)?;
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    for b in 0..l as i64 {
        let (a, c) = lognorm_of_j_at(b, l, t)?;
        lo += a;
        hi += c;
    }
    // Absorb the f64 accumulation error.
    let pad = 1e-12 * (hi.abs() + 1.0);
    Ok(SumInterval { lo: (lo - pad).max(0.0), hi: hi + pad })
}

/// Interval for `log+|j((it + b)/l)|`.
pub fn lognorm_of_j_at(b: i64, l: u64, t: f64) -> Result<(f64, f64)> {
    let prec = 256;
    let re = Float::with_val(prec, b) / l;
    let im = Float::with_val(prec, t) / l;
    lognorm_j(&ComplexPoint::new(re, im)?)
}

/// `K_N = sum_{k <= N} phi(k)`.
pub fn farey_count(n: i64) -> i64 {
    (1..=n.max(0)).map(|k| totient(k as u64) as i64).sum()
}

/// Whether `K_N <= 3N^2/pi^2 + (N ln N)/2`.
pub fn kn_bound_check(n: i64) -> bool {
    let nf = n as f64;
    let bound = 3.0 * nf * nf / (std::f64::consts::PI * std::f64::consts::PI) + 0.5 * nf * nf.ln();
    (farey_count(n) as f64) <= bound
}

/// Smallest `N0 >= 1` such that the K_N inequality holds for every N in `N0..=limit`.
pub fn kn_bound_threshold(limit: i64) -> i64 {
    let mut k = 0i64;
    let mut threshold = 1;
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    for n in 1..=limit {
        k += totient(n as u64) as i64;
        let nf = n as f64;
        if k as f64 > 3.0 * nf * nf / pi2 + 0.5 * nf * nf.ln() {
            threshold = n + 1;
        }
    }
    threshold
}
