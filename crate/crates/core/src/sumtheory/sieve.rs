//! Mobius and totient tables with their running sums.

use crate::error::{domain, Error, Result};

/// Above this size the tables are filled segment by segment.
pub const SEGMENT_THRESHOLD: u64 = 10_000_000;
pub const SEGMENT_LEN: u64 = 1 << 20;
/// Default cap on table memory.
pub const DEFAULT_MEMORY_BUDGET: u64 = 1 << 30;
const BYTES_PER_ENTRY: u64 = 1 + 4 + 4 + 4 + 8;

/// Index `n` holds the value at `n`; index 0 is a zero sentinel.
#[derive(Clone, Debug)]
pub struct SieveTables {
    pub x_max: u64,
    pub mu: Vec<i8>,
    pub phi: Vec<u32>,
    /// `M(n)`
    pub prefix_m: Vec<i32>,
    /// `Q(n)`
    pub prefix_q: Vec<u32>,
    /// `K(n)`
    pub prefix_k: Vec<u64>,
}

impl SieveTables {
    /// `M(floor(x))` for real `x` in `[0, x_max + 1)`.
    pub fn m_at(&self, x: f64) -> i64 {
        self.prefix_m[self.idx(x)] as i64
    }

    pub fn q_at(&self, x: f64) -> u64 {
        self.prefix_q[self.idx(x)] as u64
    }

    pub fn k_at(&self, x: f64) -> u64 {
        self.prefix_k[self.idx(x)]
    }

    fn idx(&self, x: f64) -> usize {
        let i = x.floor().max(0.0) as u64;
        assert!(i <= self.x_max, "{x} beyond sieve limit {}", self.x_max);
        i as usize
    }

    /// Recompute the running sums after editing `mu` or `phi`.
    pub fn rebuild_prefixes(&mut self) {
        let n = self.mu.len();
        let (mut m, mut q, mut k) = (0i32, 0u32, 0u64);
        for i in 1..n {
            m += self.mu[i] as i32;
            q += (self.mu[i] != 0) as u32;
            k += self.phi[i] as u64;
            self.prefix_m[i] = m;
            self.prefix_q[i] = q;
            self.prefix_k[i] = k;
        }
    }
}

pub fn build_sieve(x_max: u64) -> Result<SieveTables> {
    build_sieve_with_budget(x_max, DEFAULT_MEMORY_BUDGET)
}

pub fn build_sieve_with_budget(x_max: u64, budget_bytes: u64) -> Result<SieveTables> {
    if x_max < 1 {
        return domain("sieve limit must be at least 1");
    }
    if x_max >= u32::MAX as u64 {
        return domain(format!("sieve limit {x_max} too large for 32-bit totients"));
    }
    let need = (x_max + 1).saturating_mul(BYTES_PER_ENTRY);
    if need > budget_bytes {
        return Err(Error::MemoryBudget(format!("sieve to {x_max} needs {need} bytes, budget is {budget_bytes}")));
    }
    let len = x_max as usize + 1;
    let (mu, phi) = if x_max <= SEGMENT_THRESHOLD {
        linear_sieve(len)
    } else {
        let mut mu = vec![0i8; len];
        let mut phi = vec![0u32; len];
        for_each_segment(1, x_max, SEGMENT_LEN, |start, m, p| {
            let s = start as usize;
            mu[s..s + m.len()].copy_from_slice(m);
            phi[s..s + p.len()].copy_from_slice(p);
        });
        (mu, phi)
    };
    let mut t = SieveTables { x_max, mu, phi, prefix_m: vec![0; len], prefix_q: vec![0; len], prefix_k: vec![0; len] };
    t.rebuild_prefixes();
    Ok(t)
}

fn linear_sieve(len: usize) -> (Vec<i8>, Vec<u32>) {
    let mut mu = vec![0i8; len];
    let mut phi = vec![0u32; len];
    let mut composite = vec![false; len];
    let mut primes: Vec<u32> = Vec::new();
    if len > 1 {
        mu[1] = 1;
        phi[1] = 1;
    }
    for i in 2..len {
        if !composite[i] {
            primes.push(i as u32);
            mu[i] = -1;
            phi[i] = i as u32 - 1;
        }
        for &p in &primes {
            let ip = i * p as usize;
            if ip >= len {
                break;
            }
            composite[ip] = true;
            if i % p as usize == 0 {
                mu[ip] = 0;
                phi[ip] = phi[i] * p;
                break;
            }
            mu[ip] = -mu[i];
            phi[ip] = phi[i] * (p - 1);
        }
    }
    (mu, phi)
}

fn small_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut sieve = vec![true; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Calls `f(start, mu, phi)` on consecutive blocks covering `[lo, hi]`, with
/// memory independent of `hi`.
pub fn for_each_segment(lo: u64, hi: u64, seg_len: u64, mut f: impl FnMut(u64, &[i8], &[u32])) {
    let lo = lo.max(1);
    if hi < lo {
        return;
    }
    let primes = small_primes(isqrt(hi));
    let mut start = lo;
    while start <= hi {
        let end = (start + seg_len - 1).min(hi);
        let n = (end - start + 1) as usize;
        let mut rem: Vec<u64> = (start..=end).collect();
        let mut mu = vec![1i8; n];
        let mut phi = vec![1u64; n];
        for &p in &primes {
            let first = start.div_ceil(p) * p;
            let mut v = first;
            while v <= end {
                let i = (v - start) as usize;
                let mut e = 0u32;
                let mut pe = 1u64;
                while rem[i] % p == 0 {
                    rem[i] /= p;
                    e += 1;
                    pe *= p;
                }
                mu[i] = if e >= 2 { 0 } else { -mu[i] };
                phi[i] *= pe / p * (p - 1);
                v += p;
            }
        }
        for i in 0..n {
            if rem[i] > 1 {
                mu[i] = -mu[i];
                phi[i] *= rem[i] - 1;
            }
        }
        let phi32: Vec<u32> = phi.iter().map(|&v| v as u32).collect();
        f(start, &mu, &phi32);
        start = end + 1;
    }
}
