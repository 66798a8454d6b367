//! Numerical check of
//! `sum_c (t^2 + (c - theta)^2)^{-1} = (pi/t) sum_nu e^{-2 pi |nu| t} e^{2 pi i nu theta}`.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Bernoulli numbers `B_2, B_4, .., B_12`.
const BERNOULLI: [f64; 6] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0];
const EM_TERMS: usize = 6;

/// `d^m/du^m (u^2 + t^2)^{-1}` using `(u^2 + t^2)^{-1} = Im(1/(u - it))/t`.
fn deriv(u: f64, t: f64, m: u32) -> f64 {
    let w = Complex64::new(u, -t);
    let fact: f64 = (1..=m).map(f64::from).product();
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    (sign * fact * w.powi(-(m as i32) - 1)).im / t
}

/// Euler-Maclaurin value of `sum_{c > trunc} (t^2 + (c - theta)^2)^{-1}`
/// and a bound on its remainder.
fn em_tail(t: f64, theta: f64, trunc: i64) -> (f64, f64) {
    let a = (trunc + 1) as f64 - theta;
    let mut s = (PI / 2.0 - (a / t).atan()) / t + 0.5 / (a * a + t * t);
    let mut fact = 1.0;
    for (k, b) in BERNOULLI.iter().enumerate().take(EM_TERMS) {
        let two_k = 2 * (k as u32 + 1);
        fact *= ((two_k - 1) * two_k) as f64;
        s -= b / fact * deriv(a, t, two_k - 1);
    }
    // |R_p| <= 2 zeta(2p)/(2 pi)^{2p} * int_a^inf |f^{(2p)}|, and
    // |f^{(2p)}(u)| <= (2p)!/(t |u|^{2p+1}).
    let p = 2 * EM_TERMS as i32;
    let rem = 2.0 * 1.0001 / (2.0 * PI).powi(p) * (1..=p).map(f64::from).product::<f64>() / (t * p as f64 * a.powi(p));
    (s, rem)
}

/// Left side truncated to `|c| <= trunc`.
pub fn poisson_lhs(t: f64, theta: f64, trunc: i64) -> f64 {
    (-trunc..=trunc).map(|c| 1.0 / (t * t + (c as f64 - theta).powi(2))).sum()
}

/// Right side truncated to `|nu| <= trunc`.
pub fn poisson_rhs(t: f64, theta: f64, trunc: i64) -> f64 {
    let s: f64 = (1..=trunc).map(|nu| 2.0 * (-2.0 * PI * nu as f64 * t).exp() * (2.0 * PI * nu as f64 * theta).cos()).sum();
    PI / t * (1.0 + s)
}

/// `|LHS - RHS|` with both sides truncated at `trunc`, the left tail restored
/// by Euler-Maclaurin, plus bounds on everything neglected.
pub fn poisson_identity_residual(t: f64, theta: f64, trunc: i64) -> f64 {
    assert!(t > 0.0 && trunc >= 1, "needs t > 0 and trunc >= 1");
    let theta = theta - theta.floor();
    let (hi, rem_hi) = em_tail(t, theta, trunc);
    let (lo, rem_lo) = em_tail(t, -theta, trunc);
    let lhs = poisson_lhs(t, theta, trunc) + hi + lo;
    let q = (-2.0 * PI * t).exp();
    let rhs_tail = 2.0 * PI / t * q.powi(trunc as i32 + 1) / (1.0 - q);
    let rounding = 64.0 * f64::EPSILON * lhs.abs();
    (lhs - poisson_rhs(t, theta, trunc)).abs() + rem_hi + rem_lo + rhs_tail + rounding
}

/// `sum_n t/(t^2 + n^2) = pi coth(pi t)`, left side with tail restored.
pub fn coth_sum(t: f64, trunc: i64) -> f64 {
    let (tail, _) = em_tail(t, 0.0, trunc);
    t * (poisson_lhs(t, 0.0, trunc) + 2.0 * tail)
}

/// `sum_n t/(t^2 + (n - 1/2)^2) = pi tanh(pi t)`, left side with tail restored.
pub fn tanh_sum(t: f64, trunc: i64) -> f64 {
    let (hi, _) = em_tail(t, 0.5, trunc);
    let (lo, _) = em_tail(t, -0.5, trunc);
    t * (poisson_lhs(t, 0.5, trunc) + hi + lo)
}
