//! Constants of the summatory estimates.
//!
//! `zeta'(2)` is computed by Euler-Maclaurin summation; the other two follow
//! from the Dirichlet series `sum mu(n) n^-s = 1/zeta(s)` and
//! `sum |mu(n)| n^-s = zeta(s)/zeta(2s)`:
//! `C = 36 zeta'(2)/pi^4` and `gamma' = 6 gamma/pi^2 - 72 zeta'(2)/pi^4`.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// `gamma' = lim (sum_{n<=x} |mu(n)|/n - (6/pi^2) log x)`.
pub const SQUAREFREE_HARMONIC_CONST: f64 = 1.043_894_515_711_938_3;
/// `C = sum mu(n) log n / n^2`.
pub const MOBIUS_LOG_SUM: f64 = -0.346_494_734_701_802_2;

/// The constants to 30 significant digits.
pub const EULER_GAMMA_30: &str = "0.577215664901532860606512090082";
pub const ZETA_PRIME_2_30: &str = "-0.937548254315843753702574094568";
pub const SQUAREFREE_HARMONIC_CONST_30: &str = "1.04389451571193829740456343851";
pub const MOBIUS_LOG_SUM_30: &str = "-0.346494734701802213346160816868";

// Euler-Maclaurin cut-off and number of correction terms.
const EM_N: u32 = 1000;
const EM_P: usize = 10;
const BERNOULLI: [(i64, i64); EM_P] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
];

pub fn euler_gamma(prec: u32) -> Float {
    Float::with_val(prec, Constant::Euler)
}

fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// `zeta'(2) = -sum ln n / n^2`. The truncation error is below `10^-70`,
/// far under the working precision used anywhere in the crate.
pub fn zeta_prime_2(prec: u32) -> Float {
    let wp = prec + 32;
    let n = EM_N;
    let f = |k: u32| {
        let x = Float::with_val(wp, k);
        Float::with_val(wp, x.ln_ref()) / Float::with_val(wp, x.square_ref())
    };
    let mut s = Float::new(wp);
    for k in 2..n {
        s += f(k);
    }
    let big_n = Float::with_val(wp, n);
    let ln_n = Float::with_val(wp, big_n.ln_ref());
    // Integral tail and half the boundary term.
    s += Float::with_val(wp, &ln_n + 1u32) / &big_n;
    s += f(n) / 2u32;
    // f^(m)(x) = x^(-2-m) (a_m ln x + b_m).
    let (mut a, mut b) = (Integer::from(1), Integer::from(0));
    let mut fact = Integer::from(1);
    for m in 0..(2 * EM_P as u32) {
        let next_a = Integer::from(-(Integer::from(2 + m) * &a));
        let next_b = Integer::from(-(Integer::from(2 + m) * &b)) + &a;
        a = next_a;
        b = next_b;
        let order = m + 1;
        fact *= order;
        if order % 2 == 1 {
            let k = (order as usize + 1) / 2;
            let (bn, bd) = BERNOULLI[k - 1];
            // B_{2k}/(2k)! f^(2k-1)(N)
            let deriv = (Float::with_val(wp, &a) * &ln_n + &b) / Float::with_val(wp, (&big_n).pow(2 + order));
            let coef = Rational::from((bn, bd)) / Rational::from((Integer::from(&fact) * (order + 1), 1));
            s -= Float::with_val(wp, &coef) * deriv;
        }
    }
    Float::with_val(prec, -s)
}

/// `C = 36 zeta'(2)/pi^4`.
pub fn mobius_log_sum(prec: u32) -> Float {
    let wp = prec + 16;
    let p4 = pi(wp).pow(4u32);
    Float::with_val(prec, zeta_prime_2(wp) * 36u32 / p4)
}

/// `gamma' = 6 gamma/pi^2 - 2 C`.
pub fn squarefree_harmonic_const(prec: u32) -> Float {
    let wp = prec + 16;
    let p2 = pi(wp).square();
    let g = euler_gamma(wp) * 6u32 / p2;
    Float::with_val(prec, g - mobius_log_sum(wp) * 2u32)
}

/// `6/pi^2`.
pub fn six_over_pi2(prec: u32) -> Float {
    let p2 = pi(prec + 8).square();
    Float::with_val(prec, 6u32 / p2)
}
