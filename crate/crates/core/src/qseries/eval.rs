//! Certified numerical evaluation of j on the upper half-plane.

use std::sync::OnceLock;

use rug::float::{Constant, Round};
use rug::{Float, Integer};

use super::ball::{Ball, CBall};
use super::expansions::j_expansion;
use crate::error::{domain, Error, Result};

const START_BITS: u32 = 128;
const MAX_BITS: u32 = 1 << 15;
const CACHED_TERMS: i64 = 600;

/// Bisection tolerance for [`solve_t_for_y`].
pub const SOLVE_TOLERANCE: f64 = 1e-9;

/// A point of the upper half-plane.
#[derive(Clone, Debug)]
pub struct ComplexPoint {
    pub re: Float,
    pub im: Float,
}

impl ComplexPoint {
    pub fn new(re: Float, im: Float) -> Result<Self> {
        if im <= 0 || !im.is_finite() || !re.is_finite() {
            return domain("point must lie in the upper half-plane");
        }
        Ok(ComplexPoint { re, im })
    }

    pub fn from_f64(re: f64, im: f64) -> Result<Self> {
        Self::new(Float::with_val(64, re), Float::with_val(64, im))
    }

    fn working_prec(&self) -> u32 {
        self.re.prec().max(self.im.prec()).max(256)
    }
}

/// Integer matrix `[[a, b], [c, d]]` acting by `z -> (az + b)/(cz + d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Unimodular {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Unimodular {
    pub const IDENTITY: Unimodular = Unimodular { a: 1, b: 0, c: 0, d: 1 };

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// `self * other`.
    pub fn compose(&self, o: &Unimodular) -> Unimodular {
        Unimodular {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// Image of a point, at the precision of the point.
    pub fn apply(&self, z: &ComplexPoint) -> ComplexPoint {
        let p = z.working_prec();
        let nre = Float::with_val(p, &z.re * self.a) + self.b;
        let nim = Float::with_val(p, &z.im * self.a);
        let dre = Float::with_val(p, &z.re * self.c) + self.d;
        let dim = Float::with_val(p, &z.im * self.c);
        let den = Float::with_val(p, &dre * &dre) + Float::with_val(p, &dim * &dim);
        let re = (Float::with_val(p, &nre * &dre) + Float::with_val(p, &nim * &dim)) / &den;
        let im = Float::with_val(p, &z.im / &den);
        ComplexPoint { re, im }
    }

    fn apply_ball(&self, re: &Ball, im: &Ball) -> Option<CBall> {
        let num = CBall::new(re.mul_int(self.a).add(&Ball::from_f64(self.b as f64, re.prec())), im.mul_int(self.a));
        let den = CBall::new(re.mul_int(self.c).add(&Ball::from_f64(self.d as f64, re.prec())), im.mul_int(self.c));
        num.div(&den)
    }
}

/// Moves `z` into `|Re z| <= 1/2`, `|z| >= 1`, returning the point and the
/// matrix that maps the input to it.
pub fn reduce_to_fundamental_domain(z: &ComplexPoint) -> (ComplexPoint, Unimodular) {
    let p = z.working_prec();
    let slack = Float::with_val(p, 1) - (Float::with_val(p, 1) >> (p - 16));
    let half = Float::with_val(p, 0.5) + (Float::with_val(p, 1) >> (p - 16));
    let mut w = ComplexPoint { re: Float::with_val(p, &z.re), im: Float::with_val(p, &z.im) };
    let mut m = Unimodular::IDENTITY;
    for _ in 0..100_000 {
        let shift = w.re.clone().round();
        if shift != 0 && w.re.clone().abs() > half {
            let n = shift.to_integer().and_then(|n| n.to_i64()).unwrap_or(0);
            w.re -= n;
            m = Unimodular { a: 1, b: -n, c: 0, d: 1 }.compose(&m);
        }
        let norm = Float::with_val(p, &w.re * &w.re) + Float::with_val(p, &w.im * &w.im);
        if norm >= slack {
            break;
        }
        let s = Unimodular { a: 0, b: -1, c: 1, d: 0 };
        w = ComplexPoint {
            re: Float::with_val(p, -&w.re) / &norm,
            im: Float::with_val(p, &w.im / &norm),
        };
        m = s.compose(&m);
    }
    (w, m)
}

/// A complex value together with a certified bound on its error.
#[derive(Clone, Debug)]
pub struct Certified {
    pub re: Float,
    pub im: Float,
    pub radius: Float,
}

impl Certified {
    /// Lower and upper bounds on the modulus of the true value.
    pub fn abs_bounds(&self) -> (Float, Float) {
        let p = self.re.prec().max(64);
        let m2 = Float::with_val(p, &self.re * &self.re) + Float::with_val(p, &self.im * &self.im);
        let m = m2.sqrt();
        let hi = Float::with_val_round(p, &m + &self.radius, Round::Up).0;
        let lo = Float::with_val_round(p, &m - &self.radius, Round::Down).0;
        (if lo < 0 { Float::new(p) } else { lo }, hi)
    }

    pub fn contains(&self, re: f64, im: f64) -> bool {
        let dr = Float::with_val(self.re.prec(), &self.re - re);
        let di = Float::with_val(self.re.prec(), &self.im - im);
        let d = (Float::with_val(self.re.prec(), &dr * &dr) + Float::with_val(self.re.prec(), &di * &di)).sqrt();
        d <= self.radius
    }
}

fn j_coefficients(n: i64) -> std::borrow::Cow<'static, [Integer]> {
    static CACHE: OnceLock<Vec<Integer>> = OnceLock::new();
    let cached = CACHE.get_or_init(|| j_expansion(CACHED_TERMS).expect("j expansion").coeffs().to_vec());
    if n + 1 <= cached.len() as i64 {
        std::borrow::Cow::Borrowed(&cached[..(n + 1) as usize])
    } else {
        std::borrow::Cow::Owned(j_expansion(n).expect("j expansion").coeffs().to_vec())
    }
}

/// ln of an upper bound on `sum_{n > terms} e^{4 pi sqrt n} r^n` where `ln_r = ln r`.
fn tail_log_bound(terms: i64, ln_r: f64) -> f64 {
    let n1 = (terms + 1) as f64;
    let ln_ratio = 2.0 * std::f64::consts::PI / n1.sqrt() + ln_r;
    if ln_ratio >= -1e-3 {
        return f64::INFINITY;
    }
    let t = 4.0 * std::f64::consts::PI * n1.sqrt() + n1 * ln_r - (-ln_ratio.exp()).ln_1p();
    t + 1e-6 * (t.abs() + 1.0)
}

fn eval_at_prec(z: &ComplexPoint, m: &Unimodular, prec: u32, ln_target: f64) -> Option<(CBall, Float)> {
    let w = m.apply_ball(&Ball::exact(Float::with_val(prec, &z.re)), &Ball::exact(Float::with_val(prec, &z.im)))?;
    let im_lo = Float::with_val_round(prec, &w.im.mid - &w.im.rad, Round::Down).0;
    if im_lo <= 0 {
        return None;
    }
    // ln|q| <= -2 pi Im w
    let pi_lo = Float::with_val_round(prec, Constant::Pi, Round::Down).0;
    let ln_r = -(Float::with_val_round(64, &pi_lo * &im_lo, Round::Down).0.to_f64() * 2.0) * (1.0 - 1e-12);

    let mut terms: i64 = 1;
    while tail_log_bound(terms, ln_r) > ln_target - 2.0 && terms < 100_000 {
        terms += 1 + terms / 4;
    }
    let tail_ln = tail_log_bound(terms, ln_r);
    if !tail_ln.is_finite() {
        return None;
    }
    let coeffs = j_coefficients(terms + 1);

    let two_pi = Ball::pi(prec).mul_int(2);
    let arg = two_pi.mul(&w.re);
    let (c, s) = (arg.cos(), arg.sin());
    let decay = two_pi.mul(&w.im);
    let small = decay.neg().exp();
    let large = decay.exp();
    let q = CBall::new(small.mul(&c), small.mul(&s));
    let q_inv = CBall::new(large.mul(&c), large.mul(&s).neg());

    let mut acc = CBall::new(Ball::from_integer(&coeffs[terms as usize + 1], prec), Ball::from_f64(0.0, prec));
    for k in (0..terms as usize).rev() {
        acc = acc.mul(&q).add_real(&Ball::from_integer(&coeffs[k + 1], prec));
    }
    // coeffs[k] is c_{k-1}; acc now holds sum_{0<=n<=terms} c_n q^n.
    let total = acc.add(&q_inv);
    let tail = Float::with_val_round(64, tail_ln, Round::Up).0.exp();
    let radius = Float::with_val_round(64, &total.radius() + &tail, Round::Up).0;
    Some((total, radius))
}

/// Evaluates j(z) with a certified radius no larger than `target`.
pub fn eval_j(z: &ComplexPoint, target: f64) -> Result<Certified> {
    if !(target > 0.0) || !target.is_finite() {
        return domain("target precision must be a positive real");
    }
    let (_, m) = reduce_to_fundamental_domain(z);
    let ln_target = target.ln();
    let mut prec = START_BITS.max(z.re.prec()).max(z.im.prec());
    while prec <= MAX_BITS {
        if let Some((v, rad)) = eval_at_prec(z, &m, prec, ln_target) {
            if rad <= target {
                return Ok(Certified { re: v.re.mid, im: v.im.mid, radius: rad });
            }
            // The leading term alone needs this many bits for the target.
            let mag = v.re.mid.clone().abs().max(&v.im.mid.clone().abs());
            if mag.is_normal() {
                let needed = mag.get_exp().unwrap_or(0) as f64 - target.log2() + 8.0;
                if needed > MAX_BITS as f64 {
                    break;
                }
            }
        }
        prec *= 2;
    }
    Err(Error::PrecisionUnreachable { target, max_bits: MAX_BITS })
}

/// Real value j(it) as a ball (t >= some positive bound).
pub fn eval_j_imaginary_axis(t: f64, target: f64) -> Result<Certified> {
    eval_j(&ComplexPoint::from_f64(0.0, t)?, target)
}

/// The unique t in [1, 1.254) with j(it) = y, by bisection.
pub fn solve_t_for_y(y: f64) -> Result<f64> {
    if !(1728.0..=3456.0).contains(&y) {
        return domain(format!("y = {y} outside [1728, 3456]"));
    }
    let tol = SOLVE_TOLERANCE;
    let value = |t: f64| -> Result<(f64, f64)> {
        let v = eval_j_imaginary_axis(t, 1e-15)?;
        Ok((v.re.to_f64(), v.radius.to_f64()))
    };
    let (lo_v, lo_r) = value(1.0)?;
    if (lo_v - y).abs() + lo_r <= tol {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (1.0f64, 1.254f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let (v, r) = value(mid)?;
        if (v - y).abs() + r <= tol {
            return Ok(mid);
        }
        if v < y {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    // Interval collapsed to adjacent doubles: return whichever endpoint is closer.
    let (vl, rl) = value(lo)?;
    let (vh, rh) = value(hi)?;
    let best = if (vl - y).abs() + rl <= (vh - y).abs() + rh { (lo, vl, rl) } else { (hi, vh, rh) };
    if (best.1 - y).abs() + best.2 <= tol {
        Ok(best.0)
    } else {
        Err(Error::PrecisionUnreachable { target: tol, max_bits: MAX_BITS })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_of_i_is_1728() {
        let v = eval_j_imaginary_axis(1.0, 1e-20).unwrap();
        assert!(v.contains(1728.0, 0.0));
        assert!(v.radius <= 1e-20);
    }

    #[test]
    fn j_vanishes_at_rho() {
        let p = 256;
        let re = Float::with_val(p, -0.5);
        let im = Float::with_val(p, 3).sqrt() / 2u32;
        let v = eval_j(&ComplexPoint::new(re, im).unwrap(), 1e-30).unwrap();
        assert!(v.contains(0.0, 0.0), "{v:?}");
    }

    #[test]
    fn j_at_1254i_exceeds_3456() {
        let v = eval_j_imaginary_axis(1.254, 1e-12).unwrap();
        let (lo, _) = v.abs_bounds();
        assert!(lo > 3456.0);
        assert!(v.im.clone().abs() <= v.radius);
    }

    #[test]
    fn reduction_examples() {
        let (w, m) = reduce_to_fundamental_domain(&ComplexPoint::from_f64(0.0, 1.0).unwrap());
        assert_eq!(m, Unimodular::IDENTITY);
        assert_eq!(w.im, 1.0);
        let (w, m) = reduce_to_fundamental_domain(&ComplexPoint::from_f64(5.0, 1.0).unwrap());
        assert_eq!(m, Unimodular { a: 1, b: -5, c: 0, d: 1 });
        assert_eq!(w.re, 0.0);
        let z = ComplexPoint::new(Float::with_val(256, 1) / 3u32, Float::with_val(256, 1) / 3u32).unwrap();
        let (w, m) = reduce_to_fundamental_domain(&z);
        assert_eq!(m.det(), 1);
        assert!(w.im.to_f64() >= 3f64.sqrt() / 2.0 - 1e-12);
        // Im of the image equals Im z / |cz + d|^2.
        let cz_d = ((m.c as f64 / 3.0 + m.d as f64).powi(2) + (m.c as f64 / 3.0).powi(2)) as f64;
        assert!((w.im.to_f64() - (1.0 / 3.0) / cz_d).abs() < 1e-12);
    }

    #[test]
    fn precision_unreachable() {
        // |j| ~ e^{2 pi 5000} needs ~45000 bits for an absolute radius of 1e-10.
        let z = ComplexPoint::from_f64(0.1, 5000.0).unwrap();
        assert!(matches!(eval_j(&z, 1e-10), Err(Error::PrecisionUnreachable { .. })));
        assert!(matches!(eval_j(&z, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn solve_t_examples() {
        assert_eq!(solve_t_for_y(1728.0).unwrap(), 1.0);
        let t = solve_t_for_y(3456.0).unwrap();
        assert!(t < 1.254 && t > 1.0);
        let t = solve_t_for_y(2000.0).unwrap();
        let v = eval_j_imaginary_axis(t, 1e-15).unwrap();
        assert!((v.re.to_f64() - 2000.0).abs() <= SOLVE_TOLERANCE);
        assert!(solve_t_for_y(1700.0).is_err());
        assert!(solve_t_for_y(3500.0).is_err());
    }

    #[test]
    fn coefficient_growth_bound_holds() {
        let j = j_expansion(1500).unwrap();
        for n in 1..1500i64 {
            let c = Float::with_val(64, j.coeff(n).unwrap());
            assert!(c.ln().to_f64() < 4.0 * std::f64::consts::PI * (n as f64).sqrt(), "c_{n}");
        }
    }
}
