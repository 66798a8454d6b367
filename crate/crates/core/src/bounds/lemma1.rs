//! Height of `Phi_l(X, y)` for a fixed `y = j(z)`, and the bound obtained
//! from the roots `j(lz)` and `j((z+b)/l)`.

use std::f64::consts::{LN_2, PI};

use rug::Float;

use super::{lognorm_abs_interval, JLT_CONSTANT};
use crate::error::{domain, Result};
use crate::farey::SumInterval;
use crate::modpoly::BivariateIntPoly;
use crate::qseries::ball::Ball;
use crate::qseries::{eval_j, reduce_to_fundamental_domain, ComplexPoint};

const PREC: u32 = 256;

/// Interval for `log+|j(z)|`, asking for ~15 significant digits.
pub fn lognorm_j(z: &ComplexPoint) -> Result<(f64, f64)> {
    let (w, _) = reduce_to_fundamental_domain(z);
    let scale = (2.0 * PI * w.im.to_f64()).exp() + 2000.0;
    let v = eval_j(z, (scale * 1e-15).max(1e-12))?;
    let (a, c) = v.abs_bounds();
    Ok(lognorm_abs_interval(a.to_f64(), c.to_f64()))
}

/// `||j(lz)|| + sum_b ||j((z+b)/l)|| + l ln 2` as a certified interval.
pub fn hly_bound(l: u64, z: &ComplexPoint) -> Result<SumInterval> {
    if l == 0 || l > 200 {
        return domain(format!("l = {l} outside 1..=200"));
    }
    let p = PREC.max(z.re.prec()).max(z.im.prec());
    let lz = ComplexPoint::new(Float::with_val(p, &z.re * l), Float::with_val(p, &z.im * l))?;
    let (mut lo, mut hi) = lognorm_j(&lz)?;
    for b in 0..l {
        let zb = ComplexPoint::new(Float::with_val(p, &z.re + b) / l, Float::with_val(p, &z.im / l))?;
        let (a, c) = lognorm_j(&zb)?;
        lo += a;
        hi += c;
    }
    let pad = 1e-12 * (hi + 1.0);
    Ok(SumInterval { lo: (lo - pad).max(0.0) + l as f64 * LN_2 * (1.0 - 1e-15), hi: hi + pad + l as f64 * LN_2 * (1.0 + 1e-15) })
}

/// The estimate `||j(ilt)|| < 2 pi l t + 1.172`.
pub fn jlt_lognorm_bound(l: f64, t: f64) -> f64 {
    2.0 * PI * l * t + JLT_CONSTANT
}

/// Interval for `ln max_i |sum_j c(i,j) y^j|` with `y` in `[mid - rad, mid + rad]`.
pub fn specialized_height(p: &BivariateIntPoly, y_mid: &Float, y_rad: &Float) -> (f64, f64) {
    let prec = 1024u32.max(y_mid.prec());
    let y = Ball { mid: Float::with_val(prec, y_mid), rad: Float::with_val(64, y_rad) };
    let d = p.degree();
    let mut best_lo = Float::new(prec);
    let mut best_hi = Float::new(prec);
    for i in 0..=d {
        let mut acc = Ball::exact(Float::new(prec));
        for j in (0..=d).rev() {
            acc = acc.mul(&y).add(&Ball::from_integer(p.coeff(i, j), prec));
        }
        best_lo.max_mut(&acc.abs_lower());
        best_hi.max_mut(&acc.abs_upper());
    }
    let ln = |x: &Float| if *x > 0 { Float::with_val(prec, x.ln_ref()).to_f64() } else { f64::NEG_INFINITY };
    let (a, b) = (ln(&best_lo), ln(&best_hi));
    (a - 1e-12 * a.abs(), b + 1e-12 * b.abs())
}
