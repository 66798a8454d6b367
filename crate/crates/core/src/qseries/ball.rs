//! Midpoint-radius ball arithmetic over MPFR floats.
//!
//! Every operation rounds the midpoint to nearest and widens the radius by the
//! propagated input error plus one unit of rounding, with the radius itself
//! rounded upward.

use rug::float::{Constant, Round};
use rug::{Float, Integer};

const RAD_PREC: u32 = 64;

fn up<T>(src: T) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = std::cmp::Ordering>,
{
    Float::with_val_round(RAD_PREC, src, Round::Up).0
}

fn rounding_err(mid: &Float) -> Float {
    let mut e = up(mid.abs_ref());
    e >>= mid.prec() - 1;
    e
}

/// A real interval `[mid - rad, mid + rad]`.
#[derive(Clone, Debug)]
pub struct Ball {
    pub mid: Float,
    pub rad: Float,
}

impl Ball {
    pub fn exact(mid: Float) -> Self {
        Ball { mid, rad: Float::new(RAD_PREC) }
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        Self::exact(Float::with_val(prec, x))
    }

    pub fn from_integer(n: &Integer, prec: u32) -> Self {
        let mid = Float::with_val(prec, n);
        let rad = rounding_err(&mid);
        Ball { mid, rad }
    }

    pub fn pi(prec: u32) -> Self {
        let mid = Float::with_val(prec, Constant::Pi);
        let rad = rounding_err(&mid);
        Ball { mid, rad }
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn add(&self, o: &Ball) -> Ball {
        let mid = Float::with_val(self.prec(), &self.mid + &o.mid);
        let rad = up(&up(&self.rad + &o.rad) + &rounding_err(&mid));
        Ball { mid, rad }
    }

    pub fn sub(&self, o: &Ball) -> Ball {
        let mid = Float::with_val(self.prec(), &self.mid - &o.mid);
        let rad = up(&up(&self.rad + &o.rad) + &rounding_err(&mid));
        Ball { mid, rad }
    }

    pub fn neg(&self) -> Ball {
        Ball { mid: Float::with_val(self.prec(), -&self.mid), rad: self.rad.clone() }
    }

    pub fn mul(&self, o: &Ball) -> Ball {
        let mid = Float::with_val(self.prec(), &self.mid * &o.mid);
        let a = up(self.mid.abs_ref());
        let b = up(o.mid.abs_ref());
        let mut rad = up(&a * &o.rad);
        rad = up(&rad + &up(&b * &self.rad));
        rad = up(&rad + &up(&self.rad * &o.rad));
        rad = up(&rad + &rounding_err(&mid));
        Ball { mid, rad }
    }

    pub fn mul_int(&self, k: i64) -> Ball {
        self.mul(&Ball::exact(Float::with_val(self.prec(), k)))
    }

    /// Lower bound of the absolute value (zero if the ball contains 0).
    pub fn abs_lower(&self) -> Float {
        let a = Float::with_val_round(self.prec(), self.mid.abs_ref(), Round::Down).0;
        let lo = Float::with_val_round(self.prec(), &a - &self.rad, Round::Down).0;
        if lo < 0 {
            Float::new(self.prec())
        } else {
            lo
        }
    }

    /// Upper bound of the absolute value.
    pub fn abs_upper(&self) -> Float {
        let a = Float::with_val_round(self.prec(), self.mid.abs_ref(), Round::Up).0;
        Float::with_val_round(self.prec(), &a + &self.rad, Round::Up).0
    }

    /// Reciprocal; `None` if the ball contains zero.
    pub fn recip(&self) -> Option<Ball> {
        let lo = self.abs_lower();
        if lo == 0 {
            return None;
        }
        let mid = Float::with_val(self.prec(), self.mid.recip_ref());
        let m = Float::with_val_round(RAD_PREC, self.mid.abs_ref(), Round::Down).0;
        let lo64 = Float::with_val_round(RAD_PREC, &lo, Round::Down).0;
        let denom = Float::with_val_round(RAD_PREC, &m * &lo64, Round::Down).0;
        let rad = up(&up(&self.rad / &denom) + &rounding_err(&mid));
        Some(Ball { mid, rad })
    }

    /// exp, valid for radius < 1/2.
    pub fn exp(&self) -> Ball {
        let mid = Float::with_val(self.prec(), self.mid.exp_ref());
        let scale = up(&up(mid.abs_ref()) * 2u32);
        let rad = up(&up(&scale * &self.rad) + &rounding_err(&mid));
        Ball { mid, rad }
    }

    pub fn cos(&self) -> Ball {
        let mid = Float::with_val(self.prec(), self.mid.cos_ref());
        let rad = up(&self.rad + &rounding_err(&mid));
        Ball { mid, rad }
    }

    pub fn sin(&self) -> Ball {
        let mid = Float::with_val(self.prec(), self.mid.sin_ref());
        let rad = up(&self.rad + &rounding_err(&mid));
        Ball { mid, rad }
    }

    /// True if the two balls share a point.
    pub fn overlaps(&self, o: &Ball) -> bool {
        let d = up(&self.mid - &o.mid).abs();
        d <= up(&self.rad + &o.rad)
    }
}

/// A complex ball with independent real and imaginary radii.
#[derive(Clone, Debug)]
pub struct CBall {
    pub re: Ball,
    pub im: Ball,
}

impl CBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        CBall { re, im }
    }

    pub fn add(&self, o: &CBall) -> CBall {
        CBall::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn mul(&self, o: &CBall) -> CBall {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        CBall::new(re, im)
    }

    pub fn add_real(&self, x: &Ball) -> CBall {
        CBall::new(self.re.add(x), self.im.clone())
    }

    /// Quotient; `None` if the divisor's squared modulus ball contains zero.
    pub fn div(&self, o: &CBall) -> Option<CBall> {
        let n2 = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        let inv = n2.recip()?;
        let conj = CBall::new(o.re.clone(), o.im.neg());
        let p = self.mul(&conj);
        Some(CBall::new(p.re.mul(&inv), p.im.mul(&inv)))
    }

    /// Upper bound on the distance from the midpoint to any point of the ball.
    pub fn radius(&self) -> Float {
        up(&self.re.rad + &self.im.rad)
    }
}
