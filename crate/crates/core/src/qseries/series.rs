//! Truncated Laurent series in q with exact integer coefficients.
//!
//! Products go through Kronecker substitution: both operands are packed into a
//! single big integer with fixed-width signed slots, GMP multiplies, and the
//! product is unpacked with balanced digits. Short operands use schoolbook.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::integer::Order;
use rug::{Assign, Integer};

use crate::error::{Error, Result};

const SCHOOLBOOK_CUTOFF: usize = 12;

/// `sum_k coeffs[k] q^(valuation + k) + O(q^prec)`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntSeries {
    valuation: i64,
    coeffs: Vec<Integer>,
    prec: i64,
}

impl IntSeries {
    /// Builds a series from coefficients starting at `valuation`; `coeffs.len()`
    /// must equal `prec - valuation`. Leading zeros are stripped.
    pub fn new(valuation: i64, coeffs: Vec<Integer>, prec: i64) -> Result<Self> {
        if prec - valuation != coeffs.len() as i64 {
            return Err(Error::Domain(format!(
                "{} coefficients do not span [{valuation}, {prec})",
                coeffs.len()
            )));
        }
        Ok(Self::normalized(valuation, coeffs, prec))
    }

    fn normalized(valuation: i64, mut coeffs: Vec<Integer>, prec: i64) -> Self {
        let lead = coeffs.iter().position(|c| *c != 0).unwrap_or(coeffs.len());
        if lead > 0 {
            coeffs.drain(..lead);
        }
        IntSeries { valuation: valuation + lead as i64, coeffs, prec }
    }

    pub fn zero(prec: i64) -> Self {
        IntSeries { valuation: prec, coeffs: Vec::new(), prec }
    }

    /// `c q^e + O(q^prec)`.
    pub fn monomial(c: Integer, e: i64, prec: i64) -> Self {
        if e >= prec {
            return Self::zero(prec);
        }
        let mut coeffs = vec![Integer::new(); (prec - e) as usize];
        coeffs[0] = c;
        Self::normalized(e, coeffs, prec)
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Coefficients from `q^valuation` up to `q^(prec-1)`.
    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^n`; `None` when `n` is at or beyond the precision.
    pub fn coeff(&self, n: i64) -> Option<Integer> {
        if n >= self.prec {
            None
        } else if n < self.valuation {
            Some(Integer::new())
        } else {
            Some(self.coeffs[(n - self.valuation) as usize].clone())
        }
    }

    /// Coefficient of `q^n` by reference; `None` outside `[valuation, prec)`.
    pub fn coeff_ref(&self, n: i64) -> Option<&Integer> {
        if n < self.valuation || n >= self.prec {
            None
        } else {
            Some(&self.coeffs[(n - self.valuation) as usize])
        }
    }

    /// Drops terms at and above `q^prec` (no-op if already coarser).
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        if prec <= self.valuation {
            return Self::zero(prec);
        }
        let coeffs = self.coeffs[..(prec - self.valuation) as usize].to_vec();
        Self::normalized(self.valuation, coeffs, prec)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        IntSeries { valuation: self.valuation + k, coeffs: self.coeffs.clone(), prec: self.prec + k }
    }

    pub fn scale(&self, c: &Integer) -> Self {
        if *c == 0 {
            return Self::zero(self.prec);
        }
        let coeffs = self.coeffs.iter().map(|x| Integer::from(x * c)).collect();
        IntSeries { valuation: self.valuation, coeffs, prec: self.prec }
    }

    fn add_signed(&self, other: &Self, negate: bool) -> Self {
        let prec = self.prec.min(other.prec);
        let val = self.valuation.min(other.valuation).min(prec);
        let mut coeffs = vec![Integer::new(); (prec - val) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = self.valuation + k as i64;
            if e >= prec {
                break;
            }
            coeffs[(e - val) as usize].assign(c);
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            let e = other.valuation + k as i64;
            if e >= prec {
                break;
            }
            let slot = &mut coeffs[(e - val) as usize];
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::normalized(val, coeffs, prec)
    }

    /// Product; the result is exact to the precision both operands support.
    pub fn mul_series(&self, other: &Self) -> Self {
        let rel = (self.prec - self.valuation).min(other.prec - other.valuation);
        let val = self.valuation + other.valuation;
        let prec = (self.valuation + other.prec).min(other.valuation + self.prec);
        if self.is_zero() || other.is_zero() {
            return Self::zero(prec);
        }
        let n = rel as usize;
        let prod = mul_trunc(&self.coeffs, &other.coeffs, n);
        Self::normalized(val, pad(prod, n), val + rel)
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, k: u32) -> Self {
        let rel = self.prec - self.valuation;
        if k == 0 {
            let one_prec = if self.is_zero() { 0 } else { rel };
            return Self::monomial(Integer::from(1), 0, one_prec);
        }
        if self.is_zero() {
            return Self::zero(self.prec * k as i64 - self.valuation * (k as i64 - 1));
        }
        let n = rel as usize;
        let mut base = self.coeffs.clone();
        let mut acc: Option<Vec<Integer>> = None;
        let mut e = k;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => pad(mul_trunc(&a, &base, n), n),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = pad(sqr_trunc(&base, n), n);
        }
        let val = self.valuation * k as i64;
        Self::normalized(val, acc.unwrap(), val + rel)
    }

    /// Inverse of a series whose leading coefficient is a unit (±1).
    pub fn inverse(&self) -> Result<Self> {
        let lead = self.coeffs.first().ok_or_else(|| Error::Domain("inverse of zero series".into()))?;
        if *lead != 1 && *lead != -1 {
            return Err(Error::Domain("leading coefficient is not a unit".into()));
        }
        let n = self.coeffs.len();
        let inv = inverse_trunc(&self.coeffs, n);
        Ok(Self::normalized(-self.valuation, inv, -self.valuation + n as i64))
    }

    /// Exact quotient `self / divisor`. Fails if any quotient coefficient is
    /// not an integer or the product does not reproduce the dividend.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let lead = divisor
            .coeffs
            .first()
            .ok_or_else(|| Error::Domain("division by zero series".into()))?;
        let val = self.valuation - divisor.valuation;
        let rel = (self.prec - self.valuation).min(divisor.prec - divisor.valuation);
        let quotient = if self.is_zero() {
            Self::zero(val + rel)
        } else if *lead == 1 || *lead == -1 {
            let inv = divisor.inverse()?;
            self.mul_series(&inv)
        } else {
            let n = rel as usize;
            let mut q: Vec<Integer> = Vec::with_capacity(n);
            for k in 0..n {
                let mut r = self.coeffs.get(k).cloned().unwrap_or_default();
                for (i, qi) in q.iter().enumerate() {
                    if let Some(d) = divisor.coeffs.get(k - i) {
                        r -= qi * d;
                    }
                }
                if !r.is_divisible(lead) {
                    return Err(Error::InexactDivision { exponent: val + k as i64 });
                }
                r.div_exact_mut(lead);
                q.push(r);
            }
            Self::normalized(val, q, val + rel)
        };
        let back = quotient.mul_series(divisor);
        let shared = back.prec.min(self.prec);
        let rem = back.truncate(shared) - self.truncate(shared);
        if let Some(pos) = rem.coeffs.iter().position(|c| *c != 0) {
            return Err(Error::InexactDivision { exponent: rem.valuation + pos as i64 });
        }
        Ok(quotient)
    }

    /// `q -> q^m`.
    pub fn substitute_power(&self, m: u32) -> Self {
        assert!(m >= 1, "substitute_power needs m >= 1");
        let m64 = m as i64;
        let prec = self.prec * m64;
        if self.is_zero() {
            return Self::zero(prec);
        }
        let val = self.valuation * m64;
        let mut coeffs = vec![Integer::new(); (prec - val) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * m as usize].assign(c);
        }
        IntSeries { valuation: val, coeffs, prec }
    }

    /// Keeps only exponents divisible by `m` and divides them by `m`.
    pub fn extract_multiples(&self, m: u32) -> Self {
        let m64 = m as i64;
        let prec = self.prec.div_euclid(m64) + i64::from(self.prec.rem_euclid(m64) != 0);
        let val = self.valuation.div_euclid(m64) + i64::from(self.valuation.rem_euclid(m64) != 0);
        let val = val.min(prec);
        let coeffs = (val..prec)
            .map(|e| self.coeff(e * m64).unwrap_or_default())
            .collect();
        Self::normalized(val, coeffs, prec)
    }
}

impl fmt::Debug for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*q^{}", c, self.valuation + k as i64)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.prec)
    }
}

impl Add for &IntSeries {
    type Output = IntSeries;
    fn add(self, rhs: &IntSeries) -> IntSeries {
        self.add_signed(rhs, false)
    }
}

impl Sub for &IntSeries {
    type Output = IntSeries;
    fn sub(self, rhs: &IntSeries) -> IntSeries {
        self.add_signed(rhs, true)
    }
}

impl Sub for IntSeries {
    type Output = IntSeries;
    fn sub(self, rhs: IntSeries) -> IntSeries {
        self.add_signed(&rhs, true)
    }
}

impl Add for IntSeries {
    type Output = IntSeries;
    fn add(self, rhs: IntSeries) -> IntSeries {
        self.add_signed(&rhs, false)
    }
}

impl Mul for &IntSeries {
    type Output = IntSeries;
    fn mul(self, rhs: &IntSeries) -> IntSeries {
        self.mul_series(rhs)
    }
}

impl Neg for &IntSeries {
    type Output = IntSeries;
    fn neg(self) -> IntSeries {
        IntSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| Integer::from(-c)).collect(),
            prec: self.prec,
        }
    }
}

fn pad(mut v: Vec<Integer>, n: usize) -> Vec<Integer> {
    v.resize(n, Integer::new());
    v
}

fn max_bits(a: &[Integer]) -> u32 {
    a.iter().map(|c| c.significant_bits()).max().unwrap_or(0)
}

fn bit_len(n: usize) -> u32 {
    usize::BITS - n.leading_zeros()
}

/// First `n` coefficients of the product of two power series.
pub fn mul_trunc(a: &[Integer], b: &[Integer], n: usize) -> Vec<Integer> {
    let a = &a[..a.len().min(n)];
    let b = &b[..b.len().min(n)];
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = (a.len() + b.len() - 1).min(n);
    if a.len().min(b.len()) <= SCHOOLBOOK_CUTOFF {
        return schoolbook(a, b, out_len);
    }
    let bits = max_bits(a) + max_bits(b) + bit_len(a.len().min(b.len())) + 2;
    let w = bits.div_ceil(64) as usize;
    let pa = pack(a, w);
    let pb = pack(b, w);
    unpack(&Integer::from(&pa * &pb), out_len, w)
}

/// First `n` coefficients of the square of a power series.
pub fn sqr_trunc(a: &[Integer], n: usize) -> Vec<Integer> {
    let a = &a[..a.len().min(n)];
    if a.is_empty() {
        return Vec::new();
    }
    let out_len = (2 * a.len() - 1).min(n);
    if a.len() <= SCHOOLBOOK_CUTOFF {
        return schoolbook(a, a, out_len);
    }
    let bits = 2 * max_bits(a) + bit_len(a.len()) + 2;
    let w = bits.div_ceil(64) as usize;
    let pa = pack(a, w);
    unpack(&Integer::from(pa.square_ref()), out_len, w)
}

/// First `n` coefficients of `1/a` for `a[0] = ±1` (Newton iteration).
pub fn inverse_trunc(a: &[Integer], n: usize) -> Vec<Integer> {
    let mut g = vec![a[0].clone()];
    let mut len = 1;
    while len < n {
        let len2 = (2 * len).min(n);
        let fg = pad(mul_trunc(a, &g, len2), len2);
        let mut r: Vec<Integer> = fg.into_iter().map(|c| -c).collect();
        r[0] += 1;
        let corr = pad(mul_trunc(&g, &r, len2), len2);
        g.resize(len2, Integer::new());
        for (gi, ci) in g.iter_mut().zip(corr.iter()) {
            *gi += ci;
        }
        len = len2;
    }
    g.truncate(n);
    g
}

fn schoolbook(a: &[Integer], b: &[Integer], out_len: usize) -> Vec<Integer> {
    let mut out = vec![Integer::new(); out_len];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 || i >= out_len {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(out_len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn pack(a: &[Integer], w: usize) -> Integer {
    let mut pos = vec![0u64; a.len() * w];
    let mut neg = vec![0u64; a.len() * w];
    let mut any_neg = false;
    for (k, c) in a.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let digits = c.to_digits::<u64>(Order::Lsf);
        let dst = if *c < 0 {
            any_neg = true;
            &mut neg
        } else {
            &mut pos
        };
        dst[k * w..k * w + digits.len()].copy_from_slice(&digits);
    }
    let mut p = Integer::from_digits(&pos, Order::Lsf);
    if any_neg {
        p -= Integer::from_digits(&neg, Order::Lsf);
    }
    p
}

fn unpack(p: &Integer, n: usize, w: usize) -> Vec<Integer> {
    let negative = *p < 0;
    let digits = p.to_digits::<u64>(Order::Lsf);
    let half = Integer::from(1) << (64 * w as u32 - 1);
    let full = Integer::from(1) << (64 * w as u32);
    let mut out = Vec::with_capacity(n);
    let mut carry = false;
    for k in 0..n {
        let lo = (k * w).min(digits.len());
        let hi = ((k + 1) * w).min(digits.len());
        let mut v = Integer::from_digits(&digits[lo..hi], Order::Lsf);
        if carry {
            v += 1;
        }
        carry = v >= half;
        if carry {
            v -= &full;
        }
        if negative {
            v = -v;
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive(a: &[Integer], b: &[Integer], n: usize) -> Vec<Integer> {
        let mut out = vec![Integer::new(); n];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if i + j < n {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    fn big_vec() -> impl Strategy<Value = Vec<Integer>> {
        prop::collection::vec((any::<i64>(), 0u32..300), 1..60).prop_map(|v| {
            v.into_iter().map(|(x, s)| Integer::from(x) << s).collect()
        })
    }

    proptest! {
        #[test]
        fn kronecker_matches_naive(a in big_vec(), b in big_vec(), n in 1usize..130) {
            prop_assert_eq!(pad(mul_trunc(&a, &b, n), n), naive(&a, &b, n));
            prop_assert_eq!(pad(sqr_trunc(&a, n), n), naive(&a, &a, n));
        }

        #[test]
        fn inverse_times_series_is_one(tail in prop::collection::vec(-1000i64..1000, 0..80), sign in prop::bool::ANY) {
            let mut a = ints(&[if sign { 1 } else { -1 }]);
            a.extend(ints(&tail));
            let n = a.len();
            let inv = inverse_trunc(&a, n);
            let prod = pad(mul_trunc(&a, &inv, n), n);
            let mut one = vec![Integer::new(); n];
            one[0] = Integer::from(1);
            prop_assert_eq!(prod, one);
        }
    }

    #[test]
    fn precision_of_product() {
        let a = IntSeries::new(-1, ints(&[1, 2, 3]), 2).unwrap();
        let b = IntSeries::new(0, ints(&[1, 1, 1, 1, 1]), 5).unwrap();
        let c = &a * &b;
        assert_eq!(c.valuation(), -1);
        assert_eq!(c.prec(), 2);
        assert_eq!(c.coeffs(), &ints(&[1, 3, 6])[..]);
    }

    #[test]
    fn normalization_and_zero() {
        let a = IntSeries::new(0, ints(&[0, 0, 5, 1]), 4).unwrap();
        assert_eq!(a.valuation(), 2);
        assert_eq!(a.coeffs().len() as i64, a.prec() - a.valuation());
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z.valuation(), z.prec());
        assert!(IntSeries::new(0, ints(&[1]), 3).is_err());
    }

    #[test]
    fn inexact_division_detected() {
        let a = IntSeries::new(0, ints(&[1, 1, 0]), 3).unwrap();
        let b = IntSeries::new(0, ints(&[2, 1, 0]), 3).unwrap();
        assert!(matches!(a.div_exact(&b), Err(Error::InexactDivision { .. })));
        let c = IntSeries::new(0, ints(&[4, 2, 6, 3]), 4).unwrap();
        let q = c.div_exact(&b).unwrap();
        assert_eq!(q.coeffs(), &ints(&[2, 0, 3, 0])[..q.coeffs().len()]);
    }

    #[test]
    fn extract_multiples_picks_divisible_exponents() {
        let a = IntSeries::new(-2, ints(&[1, 2, 3, 4, 5, 6, 7]), 5).unwrap();
        let u = a.extract_multiples(2);
        assert_eq!(u.valuation(), -1);
        assert_eq!(u.prec(), 3);
        assert_eq!(u.coeffs(), &ints(&[1, 3, 5, 7])[..]);
    }

    #[test]
    fn power_by_squaring() {
        let a = IntSeries::new(-1, ints(&[1, 1, 0, 0, 0, 0]), 5).unwrap();
        let p = a.pow(3);
        let direct = &(&a * &a) * &a;
        assert_eq!(p, direct);
        assert_eq!(p.valuation(), -3);
    }
}
