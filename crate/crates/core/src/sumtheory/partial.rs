//! Partial sums kept exactly while the denominators stay manageable and in
//! 256-bit fixed point afterwards.

use rug::ops::DivRounding;
use rug::{Float, Integer, Rational};

pub const FIXED_BITS: u32 = 256;
/// Terms with index up to this stay exact rationals.
pub const EXACT_LIMIT: u64 = 10_000;
/// Precision used to compare sums with the analytic side.
pub const COMPARE_PREC: u32 = 320;

#[derive(Clone, Debug)]
pub struct PartialSum {
    exact: Option<Rational>,
    /// Value times `2^FIXED_BITS`, once out of exact mode.
    fixed: Integer,
    /// Accumulated absolute error, in units of `2^-FIXED_BITS`.
    err_ulps: u64,
    /// Extra absolute error from non-rational terms.
    err_extra: f64,
}

impl Default for PartialSum {
    fn default() -> Self {
        Self::new()
    }
}

impl PartialSum {
    pub fn new() -> Self {
        PartialSum { exact: Some(Rational::new()), fixed: Integer::new(), err_ulps: 0, err_extra: 0.0 }
    }

    /// Starts directly in fixed point.
    pub fn new_fixed() -> Self {
        PartialSum { exact: None, fixed: Integer::new(), err_ulps: 0, err_extra: 0.0 }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    fn leave_exact(&mut self) {
        if let Some(r) = self.exact.take() {
            let scaled = r << FIXED_BITS;
            self.fixed = scaled.floor().into_numer_denom().0;
            self.err_ulps += 1;
        }
    }

    /// Adds `num/den`; `index` is the summation index, which decides when
    /// exact mode ends.
    pub fn add(&mut self, index: u64, num: i64, den: u64) {
        if num == 0 {
            return;
        }
        if index > EXACT_LIMIT {
            self.leave_exact();
        }
        match &mut self.exact {
            Some(r) => *r += Rational::from((num, den)),
            None => {
                let q = (Integer::from(num) << FIXED_BITS).div_floor(Integer::from(den));
                self.fixed += q;
                self.err_ulps += 1;
            }
        }
    }

    /// Adds a real term known to within `abs_err`.
    pub fn add_float(&mut self, x: &Float, abs_err: f64) {
        self.leave_exact();
        let scaled = Float::with_val(x.prec(), x) << FIXED_BITS;
        self.fixed += scaled.to_integer().expect("finite term");
        self.err_ulps += 1;
        self.err_extra += abs_err;
    }

    /// Value at `COMPARE_PREC` and a bound on its absolute error.
    pub fn value(&self) -> (Float, f64) {
        match &self.exact {
            Some(r) => (Float::with_val(COMPARE_PREC, r), 2f64.powi(-(COMPARE_PREC as i32 - 8))),
            None => {
                let v = Float::with_val(COMPARE_PREC, &self.fixed) >> FIXED_BITS;
                let ulp = 2f64.powi(-(FIXED_BITS as i32));
                (v, (self.err_ulps + 1) as f64 * ulp + self.err_extra + 2f64.powi(-(COMPARE_PREC as i32 - 8)))
            }
        }
    }

    pub fn exact_value(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_ten_is_exact() {
        let mut s = PartialSum::new();
        for n in 1..=10u64 {
            s.add(n, 1, n);
        }
        assert_eq!(s.exact_value().unwrap(), &Rational::from((7381, 2520)));
    }

    #[test]
    fn fixed_agrees_with_exact() {
        let mut a = PartialSum::new();
        let mut b = PartialSum::new_fixed();
        for n in 1..=2000u64 {
            a.add(n, if n % 3 == 0 { -1 } else { 1 }, n * n);
            b.add(EXACT_LIMIT + 1, if n % 3 == 0 { -1 } else { 1 }, n * n);
        }
        let (va, _) = a.value();
        let (vb, eb) = b.value();
        let d = Float::with_val(COMPARE_PREC, &va - &vb).abs().to_f64();
        assert!(d <= eb && eb < 1e-70, "{d} {eb}");
    }

    #[test]
    fn float_terms() {
        let mut s = PartialSum::new_fixed();
        let x = Float::with_val(128, 2).ln();
        s.add_float(&x, 1e-36);
        s.add_float(&x, 1e-36);
        let (v, e) = s.value();
        assert!((v.to_f64() - 2.0 * std::f64::consts::LN_2).abs() < 1e-15 && e < 1e-35);
    }
}
