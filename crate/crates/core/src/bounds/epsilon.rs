//! The estimate `epsilon'(l, t)` for the correction terms `c(Im Lambda z)`.

use std::f64::consts::PI;

use super::{check_t, require};
use crate::error::Result;

/// Quartile constants for the Farey denominators.
pub const C1: f64 = 0.539;
pub const C2: f64 = 0.742;
pub const C3: f64 = 0.917;

/// `c(x) = ln(e^{2 pi max(x, 1/x)} + 1728 - e^{2 pi}) - 2 pi x`.
pub fn c_of_x(x: f64) -> Result<f64> {
    require(x > 0.0 && x.is_finite(), || format!("c(x) needs x > 0, got {x}"))?;
    let m = x.max(1.0 / x);
    let k = 1728.0 - (2.0 * PI).exp();
    // ln(e^{2 pi m} + k) = 2 pi m + ln(1 + k e^{-2 pi m}), stable for large m.
    Ok(2.0 * PI * m + (k * (-2.0 * PI * m).exp()).ln_1p() - 2.0 * PI * x)
}

/// `f(alpha, beta) = c(1/(alpha^2 + beta^2))`, for `alpha^2 + beta^2 <= 2`.
pub fn f_alpha_beta(alpha: f64, beta: f64) -> Result<f64> {
    let s = alpha * alpha + beta * beta;
    require(s > 0.0 && s <= 2.0 * (1.0 + 1e-12), || format!("alpha^2 + beta^2 = {s} outside (0, 2]"))?;
    c_of_x(1.0 / s)
}

/// The constants `c1..c7` and `M` of the epsilon estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonContext {
    pub l: f64,
    pub t: f64,
    pub c: [f64; 7],
    pub m: f64,
}

impl EpsilonContext {
    pub fn new(l: f64, t: f64) -> Result<Self> {
        require(l > 5.0, || format!("l = {l} must exceed 5"))?;
        check_t(t)?;
        let c = [
            f_alpha_beta(1.0, 1.0)?,
            f_alpha_beta(1.0, C3)?,
            f_alpha_beta(1.0 - C2 / (2.0 * t), C2)?,
            f_alpha_beta(1.0 - C1 / (2.0 * t), C1)?,
            f_alpha_beta(1.0 - 1.0 / t, 1.0)?,
            f_alpha_beta(1.0 - C3 / t, C3)?,
            f_alpha_beta(1.0 - C2 / t, C2)?,
        ];
        let m = 3.0 * l / (2.0 * PI * PI * t) + 0.125 * (l / t).sqrt() * (l / t).ln();
        Ok(EpsilonContext { l, t, c, m })
    }

    /// `epsilon'(l, t)`.
    pub fn value(&self) -> f64 {
        let [c1, c2, c3, c4, c5, c6, c7] = self.c;
        let m = self.m;
        c1 * (m + 4.0) + c2 * m + c3 * m + c4 * (m - 4.0) + 0.5 * c5 * (m + 2.0) + c6 * m + c7 * (self.l - 5.5 * m - 2.0)
    }

    /// The same quantity after collecting terms.
    pub fn value_collected(&self) -> f64 {
        let [c1, c2, c3, c4, c5, c6, c7] = self.c;
        (c1 + c2 + c3 + c4 + 0.5 * c5 + c6 - 5.5 * c7) * self.m + 4.0 * (c1 - c4) + (c5 - 2.0 * c7) + c7 * self.l
    }
}

pub fn epsilon_prime(l: f64, t: f64) -> Result<f64> {
    Ok(EpsilonContext::new(l, t)?.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_examples() {
        let c1 = c_of_x(1.0).unwrap();
        assert!((c1 - (1728f64.ln() - 2.0 * PI)).abs() < 1e-12);
        assert!((c1 - 1.1715346).abs() < 1e-6);
        assert!(c1 < 1.172);
        let ch = c_of_x(0.5).unwrap();
        assert!((ch - 9.428928).abs() < 1e-6 && ch < 9.429);
        assert!((c_of_x(2.0).unwrap() - 0.0041500614).abs() < 1e-9);
        assert!(c_of_x(0.0).is_err());
        // Large arguments stay finite.
        assert!(c_of_x(500.0).unwrap().abs() < 1e-6);
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_alpha_beta(1.0, 1.0).unwrap(), c_of_x(0.5).unwrap());
        assert_eq!(f_alpha_beta(0.0, 1.0).unwrap(), c_of_x(1.0).unwrap());
        assert_eq!(f_alpha_beta(0.3, 0.8).unwrap(), f_alpha_beta(0.8, 0.3).unwrap());
        assert!(f_alpha_beta(1.2, 1.0).is_err());
    }

    #[test]
    fn collected_form_agrees() {
        for l in [7.0, 50.0, 1000.0] {
            for t in [1.0, 1.1, 1.25] {
                let e = EpsilonContext::new(l, t).unwrap();
                assert!((e.value() - e.value_collected()).abs() < 1e-9 * e.value().abs());
            }
        }
    }
}
