//! Coefficient heights and the derived per-prime statistics.

use std::fmt;

use rug::Float;

use super::poly::BivariateIntPoly;

/// Which logarithmic height feeds `c_l` and `r_l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeightConvention {
    /// `h2 * ln 2`, the convention of the published table.
    BitLength,
    /// `ln max|c|`.
    Exact,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeightReport {
    pub l: u64,
    /// `ln max|c|`.
    pub h: f64,
    /// Bit length of `max|c|`.
    pub h2: u32,
    /// Statistics under [`HeightConvention::BitLength`].
    pub c_l: f64,
    pub r_l: f64,
}

impl HeightReport {
    pub fn height_for(&self, conv: HeightConvention) -> f64 {
        match conv {
            HeightConvention::BitLength => self.h2 as f64 * std::f64::consts::LN_2,
            HeightConvention::Exact => self.h,
        }
    }

    /// `(c_l, r_l)` under the given convention, unrounded.
    pub fn stats(&self, conv: HeightConvention) -> (f64, f64) {
        let h = self.height_for(conv);
        let l = self.l as f64;
        let lead = 6.0 * l * l.ln();
        ((h - lead) / l, (lead + 18.0 * l) / h)
    }
}

/// Height report of a nonzero polynomial.
pub fn height(p: &BivariateIntPoly) -> HeightReport {
    let m = p.max_abs();
    assert!(m != 0, "height of the zero polynomial");
    let h2 = m.significant_bits();
    // 128 bits keep the logarithm far inside the 1e-12 relative budget.
    let h = Float::with_val(128, &m).ln().to_f64();
    let mut r = HeightReport { l: p.l(), h, h2, c_l: 0.0, r_l: 0.0 };
    (r.c_l, r.r_l) = r.stats(HeightConvention::BitLength);
    r
}

/// A value rounded half-up to two decimals, held as an integer count of hundredths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hundredths(pub i64);

impl Hundredths {
    pub fn round(x: f64) -> Self {
        Hundredths((x * 100.0 + 0.5).floor() as i64)
    }
}

impl fmt::Display for Hundredths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let a = self.0.unsigned_abs();
        write!(f, "{sign}{}.{:02}", a / 100, a % 100)
    }
}

/// `(c_l, r_l)` rounded for display.
pub fn table_stats(report: &HeightReport, conv: HeightConvention) -> (Hundredths, Hundredths) {
    let (c, r) = report.stats(conv);
    (Hundredths::round(c), Hundredths::round(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hundredths_display() {
        assert_eq!(Hundredths::round(12.475000001).to_string(), "12.48");
        assert_eq!(Hundredths::round(1.2649).to_string(), "1.26");
        assert_eq!(Hundredths::round(-0.004).to_string(), "0.00");
        assert_eq!(Hundredths::round(-1.5).to_string(), "-1.50");
        assert_eq!(Hundredths(7).to_string(), "0.07");
    }
}
