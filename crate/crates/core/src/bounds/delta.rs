//! Lower bounds `delta_d` on the overestimate made by extending the sums of
//! main terms to all integers, for intervals with `sqrt(lt)/(d+1) < k <= sqrt(lt)/d`.

use std::f64::consts::PI;

use super::require;
use crate::error::Result;

/// `delta(l, t)` sums `d = 1..=DELTA_TERMS`.
pub const DELTA_TERMS: u32 = 59;

/// Worst-case error term for `d = 1`; always negative.
pub fn eps1(l: f64, t: f64) -> f64 {
    -((t + 2.0) * l.ln() + 2.0 * t + 4.0 - 16f64.ln() + (2.0 - t) * t.ln()) / (6.0 * (l * t).sqrt())
}

/// Worst-case error term for `d = 2`.
pub fn eps2(l: f64, t: f64) -> f64 {
    -((l * t).ln() - 2.0 * (3.0 * 3f64.ln() - 2.0 * 2f64.ln()) + 2.0) / (6.0 * (l * t).sqrt())
}

/// `S_d = (6/pi^2) ln((d+1)/d) - (ln(lt) - 2((d+1) ln(d+1) - d ln d) + 2)/(6 sqrt(lt))`.
pub fn s_d(l: f64, t: f64, d: u32) -> f64 {
    let df = d as f64;
    let xlogx = (df + 1.0) * (df + 1.0).ln() - if d == 0 { 0.0 } else { df * df.ln() };
    6.0 / (PI * PI) * ((df + 1.0) / df).ln() - ((l * t).ln() - 2.0 * xlogx + 2.0) / (6.0 * (l * t).sqrt())
}

/// `pi tanh(pi t)` minus the `d + 1` terms of its partial-fraction series
/// nearest the center (`d` odd), or `pi coth(pi t)` minus the `d + 1` central
/// terms of its series (`d` even).
fn excess(t: f64, d: u32) -> f64 {
    let half = d as i64 / 2;
    if d % 2 == 1 {
        // n - 1/2 for n = -half ..= half + 1
        let near: f64 = (-half..=half + 1).map(|n| t / (t * t + (n as f64 - 0.5).powi(2))).sum();
        PI * (PI * t).tanh() - near
    } else {
        let near: f64 = (-half..=half).map(|n| t / (t * t + (n * n) as f64)).sum();
        PI / (PI * t).tanh() - near
    }
}

/// `delta_d(l, t)`; `d = 1, 2` use their dedicated error terms.
pub fn delta_d(l: f64, t: f64, d: u32) -> Result<f64> {
    require(d >= 1, || "d must be at least 1".into())?;
    require(l >= ((d + 1) * (d + 1)) as f64, || format!("delta_{d} needs l >= {}", (d + 1) * (d + 1)))?;
    require(t >= 1.0, || format!("t = {t} below 1"))?;
    let factor = match d {
        1 => 6.0 / (PI * PI) * (2.0 / t).ln() + eps1(l, t),
        2 => 6.0 / (PI * PI) * 1.5f64.ln() + eps2(l, t),
        _ => s_d(l, t, d),
    };
    Ok(2.0 * PI * l * excess(t, d) * factor)
}

/// `delta(l, t) = delta_1 + .. + delta_59`, for `l >= 3600`.
pub fn delta_total(l: f64, t: f64) -> Result<f64> {
    require(l >= 3600.0, || format!("delta needs l >= 3600, got {l}"))?;
    (1..=DELTA_TERMS).map(|d| delta_d(l, t, d)).sum()
}

/// `10.086 l - 17.693 sqrt(l) ln l + 58.939 sqrt(l)`.
pub fn delta_lower_closed_form(l: f64) -> f64 {
    10.086 * l - 17.693 * l.sqrt() * l.ln() + 58.939 * l.sqrt()
}
