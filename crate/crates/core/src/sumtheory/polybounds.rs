//! Coefficient bounds for polynomials given through their roots, and the
//! height cost of interpolating in one variable.

use std::f64::consts::LN_2;

use num_complex::Complex64;

use crate::error::{domain, Result};

/// `2^(n-1) prod max(1, |w_k|)` for the monic polynomial with roots `w`.
pub fn coeff_product_bound(roots: &[Complex64]) -> f64 {
    if roots.is_empty() {
        return 1.0;
    }
    let prod: f64 = roots.iter().map(|w| w.norm().max(1.0)).product();
    2f64.powi(roots.len() as i32 - 1) * prod
}

/// `log M + n (log m + 1)/m`, bounding `log |c_k|` for a monic degree-`n`
/// polynomial whose roots all have modulus at least `m > 1`, with `M` the
/// product of the moduli.
pub fn height_from_roots_bound(n: u32, m: f64, big_m: f64) -> Result<f64> {
    if !(m > 1.0) {
        return domain(format!("smallest root modulus {m} must exceed 1"));
    }
    if !(big_m > 0.0) {
        return domain("root modulus product must be positive");
    }
    Ok(big_m.ln() + (m.ln() + 1.0) / m * n as f64)
}

/// [`height_from_roots_bound`] with `m` and `M` read off the roots.
pub fn height_from_roots(roots: &[Complex64]) -> Result<f64> {
    let mods: Vec<f64> = roots.iter().map(|w| w.norm()).collect();
    if let Some(bad) = mods.iter().find(|&&r| r <= 1.0) {
        return domain(format!("root of modulus {bad} is not outside the unit disc"));
    }
    if mods.is_empty() {
        return Ok(0.0);
    }
    let m = mods.iter().cloned().fold(f64::INFINITY, f64::min);
    let log_big_m: f64 = mods.iter().map(|r| r.ln()).sum();
    Ok(log_big_m + (m.ln() + 1.0) / m * mods.len() as f64)
}

/// `B + ((log L + 1)/L + 3 log 2) n`: height after interpolating a
/// polynomial of degree `n` in `Y` from its specialisations on `[L, 2L]`.
pub fn interp_height_bound(b: f64, l: f64, n: u32) -> Result<f64> {
    if !(l > 1.0) {
        return domain(format!("L = {l} must exceed 1"));
    }
    if !b.is_finite() {
        return domain("B must be finite");
    }
    Ok(b + ((l.ln() + 1.0) / l + 3.0 * LN_2) * n as f64)
}
