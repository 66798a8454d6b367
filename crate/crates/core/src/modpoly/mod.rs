//! Classical modular polynomials for small primes.

mod cache;
mod height;
pub mod known;
mod poly;
mod reduction;
mod solve;

pub use cache::{write_atomic, CacheOutcome, PhiCache, CACHE_ENV};
pub use height::{height, table_stats, HeightConvention, HeightReport, Hundredths};
pub use poly::BivariateIntPoly;
pub use reduction::j_reduction;
pub use solve::{linear_solve, solving_precision, verify_modular_equation};

use crate::arith::is_prime;
use crate::error::{domain, Error, Result};

/// Largest l computed unless raised explicitly.
pub const DEFAULT_MAX_L: u64 = 61;
/// Extra vanishing q-coefficients demanded by the post-hoc check.
pub const VERIFY_SLACK: i64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Match q-coefficients of `Phi(j(q^l), j(q))` against an ansatz.
    LinearSolve,
    /// Expand the product over conjugates and reduce against powers of j.
    JReduction,
}

#[derive(Clone, Debug)]
pub struct PhiConfig {
    pub max_l: u64,
}

impl Default for PhiConfig {
    fn default() -> Self {
        PhiConfig { max_l: DEFAULT_MAX_L }
    }
}

/// Phi_l with the default configuration.
pub fn compute_phi(l: u64, strategy: Strategy) -> Result<BivariateIntPoly> {
    compute_phi_with(l, strategy, &PhiConfig::default())
}

/// Phi_l, checked for structure, the Kronecker congruence and the modular
/// equation before being returned. A failed solve is retried once at
/// doubled precision.
pub fn compute_phi_with(l: u64, strategy: Strategy, cfg: &PhiConfig) -> Result<BivariateIntPoly> {
    if !is_prime(l) {
        return domain(format!("l = {l} is not prime"));
    }
    if l > cfg.max_l {
        return domain(format!("l = {l} exceeds the configured maximum {}", cfg.max_l));
    }
    let attempt = |boost: i64| match strategy {
        Strategy::LinearSolve => linear_solve(l, solving_precision(l) * boost),
        Strategy::JReduction => j_reduction(l, VERIFY_SLACK * boost + (boost - 1) * l as i64),
    };
    let p = match attempt(1) {
        Err(Error::InconsistentSystem { .. }) => attempt(2)?,
        other => other?,
    };
    let fail = |detail: String| Error::InconsistentSystem { l, detail };
    p.check_structure().map_err(fail)?;
    if !p.kronecker_congruence_holds() {
        return Err(fail("Kronecker congruence fails".into()));
    }
    if !verify_modular_equation(&p, VERIFY_SLACK) {
        return Err(fail("modular equation residual is nonzero".into()));
    }
    Ok(p)
}
