//! Classical modular polynomials for small primes, their coefficient heights,
//! explicit upper bounds on those heights, and machine checks of the
//! number-theoretic estimates behind the bounds.

pub mod arith;
pub mod bounds;
pub mod error;
pub mod farey;
pub mod modpoly;
pub mod qseries;
pub mod sumtheory;

pub use error::{Error, Result};
pub use qseries::{ComplexPoint, IntSeries};
