//! Exact q-expansions of Delta, E4 and j, and certified evaluation of j.

pub mod ball;
mod eval;
mod expansions;
mod series;

pub use eval::{
    eval_j, eval_j_imaginary_axis, reduce_to_fundamental_domain, solve_t_for_y, Certified, ComplexPoint,
    Unimodular, SOLVE_TOLERANCE,
};
pub use expansions::{delta_expansion, e4_expansion, euler_product, j_expansion};
pub use series::{inverse_trunc, mul_trunc, sqr_trunc, IntSeries};
