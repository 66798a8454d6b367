//! Sieve-backed checks of the explicit estimates for summatory functions of
//! `mu` and `phi`, and the polynomial coefficient bounds used alongside them.

pub mod constants;
mod partial;
mod polybounds;
mod sieve;
mod verify;

pub use partial::{PartialSum, COMPARE_PREC, EXACT_LIMIT, FIXED_BITS};
pub use polybounds::{coeff_product_bound, height_from_roots, height_from_roots_bound, interp_height_bound};
pub use sieve::{
    build_sieve, build_sieve_with_budget, for_each_segment, SieveTables, DEFAULT_MEMORY_BUDGET, SEGMENT_LEN,
    SEGMENT_THRESHOLD,
};
pub use verify::{
    log_samples, verify_appendix, verify_corollary10, verify_corollary10_with, verify_harmonic_lemma,
    verify_mobius_sums, verify_quartiles, verify_quartiles_from_estimate, verify_theorem9, verify_theorem9_with,
    verify_totient_over_square, verify_totient_sum, LemmaReport, Status, COROLLARY10_RANGE, MOBIUS_LEMMA_START,
    QUARTILE_CONSTANTS, THEOREM9_MERTENS_START, THEOREM9_SPOT_END, THEOREM9_SQUAREFREE_START,
};
