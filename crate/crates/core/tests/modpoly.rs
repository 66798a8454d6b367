use modheight::modpoly::{
    compute_phi, height, j_reduction, known, linear_solve, solving_precision, table_stats, verify_modular_equation,
    BivariateIntPoly, HeightConvention, PhiCache, Strategy, CacheOutcome, PhiConfig,
};
use rug::Integer;

/// Phi_2 as found by undetermined coefficients on a tiny system: the
/// classical published form, written out independently of the solver.
fn phi2_reference() -> BivariateIntPoly {
    let mut p = BivariateIntPoly::zero(2);
    for (i, j, c) in [
        (0, 0, "-157464000000000"),
        (1, 0, "8748000000"),
        (1, 1, "40773375"),
        (2, 0, "-162000"),
        (2, 1, "1488"),
        (2, 2, "-1"),
        (3, 0, "1"),
    ] {
        p.set(i, j, c.parse::<Integer>().unwrap());
    }
    p
}

#[test]
fn phi2_matches_reference() {
    let p = compute_phi(2, Strategy::LinearSolve).unwrap();
    assert_eq!(p, phi2_reference());
    assert_eq!(*p.coeff(2, 2), -1);
    assert_eq!(*p.coeff(0, 0), "-157464000000000".parse::<Integer>().unwrap());
    assert!(p.serialize().lines().any(|line| line == "2 2 -1"));
}

#[test]
fn phi2_reference_satisfies_modular_equation() {
    assert!(verify_modular_equation(&phi2_reference(), 16));
}

#[test]
fn perturbed_coefficient_is_detected() {
    let p = compute_phi(2, Strategy::LinearSolve).unwrap();
    let d = p.degree();
    for i in 0..=d {
        for j in 0..=i {
            let mut q = p.clone();
            q.set(i, j, Integer::from(q.coeff(i, j) + 1));
            assert!(!verify_modular_equation(&q, 16), "perturbation at ({i},{j}) missed");
        }
    }
}

#[test]
fn phi3_reference_coefficients() {
    let p = compute_phi(3, Strategy::LinearSolve).unwrap();
    // Classical published coefficients of Phi_3.
    assert_eq!(*p.coeff(0, 0), 0);
    assert_eq!(*p.coeff(3, 3), -1);
    assert_eq!(*p.coeff(4, 0), 1);
    assert_eq!(*p.coeff(3, 2), 2232);
    assert_eq!(*p.coeff(3, 1), -1069956);
    assert_eq!(*p.coeff(1, 0), "1855425871872000000000".parse::<Integer>().unwrap());
}

#[test]
fn strategies_agree_through_13() {
    for l in [2u64, 3, 5, 7, 11, 13] {
        let a = compute_phi(l, Strategy::LinearSolve).unwrap();
        let b = compute_phi(l, Strategy::JReduction).unwrap();
        assert_eq!(a, b, "l = {l}");
    }
}

#[test]
fn computed_polynomials_pass_all_checks() {
    for l in [2u64, 3, 5, 7, 11] {
        let p = compute_phi(l, Strategy::LinearSolve).unwrap();
        assert!(p.check_structure().is_ok());
        assert!(p.kronecker_congruence_holds());
        assert!(verify_modular_equation(&p, 16));
        for i in 0..=p.degree() {
            for j in 0..=p.degree() {
                assert_eq!(p.coeff(i, j), p.coeff(j, i));
            }
        }
    }
}

#[test]
fn heights_of_small_primes() {
    for (l, h2) in [(2u64, 48u32), (3, 71), (5, 157)] {
        let r = height(&compute_phi(l, Strategy::LinearSolve).unwrap());
        assert_eq!(r.h2, h2);
        assert_eq!(known::published(l).unwrap().0, h2);
    }
}

#[test]
fn table_stats_conventions() {
    let r = height(&compute_phi(2, Strategy::LinearSolve).unwrap());
    let (c, rr) = table_stats(&r, HeightConvention::BitLength);
    assert_eq!((c.to_string(), rr.to_string()), ("12.48".into(), "1.33".into()));
    let (c, _) = table_stats(&r, HeightConvention::Exact);
    assert_eq!(c.to_string(), "12.19");
    let oracle = (157464000000000f64.ln() - 12.0 * 2f64.ln()) / 2.0;
    assert!((r.stats(HeightConvention::Exact).0 - oracle).abs() < 1e-12);

    let r = height(&compute_phi(3, Strategy::LinearSolve).unwrap());
    let (c, rr) = table_stats(&r, HeightConvention::BitLength);
    assert_eq!((c.to_string(), rr.to_string()), ("9.81".into(), "1.50".into()));
}

#[test]
fn too_little_precision_is_reported() {
    assert!(linear_solve(5, 20).is_err());
    assert!(linear_solve(5, solving_precision(5)).is_ok());
    assert!(j_reduction(3, 4).is_ok());
}

#[test]
fn rejects_bad_l() {
    assert!(compute_phi(4, Strategy::LinearSolve).is_err());
    assert!(compute_phi(1, Strategy::LinearSolve).is_err());
    assert!(compute_phi(67, Strategy::LinearSolve).is_err());
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let cache = PhiCache::new(dir.path());
    let cfg = PhiConfig::default();
    let (p, o) = cache.get_or_compute(3, Strategy::LinearSolve, &cfg).unwrap();
    assert_eq!(o, CacheOutcome::Miss);
    let bytes = std::fs::read(cache.path_for(3)).unwrap();
    assert_eq!(bytes, p.serialize().into_bytes());
    let (q, o) = cache.get_or_compute(3, Strategy::LinearSolve, &cfg).unwrap();
    assert_eq!((q, o), (p.clone(), CacheOutcome::Hit));

    // Break the congruence without breaking the syntax.
    let text = String::from_utf8(bytes.clone()).unwrap().replace("3 2 2232", "3 2 2233");
    std::fs::write(cache.path_for(3), text).unwrap();
    assert!(cache.load(3).is_none());
    let (q, o) = cache.get_or_compute(3, Strategy::LinearSolve, &cfg).unwrap();
    assert_eq!((q, o), (p, CacheOutcome::Recomputed));
    assert_eq!(std::fs::read(cache.path_for(3)).unwrap(), bytes);
}
