use modheight::arith::primes_in;
use modheight::bounds::{epsilon_prime, lemma5_bound, lemma6_bound};
use modheight::farey::*;

#[test]
fn partitions_up_to_500_are_exact() {
    for n in 1..=500 {
        let p = build_partition(n).unwrap();
        assert_eq!(p.entries.len() as i64, farey_count(n), "N = {n}");
        assert!(p.is_exact_cover(), "cover N = {n}");
        assert!(p.endpoint_inequalities_hold(), "endpoints N = {n}");
    }
}

#[test]
fn locate_agrees_with_intervals() {
    let p = build_partition(13).unwrap();
    for (i, e) in p.entries.iter().enumerate() {
        assert_eq!(p.locate(e.rho1), Some(i));
        assert_eq!(p.locate(e.center()), Some(i));
    }
    let (lo, hi) = p.span();
    assert_eq!(p.locate(hi), None);
    assert_eq!(p.locate(lo - Q::new(1, 1000)), None);
}

#[test]
fn classification_counts() {
    for l in primes_in(7, 503) {
        for t in [1.0, 1.1, 1.25] {
            let n = farey_order(l, t);
            let p = build_partition(n).unwrap();
            let pts = classify_points(l, t, &p).unwrap();
            assert_eq!(pts.len() as u64, l);
            let bad = pts.iter().filter(|c| c.kind == PointKind::BadExterior).count() as i64;
            assert!(bad <= farey_count(n) + 1, "l = {l}: {bad} bad");
            for c in &pts {
                assert!(c.im_lambda() >= 0.5 - 1e-12, "l = {l} b = {}", c.b);
            }
            // Every interval holds at least one lattice point.
            let mut seen = vec![false; p.entries.len()];
            for c in &pts {
                seen[c.entry] = true;
            }
            assert!(seen.iter().all(|&s| s), "l = {l}");
        }
    }
}

#[test]
fn no_adjacent_bad_half_intervals() {
    for l in primes_in(7, 503) {
        let p = build_partition(farey_order(l, 1.0)).unwrap();
        let pts = classify_points(l, 1.0, &p).unwrap();
        assert!(adjacent_bad_pairs(&pts).is_empty(), "l = {l}");
    }
}

#[test]
fn classification_rejects_bad_input() {
    let p = build_partition(2).unwrap();
    assert!(classify_points(5, 1.0, &p).is_err());
    assert!(classify_points(9, 1.0, &p).is_err());
    assert!(classify_points(7, 1.3, &p).is_err());
    assert!(classify_points(11, 1.0, &p).is_err());
}

#[test]
fn empirical_sum_under_bounds() {
    for l in primes_in(7, 97) {
        for t in [1.0, 1.1, 1.2] {
            let s = empirical_s(l, t).unwrap();
            let lf = l as f64;
            let g = lemma6_bound(lf, t).unwrap().total;
            assert!(s.hi <= epsilon_prime(lf, t).unwrap() + g, "l = {l} t = {t}");
            assert!(s.hi <= lemma5_bound(lf, t).unwrap().total + g, "l = {l} t = {t}");
            assert!(s.lo <= s.hi && s.lo >= 0.0);
        }
    }
}

#[test]
fn empirical_terms() {
    let s = empirical_s(2, 1.0).unwrap();
    assert!(s.lo >= 0.0);
    for b in 0..7 {
        let (a1, b1) = lognorm_of_j_at(b, 7, 1.1).unwrap();
        let (a2, b2) = lognorm_of_j_at(b + 7, 7, 1.1).unwrap();
        assert!(a1 <= b2 && a2 <= b1, "b = {b}");
    }
    assert!(empirical_s(211, 1.0).is_err());
}

#[test]
fn kn_bound() {
    // K_2 = 2 exceeds 12/pi^2 + ln 2.
    assert!(!kn_bound_check(2));
    assert!(kn_bound_check(10));
    assert_eq!(farey_count(10), 32);
    assert!(kn_bound_check(100));
    assert_eq!(kn_bound_threshold(10_000), 3);
}
