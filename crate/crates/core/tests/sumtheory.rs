use modheight::arith::{mobius, totient};
use modheight::sumtheory::*;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rug::{Float, Rational};

fn show(r: &LemmaReport) {
    eprintln!("{}", r.to_json_line());
}

#[test]
fn sieve_matches_trial_factorization() {
    let t = build_sieve(1_000_000).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=1_000_000u64);
        assert_eq!(t.mu[n as usize], mobius(n), "mu({n})");
        assert_eq!(t.phi[n as usize] as u64, totient(n), "phi({n})");
    }
    // K(x) counts Farey fractions in (0, 1].
    assert_eq!(t.prefix_k[5], 10);
}

#[test]
fn segmented_build_matches_linear() {
    let x = SEGMENT_THRESHOLD + 5000;
    let big = build_sieve(x).unwrap();
    let small = build_sieve(SEGMENT_THRESHOLD).unwrap();
    assert_eq!(&big.mu[..small.mu.len()], &small.mu[..]);
    assert_eq!(&big.phi[..small.phi.len()], &small.phi[..]);
    assert_eq!(big.prefix_k[SEGMENT_THRESHOLD as usize], small.prefix_k[SEGMENT_THRESHOLD as usize]);
    for n in [x - 1, x] {
        assert_eq!(big.mu[n as usize], mobius(n));
    }
}

#[test]
fn corollary10_and_mutation() {
    let start = std::time::Instant::now();
    let mut t = build_sieve(COROLLARY10_RANGE.1).unwrap();
    let reports = verify_corollary10_with(&t).unwrap();
    assert!(start.elapsed().as_secs() < 60);
    for r in &reports {
        show(r);
        assert!(r.passed());
        assert_eq!(r.x_range[0], 1e5);
        assert_eq!(r.points as f64, if r.lemma.ends_with("mertens") { 2_060_536.0 } else { 2.0 * 2_060_536.0 - 1.0 });
    }
    // Push M(x) up by several hundred just past 10^6.
    for k in 1_000_000..1_001_000 {
        t.mu[k] = 1;
    }
    t.rebuild_prefixes();
    let bad = verify_corollary10_with(&t).unwrap();
    assert!(!bad[0].passed());
    let w = bad[0].first_failure.unwrap();
    assert!((1_000_000.0..1_001_000.0).contains(&w), "{w}");
}

#[test]
fn theorem9_spot_ranges() {
    let r = verify_theorem9(THEOREM9_SPOT_END).unwrap();
    for x in &r {
        show(x);
    }
    assert!(r[0].passed());
    // Over real x the square-free estimate breaks once, just below 441353.
    assert!(!r[1].passed());
    assert_eq!((r[1].failures, r[1].first_failure), (1, Some(441353.0)));
    assert!(r[1].worst_left_limit);
    assert!(r[2].passed());
}

#[test]
fn harmonic_sweep() {
    let r = verify_harmonic_lemma(100_000).unwrap();
    for x in &r {
        show(x);
    }
    assert!(r[0].passed());
    // Below about 1663 the square-free estimate does not hold; beyond it does.
    assert!(!r[1].passed());
    assert!(r[1].last_failure.unwrap() < 2000.0);
}

#[test]
fn harmonic_examples() {
    // x = 10: H_10 = 7381/2520 and the error is inside the bound.
    let mut s = PartialSum::new();
    for n in 1..=10 {
        s.add(n, 1, n);
    }
    assert_eq!(s.exact_value().unwrap(), &Rational::from((7381, 2520)));
    let h = 7381.0 / 2520.0 - 10f64.ln() - constants::EULER_GAMMA;
    assert!(h.abs() <= 0.05 + 1.0 / 1200.0);
    // gamma' from the partial sum at 10^5.
    let t = build_sieve(100_000).unwrap();
    let sum: f64 = (1..=100_000usize).filter(|&n| t.mu[n] != 0).map(|n| 1.0 / n as f64).sum();
    let est = sum - 6.0 / (std::f64::consts::PI * std::f64::consts::PI) * 1e5f64.ln();
    assert!((est - 1.043895).abs() <= 3.0 / (25.0 * 1e5f64.sqrt()));
}

#[test]
fn mobius_sums_to_ten_million() {
    let r = verify_mobius_sums(10_000_000).unwrap();
    for x in &r {
        show(x);
        assert!(x.passed());
        assert!(x.error_budget < 1e-30);
    }
}

#[test]
fn inverse_zeta_two_limit() {
    let t = build_sieve(1_000_000).unwrap();
    let mut s = PartialSum::new_fixed();
    for n in 1..=1_000_000u64 {
        s.add(n, t.mu[n as usize] as i64, n * n);
    }
    let (v, _) = s.value();
    let target = constants::six_over_pi2(COMPARE_PREC);
    assert!(Float::with_val(COMPARE_PREC, &v - &target).abs().to_f64() < 1e-6);
}

#[test]
fn totient_over_square_sweep() {
    let r = verify_totient_over_square(100_000).unwrap();
    show(&r);
    assert!(r.passed());
}

#[test]
fn totient_sum_sweep() {
    let r = verify_totient_sum(100_000).unwrap();
    show(&r);
    // The estimate fails at x = 3/2 and at the left limit of 2, nowhere else.
    assert!(!r.passed());
    assert_eq!(r.failures, 2);
    assert_eq!(r.first_failure, Some(1.5));
    assert_eq!(r.last_failure, Some(2.0));
}

#[test]
fn totient_sum_examples() {
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    // x = 10: |32 - 300/pi^2| = 1.604
    assert!(((32.0 - 300.0 / pi2) - 1.6036).abs() < 1e-3);
    // x = 3/2: 1 - 6.75/pi^2 exceeds (3/2) ln(3/2)/2.
    assert!(1.0 - 6.75 / pi2 > 0.75 * 1.5f64.ln());
}

#[test]
fn quartiles() {
    for r in verify_quartiles(300).unwrap() {
        show(&r);
        assert!(r.passed());
    }
    for r in verify_quartiles(100_000).unwrap() {
        assert!(r.passed(), "{}", r.to_json_line());
    }
    for r in verify_quartiles_from_estimate(300.0, 1e12, 200) {
        assert!(r.passed());
    }
}

#[test]
fn report_json_shape() {
    let r = &verify_quartiles(10).unwrap()[0];
    let v: serde_json::Value = serde_json::from_str(&r.to_json_line()).unwrap();
    for key in ["lemma", "x_range", "status", "worst_x", "worst_margin"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["status"], "pass");
}

/// Monic polynomial from its roots.
fn expand(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &w in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, &a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * w;
        }
        c = next;
    }
    c
}

fn random_roots(rng: &mut impl Rng, deg: usize, r_lo: f64, r_hi: f64) -> Vec<Complex64> {
    (0..deg).map(|_| Complex64::from_polar(rng.gen_range(r_lo..=r_hi), rng.gen_range(0.0..std::f64::consts::TAU))).collect()
}

#[test]
fn product_bound_dominates() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    for _ in 0..10_000 {
        let deg = rng.gen_range(1..=30);
        let roots = random_roots(&mut rng, deg, 0.0, 10.0);
        let max = expand(&roots).iter().map(|c| c.norm()).fold(0.0, f64::max);
        assert!(max <= coeff_product_bound(&roots) * (1.0 + 1e-9));
    }
    let r = [Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0)];
    assert_eq!(expand(&r)[0].re, 6.0);
}

#[test]
fn height_from_roots_dominates() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(12);
    for _ in 0..10_000 {
        let deg = rng.gen_range(1..=30);
        let roots = random_roots(&mut rng, deg, 1.0 + 1e-9, 10.0);
        let bound = height_from_roots(&roots).unwrap();
        for c in expand(&roots) {
            assert!(c.norm().ln() <= bound + 1e-9);
        }
    }
    // (X - 2)^2 = X^2 - 4X + 4
    let b = height_from_roots(&[Complex64::new(2.0, 0.0); 2]).unwrap();
    assert!(4f64.ln() <= b && (b - 3.0794).abs() < 1e-4);
}

/// Lagrange interpolation through `y_k = L(1 + k/n)`, in exact arithmetic.
fn interpolate(ys: &[Rational], vals: &[Rational]) -> Vec<Rational> {
    let n = ys.len();
    let mut out = vec![Rational::new(); n];
    for k in 0..n {
        let mut basis = vec![Rational::from(1)];
        let mut denom = Rational::from(1);
        for j in 0..n {
            if j == k {
                continue;
            }
            let mut next = vec![Rational::new(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] += b;
                next[i] -= Rational::from(b * &ys[j]);
            }
            basis = next;
            denom *= Rational::from(&ys[k] - &ys[j]);
        }
        for (i, b) in basis.iter().enumerate() {
            out[i] += Rational::from(b * &vals[k]) / &denom;
        }
    }
    out
}

fn ln_abs(q: &Rational) -> f64 {
    Float::with_val(128, q).abs().ln().to_f64()
}

#[test]
fn interpolation_oracle() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(13);
    for trial in 0..200 {
        let n = rng.gen_range(1..=6usize);
        let l: i64 = if trial % 2 == 0 { 1728 } else { rng.gen_range(2..=5000) };
        // P(X, Y) = sum c[m][i] X^m Y^i
        let c: Vec<Vec<i64>> =
            (0..=n).map(|_| (0..=n).map(|_| rng.gen_range(-1_000_000..=1_000_000)).collect()).collect();
        let ys: Vec<Rational> = (0..=n).map(|k| Rational::from((l * (n as i64 + k as i64), n as i64))).collect();
        let mut b = f64::NEG_INFINITY;
        let mut recovered = Vec::new();
        for row in &c {
            let vals: Vec<Rational> = ys
                .iter()
                .map(|y| {
                    let mut acc = Rational::new();
                    for a in row.iter().rev() {
                        acc = acc * y + *a;
                    }
                    acc
                })
                .collect();
            for v in &vals {
                if *v != 0 {
                    b = b.max(ln_abs(v));
                }
            }
            recovered.push(interpolate(&ys, &vals));
        }
        let h = c.iter().flatten().map(|&x| (x.abs() as f64).ln()).fold(f64::NEG_INFINITY, f64::max);
        for (row, rec) in c.iter().zip(&recovered) {
            for (a, r) in row.iter().zip(rec) {
                assert_eq!(*r, Rational::from(*a));
            }
        }
        assert!(h <= interp_height_bound(b, l as f64, n as u32).unwrap());
    }
}

proptest! {
    #[test]
    fn interp_bound_is_affine_in_degree(b in 0.0f64..1e4, l in 1.001f64..1e5, n in 0u32..500) {
        let v = interp_height_bound(b, l, n).unwrap();
        let step = interp_height_bound(0.0, l, 1).unwrap();
        prop_assert!((v - (b + step * n as f64)).abs() <= 1e-9 * v.abs().max(1.0));
        prop_assert!(step > 3.0 * std::f64::consts::LN_2);
    }

    #[test]
    fn partial_sum_modes_agree(terms in proptest::collection::vec((-5i64..=5, 1u64..=1000), 1..200)) {
        let mut a = PartialSum::new();
        let mut b = PartialSum::new_fixed();
        for &(num, den) in &terms {
            a.add(1, num, den);
            b.add(1, num, den);
        }
        let (va, _) = a.value();
        let (vb, eb) = b.value();
        prop_assert!(Float::with_val(COMPARE_PREC, &va - &vb).abs().to_f64() <= eb);
    }
}
