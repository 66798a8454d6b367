//! q-expansions of Delta, E4 and j.

use rug::Integer;

use super::series::IntSeries;
use crate::arith::sigma3_table;
use crate::error::{domain, Result};

/// prod_{n>=1} (1 - q^n) mod q^len, via the pentagonal number theorem.
pub fn euler_product(len: usize) -> Vec<Integer> {
    let mut c = vec![Integer::new(); len];
    if len == 0 {
        return c;
    }
    c[0] = Integer::from(1);
    let mut k: i64 = 1;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let p1 = (k * (3 * k - 1) / 2) as usize;
        let p2 = (k * (3 * k + 1) / 2) as usize;
        if p1 >= len {
            break;
        }
        c[p1] = Integer::from(sign);
        if p2 < len {
            c[p2] = Integer::from(sign);
        }
        k += 1;
    }
    c
}

/// Delta = q prod (1-q^n)^24, exact modulo q^prec.
pub fn delta_expansion(prec: i64) -> Result<IntSeries> {
    if prec < 2 {
        return domain(format!("delta_expansion needs prec >= 2, got {prec}"));
    }
    let n = (prec - 1) as i64;
    let e = IntSeries::new(0, euler_product(n as usize), n)?;
    let e2 = e.pow(2);
    let e4 = e2.pow(2);
    let e8 = e4.pow(2);
    let e16 = e8.pow(2);
    Ok((&e16 * &e8).shift(1))
}

/// E4 = 1 + 240 sum sigma_3(n) q^n, exact modulo q^prec.
pub fn e4_expansion(prec: i64) -> Result<IntSeries> {
    if prec < 1 {
        return domain(format!("e4_expansion needs prec >= 1, got {prec}"));
    }
    let s3 = sigma3_table(prec as usize);
    let coeffs = (0..prec as usize)
        .map(|n| if n == 0 { Integer::from(1) } else { Integer::from(s3[n]) * 240 })
        .collect();
    IntSeries::new(0, coeffs, prec)
}

/// j = E4^3 / Delta with the terms q^-1, q^0, ..., q^(prec-1).
pub fn j_expansion(prec: i64) -> Result<IntSeries> {
    if prec < 0 {
        return domain(format!("j_expansion needs prec >= 0, got {prec}"));
    }
    let e4 = e4_expansion(prec + 1)?;
    let e4_cubed = e4.pow(3);
    let delta = delta_expansion(prec + 2)?;
    e4_cubed.div_exact(&delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Expands prod_{n<len}(1-q^n)^24 by repeated multiplication by (1 - q^n).
    fn brute_delta(len: usize) -> Vec<Integer> {
        let mut c = vec![Integer::new(); len];
        c[0] = Integer::from(1);
        for n in 1..len {
            for _ in 0..24 {
                for k in (n..len).rev() {
                    let t = c[k - n].clone();
                    c[k] -= t;
                }
            }
        }
        let mut out = vec![Integer::new()];
        out.extend(c.into_iter().take(len - 1));
        out
    }

    /// Long division of E4^3 by Delta without series inversion.
    fn brute_j(n: usize) -> Vec<Integer> {
        let e4: Vec<Integer> = e4_expansion(n as i64 + 1).unwrap().coeffs().to_vec();
        let mut cube = vec![Integer::new(); n + 1];
        for a in 0..=n {
            for b in 0..=n - a {
                for c in 0..=n - a - b {
                    cube[a + b + c] += Integer::from(&e4[a] * &e4[b]) * &e4[c];
                }
            }
        }
        let d = brute_delta(n + 2);
        let mut q = Vec::new();
        for k in 0..=n {
            let mut r = cube[k].clone();
            for (i, qi) in q.iter().enumerate() {
                r -= Integer::from(qi * &d[k - i + 1]);
            }
            q.push(r);
        }
        q
    }

    #[test]
    fn delta_matches_brute_product() {
        let d = delta_expansion(40).unwrap();
        assert_eq!(d.valuation(), 1);
        let brute = brute_delta(40);
        for n in 1..40 {
            assert_eq!(d.coeff(n).unwrap(), brute[n as usize], "tau({n})");
        }
        assert_eq!(d.coeff(1).unwrap(), 1);
        assert_eq!(d.coeff(2).unwrap(), -24);
        assert_eq!(d.coeff(3).unwrap(), 252);
    }

    #[test]
    fn e4_coefficients() {
        let e = e4_expansion(5).unwrap();
        assert_eq!(e.coeff(0).unwrap(), 1);
        assert_eq!(e.coeff(1).unwrap(), 240);
        assert_eq!(e.coeff(2).unwrap(), 2160);
        assert_eq!(e.coeff(4).unwrap(), 240 * (1 + 8 + 64));
    }

    #[test]
    fn j_matches_long_division() {
        let j = j_expansion(30).unwrap();
        assert_eq!(j.valuation(), -1);
        assert_eq!(j.prec(), 30);
        let brute = brute_j(30);
        for (k, b) in brute.iter().enumerate() {
            assert_eq!(&j.coeff(k as i64 - 1).unwrap(), b);
        }
        assert_eq!(j.coeff(-1).unwrap(), 1);
        assert_eq!(j.coeff(0).unwrap(), 744);
        assert_eq!(j.coeff(1).unwrap(), 196884);
    }

    #[test]
    fn rejects_small_precision() {
        assert!(delta_expansion(1).is_err());
        assert!(e4_expansion(0).is_err());
        assert!(j_expansion(-1).is_err());
        assert_eq!(j_expansion(0).unwrap().coeffs().len(), 1);
    }

    #[test]
    fn e4_cubed_is_j_times_delta() {
        for prec in [1i64, 5, 50, 400] {
            let j = j_expansion(prec).unwrap();
            let d = delta_expansion(prec + 2).unwrap();
            let e = e4_expansion(prec + 1).unwrap().pow(3);
            let jd = &j * &d;
            let shared = jd.prec().min(e.prec());
            assert_eq!(jd.truncate(shared), e.truncate(shared));
        }
    }
}
