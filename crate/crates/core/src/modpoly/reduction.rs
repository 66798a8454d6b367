//! Phi_l from the product formula via power sums of the conjugates.
//!
//! The l conjugates j((z+b)/l) have power sums `l * U_l(J^k)`, where `U_l`
//! keeps the exponents divisible by l. Newton's identities give their
//! elementary symmetric functions; multiplying by `X - j(lz)` and peeling off
//! powers of J from each X-coefficient yields the rows of Phi_l.

use rug::Integer;

use super::poly::BivariateIntPoly;
use crate::error::{Error, Result};
use crate::qseries::{j_expansion, IntSeries};

/// Phi_l with the remainder of every reduction checked through `q^slack`.
pub fn j_reduction(l: u64, slack: i64) -> Result<BivariateIntPoly> {
    let d = l as usize + 1;
    let li = l as i64;
    let inconsistent = |detail: String| Error::InconsistentSystem { l, detail };

    // e'_i is needed below q^(slack + l + 1); products with p'_m (valuation >= -1)
    // then need p'_m one term further, hence J^m below q^(l (slack + l + 2)).
    let sym_prec = slack + li + 1;
    let power_prec = sym_prec + 1;
    let j = j_expansion(li * power_prec + d as i64)?;

    let mut power_sums: Vec<IntSeries> = Vec::with_capacity(d);
    let mut jk = j.clone();
    for k in 1..=l as u32 {
        if k > 1 {
            jk = &jk * &j;
        }
        let u = jk.extract_multiples(l as u32).truncate(power_prec);
        if u.prec() < power_prec {
            return Err(inconsistent(format!("U_l(J^{k}) known only below q^{}", u.prec())));
        }
        power_sums.push(u.scale(&Integer::from(l)));
    }

    // Newton: i e_i = sum_{m=1}^{i} (-1)^(m-1) e_{i-m} p_m. The pole of p_l
    // costs e_0 one term, so it starts one longer.
    let mut elem: Vec<IntSeries> = vec![IntSeries::monomial(Integer::from(1), 0, sym_prec + 1)];
    for i in 1..=l as usize {
        let mut acc = IntSeries::zero(sym_prec);
        for m in 1..=i {
            let term = &elem[i - m] * &power_sums[m - 1];
            acc = if m % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        let acc = acc.truncate(sym_prec);
        let mut coeffs = Vec::with_capacity(acc.coeffs().len());
        for c in acc.coeffs() {
            if !c.is_divisible_u(i as u32) {
                return Err(inconsistent(format!("Newton identity {i} is not integral")));
            }
            coeffs.push(Integer::from(c.div_exact_u_ref(i as u32)));
        }
        elem.push(IntSeries::new(acc.valuation(), coeffs, acc.prec())?);
    }

    let jl = j.substitute_power(l as u32);
    let mut poly = BivariateIntPoly::zero(l);
    let mut rows = vec![vec![Integer::new(); d + 1]; d + 1];
    for (k, row) in rows.iter_mut().enumerate() {
        // X^k coefficient: (-1)^(l+1-k) (e_{l+1-k} + j(lz) e_{l-k}).
        let mut a = IntSeries::zero(slack + 1);
        if let Some(e) = (l as usize + 1).checked_sub(k).and_then(|i| elem.get(i)) {
            a = &a + e;
        }
        if let Some(e) = (l as usize).checked_sub(k).and_then(|i| elem.get(i)) {
            a = &a + &(&jl * e);
        }
        if (l as usize + 1 - k) % 2 == 1 {
            a = -&a;
        }
        for deg in (0..=d).rev() {
            let c = a.coeff(-(deg as i64)).unwrap_or_default();
            if c != 0 {
                a = &a - &j.pow(deg as u32).scale(&c);
            }
            row[deg] = c;
        }
        if !a.truncate(slack + 1).is_zero() || a.prec() < slack + 1 {
            return Err(inconsistent(format!("row {k} leaves a nonzero remainder")));
        }
    }
    for i in 0..=d {
        for jj in 0..=i {
            if rows[i][jj] != rows[jj][i] {
                return Err(inconsistent(format!("asymmetric result at ({i},{jj})")));
            }
            poly.set(i, jj, rows[i][jj].clone());
        }
    }
    Ok(poly)
}
