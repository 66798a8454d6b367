//! Triangular solve for the coefficients of Phi_l from q-expansions.
//!
//! Substituting X = j(q^l), Y = j(q) into `sum a_ij X^i Y^j` makes the
//! monomial `X^i Y^j` contribute a pole of order `l*i + j` with leading
//! coefficient 1. Processing the coefficient of `q^-n` for `n` from
//! `l(l+1)` downwards, each equation contains at most one coefficient not
//! already fixed by an earlier order or by symmetry, so the system is
//! triangular. Equations past `q^0` are consistency checks.

use rug::Integer;

use super::poly::BivariateIntPoly;
use crate::error::{Error, Result};
use crate::qseries::{j_expansion, IntSeries};

/// Powers `J^0 .. J^d` of j(q), stored densely from `q^-k`.
pub(crate) struct JPowers {
    dense: Vec<Vec<Integer>>,
}

static ZERO: Integer = Integer::ZERO;
static ONE: std::sync::OnceLock<Integer> = std::sync::OnceLock::new();

impl JPowers {
    /// Powers up to `J^d`, each exact below `q^(prec - d + 1)` where
    /// j(q) is known below `q^prec`.
    pub(crate) fn new(d: usize, prec: i64) -> Result<Self> {
        let j = j_expansion(prec)?;
        let mut dense = vec![Vec::new(); d + 1];
        let mut acc: Option<IntSeries> = None;
        for (k, slot) in dense.iter_mut().enumerate().skip(1) {
            let next = match acc {
                None => j.clone(),
                Some(ref a) => a * &j,
            };
            let start = -(k as i64);
            *slot = (start..next.prec()).map(|e| next.coeff(e).unwrap()).collect();
            acc = Some(next);
        }
        Ok(JPowers { dense })
    }

    /// Coefficient of `q^e` in `J^k`; `None` beyond the known precision.
    pub(crate) fn get(&self, k: usize, e: i64) -> Option<&Integer> {
        if k == 0 {
            return Some(if e == 0 { ONE.get_or_init(|| Integer::from(1)) } else { &ZERO });
        }
        let idx = e + k as i64;
        if idx < 0 {
            Some(&ZERO)
        } else {
            self.dense[k].get(idx as usize)
        }
    }
}

/// Number of j(q) terms used when solving for Phi_l.
pub fn solving_precision(l: u64) -> i64 {
    let d = l as i64 + 1;
    d * d + 2 * d + 16
}

/// Lazily extended sums `F_i(e) = sum_j a_ij [q^e] J^j`.
struct RowSums {
    // per row: (value, lowest j included) for e = -d ..
    cache: Vec<Vec<(Integer, usize)>>,
    d: usize,
}

impl RowSums {
    fn new(d: usize, max_e: &[i64]) -> Self {
        let cache = max_e
            .iter()
            .map(|&m| vec![(Integer::new(), d + 1); (m + d as i64 + 1).max(0) as usize])
            .collect();
        RowSums { cache, d }
    }

    /// Sum over the known tail of row `i` at exponent `e`. Unknown entries are
    /// always the low-`j` end of a row, and contribute nothing to the
    /// equations being solved at the time they are unknown.
    fn value(&mut self, i: usize, e: i64, a: &[Option<Integer>], pw: &JPowers, l: u64) -> Result<&Integer> {
        let d = self.d;
        let slot = &mut self.cache[i][(e + d as i64) as usize];
        let floor = (-e).max(0) as usize;
        while slot.1 > floor {
            let j = slot.1 - 1;
            let Some(c) = &a[canon(i, j)] else { break };
            if *c != 0 {
                let p = pw.get(j, e).ok_or_else(|| Error::InconsistentSystem {
                    l,
                    detail: format!("J^{j} not known at q^{e}"),
                })?;
                slot.0 += Integer::from(c * p);
            }
            slot.1 = j;
        }
        Ok(&slot.0)
    }
}

fn canon(i: usize, j: usize) -> usize {
    let (a, b) = if i >= j { (i, j) } else { (j, i) };
    a * (a + 1) / 2 + b
}

/// Solves for Phi_l using j(q) known below `q^prec`; every available
/// equation beyond `q^0` is checked.
pub fn linear_solve(l: u64, prec: i64) -> Result<BivariateIntPoly> {
    let d = l as usize + 1;
    let li = l as i64;
    let top = li * (li + 1);
    let last_check = prec - top;
    if last_check < 0 {
        return Err(Error::InconsistentSystem { l, detail: format!("precision {prec} too small") });
    }
    let pw = JPowers::new(d, prec)?;

    let mut a: Vec<Option<Integer>> = vec![None; canon(d, d) + 1];
    a[canon(d, 0)] = Some(Integer::from(1));
    for j in 1..=d {
        a[canon(d, j)] = Some(Integer::new());
    }
    let max_e: Vec<i64> = (0..=d).map(|i| li * i as i64 + last_check).collect();
    let mut rows = RowSums::new(d, &max_e);

    for n in (-last_check..=top).rev() {
        let t = -n;
        // The unknown introduced at this order, if any.
        let mut unknown: Option<(usize, u32)> = None;
        for i in 0..=d {
            let j = n - li * i as i64;
            if !(0..=d as i64).contains(&j) {
                continue;
            }
            let k = canon(i, j as usize);
            if a[k].is_none() {
                match unknown {
                    None => unknown = Some((k, 1)),
                    Some((u, m)) if u == k => unknown = Some((u, m + 1)),
                    Some(_) => {
                        return Err(Error::InconsistentSystem { l, detail: format!("two unknowns at order {n}") })
                    }
                }
            }
        }

        let mut residual = Integer::new();
        for i in 0..=d {
            let k_lo = -(i as i64);
            let k_hi = (t + d as i64).div_euclid(li);
            for k in k_lo..=k_hi {
                let e = t - li * k;
                if e > max_e[i] {
                    continue;
                }
                let jk = pw.get(i, k).ok_or_else(|| Error::InconsistentSystem {
                    l,
                    detail: format!("J^{i} not known at q^{k}"),
                })?;
                if *jk == 0 {
                    continue;
                }
                let f = rows.value(i, e, &a, &pw, l)?;
                if *f != 0 {
                    residual += Integer::from(jk * f);
                }
            }
        }

        match unknown {
            Some((k, mult)) => {
                if !residual.is_divisible_u(mult) {
                    return Err(Error::InconsistentSystem { l, detail: format!("non-integral solution at order {n}") });
                }
                residual.div_exact_u_mut(mult);
                a[k] = Some(-residual);
            }
            None => {
                if residual != 0 {
                    return Err(Error::InconsistentSystem {
                        l,
                        detail: format!("equation for q^{t} has nonzero residual"),
                    });
                }
            }
        }
    }

    let mut poly = BivariateIntPoly::zero(l);
    for i in 0..=d {
        for j in 0..=i {
            let c = a[canon(i, j)]
                .take()
                .ok_or_else(|| Error::InconsistentSystem { l, detail: format!("coefficient ({i},{j}) undetermined") })?;
            poly.set(i, j, c);
        }
    }
    Ok(poly)
}

/// True iff `Phi(j(q^l), j(q))` vanishes at every power of q covered by the
/// solving precision plus `slack` further terms, recomputed from the
/// polynomial's own coefficients.
pub fn verify_modular_equation(p: &BivariateIntPoly, slack: i64) -> bool {
    let l = p.l();
    let li = l as i64;
    let d = p.degree();
    let top = li * (li + 1);
    let slack = solving_precision(l) - top + slack.max(0);
    let Ok(pw) = JPowers::new(d, top + slack) else { return false };

    // F_i(e) for e in [-d, l*i + slack], all terms included.
    let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let hi = li * i as i64 + slack;
        let mut row = vec![Integer::new(); (hi + d as i64 + 1) as usize];
        for j in 0..=d {
            let c = p.coeff(i, j);
            if *c == 0 {
                continue;
            }
            for e in -(j as i64)..=hi {
                match pw.get(j, e) {
                    Some(x) if *x != 0 => row[(e + d as i64) as usize] += Integer::from(c * x),
                    Some(_) => {}
                    None => return false,
                }
            }
        }
        rows.push(row);
    }
    for t in -top..=slack {
        let mut acc = Integer::new();
        for (i, row) in rows.iter().enumerate() {
            let hi = li * i as i64 + slack;
            for k in -(i as i64)..=(t + d as i64).div_euclid(li) {
                let e = t - li * k;
                if e > hi || e < -(d as i64) {
                    continue;
                }
                let Some(jk) = pw.get(i, k) else { return false };
                acc += Integer::from(jk * &row[(e + d as i64) as usize]);
            }
        }
        if acc != 0 {
            return false;
        }
    }
    true
}
