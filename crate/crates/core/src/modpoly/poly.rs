//! Symmetric bivariate integer polynomials and their canonical text form.

use std::fmt::Write as _;

use rug::Integer;

use crate::error::{Error, Result};

/// A symmetric polynomial `sum c(i,j) X^i Y^j` of degree `l+1` in each
/// variable, stored for `i >= j` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateIntPoly {
    l: u64,
    coeffs: Vec<Integer>,
}

fn tri(i: usize, j: usize) -> usize {
    i * (i + 1) / 2 + j
}

impl BivariateIntPoly {
    /// The zero polynomial with index range `0..=l+1`.
    pub fn zero(l: u64) -> Self {
        let d = l as usize + 1;
        BivariateIntPoly { l, coeffs: vec![Integer::new(); tri(d + 1, 0)] }
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    /// Largest exponent, `l + 1`.
    pub fn degree(&self) -> usize {
        self.l as usize + 1
    }

    /// Coefficient of `X^i Y^j` (either order).
    pub fn coeff(&self, i: usize, j: usize) -> &Integer {
        let (a, b) = if i >= j { (i, j) } else { (j, i) };
        assert!(a <= self.degree(), "exponent {a} beyond degree");
        &self.coeffs[tri(a, b)]
    }

    /// Sets the coefficient of `X^i Y^j` and, implicitly, of `X^j Y^i`.
    pub fn set(&mut self, i: usize, j: usize, c: Integer) {
        let (a, b) = if i >= j { (i, j) } else { (j, i) };
        assert!(a <= self.degree(), "exponent {a} beyond degree");
        self.coeffs[tri(a, b)] = c;
    }

    /// Nonzero stored coefficients `(i, j, c)` with `i >= j`, in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Integer)> {
        let d = self.degree();
        (0..=d).flat_map(move |i| (0..=i).map(move |j| (i, j))).filter_map(move |(i, j)| {
            let c = &self.coeffs[tri(i, j)];
            (*c != 0).then_some((i, j, c))
        })
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> Integer {
        self.coeffs.iter().map(|c| c.clone().abs()).max().unwrap_or_default()
    }

    /// Monic of degree `l+1` in X with the `-X^l Y^l` term.
    pub fn check_structure(&self) -> std::result::Result<(), String> {
        let d = self.degree();
        if *self.coeff(d, 0) != 1 {
            return Err(format!("coefficient of X^{d} is {}, expected 1", self.coeff(d, 0)));
        }
        for j in 1..=d {
            if *self.coeff(d, j) != 0 {
                return Err(format!("coefficient of X^{d} Y^{j} is nonzero"));
            }
        }
        if *self.coeff(d - 1, d - 1) != -1 {
            return Err(format!("coefficient of X^{0} Y^{0} is not -1", d - 1));
        }
        Ok(())
    }

    /// Phi_l = (X^l - Y)(X - Y^l) mod l.
    pub fn kronecker_congruence_holds(&self) -> bool {
        let l = self.l as usize;
        let m = Integer::from(self.l);
        let d = self.degree();
        for i in 0..=d {
            for j in 0..=i {
                let expected: i32 = match (i, j) {
                    (a, 0) if a == l + 1 => 1,
                    (a, b) if a == l && b == l => -1,
                    (1, 1) => -1,
                    _ => 0,
                };
                let diff = Integer::from(&self.coeffs[tri(i, j)] - expected);
                if !diff.is_divisible(&m) {
                    return false;
                }
            }
        }
        true
    }

    /// Coefficients of `Phi(X, y)` in X, lowest first.
    pub fn specialize_y(&self, y: &Integer) -> Vec<Integer> {
        let d = self.degree();
        (0..=d)
            .map(|i| {
                let mut acc = Integer::new();
                for j in (0..=d).rev() {
                    acc *= y;
                    acc += self.coeff(i, j);
                }
                acc
            })
            .collect()
    }

    /// Canonical text form: a `phi l <l>` header, then `i j c` per nonzero
    /// coefficient with `i >= j` in lexicographic order, LF-terminated.
    pub fn serialize(&self) -> String {
        let mut s = format!("phi l {}\n", self.l);
        for (i, j, c) in self.entries() {
            writeln!(s, "{i} {j} {c}").unwrap();
        }
        s
    }

    /// Inverse of [`serialize`](Self::serialize); rejects anything non-canonical.
    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        if !text.ends_with('\n') {
            return Err(err(text.lines().count().max(1), "missing final newline"));
        }
        let mut lines = text[..text.len() - 1].split('\n');
        let header = lines.next().unwrap_or("");
        let l = header
            .strip_prefix("phi l ")
            .and_then(parse_natural)
            .filter(|&l| l >= 1)
            .ok_or_else(|| err(1, "expected header `phi l <l>`"))?;
        let mut poly = BivariateIntPoly::zero(l);
        let d = poly.degree();
        let mut last: Option<(usize, usize)> = None;
        for (k, line) in lines.enumerate() {
            let n = k + 2;
            let parts: Vec<&str> = line.split(' ').collect();
            if parts.len() != 3 {
                return Err(err(n, "expected `i j c`"));
            }
            let i = parse_natural(parts[0]).ok_or_else(|| err(n, "bad exponent i"))? as usize;
            let j = parse_natural(parts[1]).ok_or_else(|| err(n, "bad exponent j"))? as usize;
            let c = parse_integer(parts[2]).ok_or_else(|| err(n, "bad coefficient"))?;
            if i < j {
                return Err(err(n, "i < j: entry is implied by symmetry"));
            }
            if i > d {
                return Err(err(n, "exponent exceeds l+1"));
            }
            if c == 0 {
                return Err(err(n, "zero coefficients are omitted"));
            }
            if last.is_some_and(|p| p >= (i, j)) {
                return Err(err(n, "entries out of order"));
            }
            last = Some((i, j));
            poly.set(i, j, c);
        }
        Ok(poly)
    }
}

fn parse_natural(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
        return None;
    }
    s.parse().ok()
}

fn parse_integer(s: &str) -> Option<Integer> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty()
        || !digits.bytes().all(|b| b.is_ascii_digit())
        || (digits.len() > 1 && digits.starts_with('0'))
        || (s.starts_with('-') && digits == "0")
    {
        return None;
    }
    Integer::from_str_radix(s, 10).ok()
}
