//! Matrices of boson expressions on number states.
//!
//! `a+|m> = sqrt(m+1)|m+1>`, `a-|m> = sqrt(m)|m-1>`, and the exponential is
//! summed as `e^{2kz a+} = sum_j (2kz)^j/j! a+^j`, which terminates on a
//! truncated space. Column `c` holds the image of `|c>`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::boson::{BosonExpr, Monomial};
use crate::error::{Error, Result};
use crate::matrix::{CertMatrix, Matrix};
use crate::scalar::{Rational, Scalar};

/// Weights of one mode: `(row, coefficient)` for `e^{2kz a+} a+^p a-^q |c>`.
struct ModeTable {
    n: usize,
    /// `sqrt((lo+1)...hi)` keyed by `(lo, hi)`.
    roots: HashMap<(usize, usize), Scalar>,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

impl ModeTable {
    fn new(n: usize) -> Self {
        ModeTable {
            n,
            roots: HashMap::new(),
        }
    }

    fn root_range(&mut self, lo: usize, hi: usize) -> Scalar {
        if let Some(s) = self.roots.get(&(lo, hi)) {
            return s.clone();
        }
        let mut acc = Scalar::one();
        for i in lo + 1..=hi {
            acc = acc.mul(&Scalar::sqrt_int(i as u64));
        }
        self.roots.insert((lo, hi), acc.clone());
        acc
    }

    /// `sqrt(c! r!) / base!`.
    fn weight(&mut self, c: usize, r: usize, base: usize) -> Scalar {
        let (lo, hi) = if c <= r { (c, r) } else { (r, c) };
        let q = Rational::new(factorial(lo), factorial(base));
        self.root_range(lo, hi).scale(&q)
    }

    fn apply(&mut self, k: i32, p: u32, q: u32, c: usize) -> Vec<(usize, Scalar)> {
        let (p, q) = (p as usize, q as usize);
        if c < q {
            return Vec::new();
        }
        let base = c - q;
        let mut out = Vec::new();
        let jmax = if k == 0 { 0 } else { self.n };
        let mut zj = Rational::one();
        for j in 0..=jmax {
            let r = base + p + j;
            if r >= self.n {
                break;
            }
            let w = self.weight(c, r, base).scale(&zj).shift_z(j as i32);
            out.push((r, w));
            zj = zj * Rational::from_integer(BigInt::from(2 * k)) / Rational::from_integer(BigInt::from(j + 1));
        }
        out
    }
}

/// Fock matrix of `expr` on `modes` modes, built at `cutoff + margin` per mode.
///
/// Fails with `CutoffTooSmall` when the margin does not cover the lowering
/// band of `expr`, and with `NotPolynomial` when a `1/z` survives.
pub fn fock_matrix(expr: &BosonExpr, modes: usize, cutoff: usize, margin: usize) -> Result<CertMatrix<Scalar>> {
    let (ba, bb) = expr.lowering_band();
    let needed = ba.max(bb);
    if margin < needed {
        return Err(Error::CutoffTooSmall { needed, margin });
    }
    if modes == 1 && expr.uses_b() {
        return Err(Error::DimensionMismatch("expression uses mode b on a one-mode basis".into()));
    }
    expr.check_regular()?;
    let n = cutoff + margin;
    let dims: Vec<usize> = vec![n; modes];
    let total: usize = dims.iter().product();
    let mut ta = ModeTable::new(n);
    let mut tb = ModeTable::new(n);
    let mut m = Matrix::<Scalar>::zeros(total, total);
    let terms: Vec<(Monomial, Scalar)> = expr
        .terms()
        .map(|(mono, c)| {
            c.as_scalar()
                .map(|s| (*mono, s))
                .ok_or_else(|| Error::Unsupported(format!("coefficient {c} depends on eps")))
        })
        .collect::<Result<_>>()?;
    for col in 0..total {
        let (ca, cb) = if modes == 1 { (col, 0) } else { (col / n, col % n) };
        for (mono, coeff) in &terms {
            let ra = ta.apply(mono.k, mono.pa, mono.qa, ca);
            let rb = if modes == 1 {
                vec![(0usize, Scalar::one())]
            } else {
                tb.apply(0, mono.pb, mono.qb, cb)
            };
            for (ia, wa) in &ra {
                let cwa = coeff.mul(wa);
                for (ib, wb) in &rb {
                    let row = if modes == 1 { *ia } else { ia * n + ib };
                    m.add_at(row, col, &cwa.mul(wb));
                }
            }
        }
    }
    if let Some((r, c, v)) = m.entries().find(|(_, _, v)| !v.is_polynomial()) {
        return Err(Error::NotPolynomial(format!("entry ({r},{c}) = {v}")));
    }
    Ok(CertMatrix::with_legs(m, &dims, &vec![true; modes]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, EpsilonScalar};

    #[test]
    fn creation_and_annihilation() {
        let ap = fock_matrix(&BosonExpr::a_plus(), 1, 4, 0).unwrap();
        assert_eq!(ap.matrix.get(3, 2), Scalar::sqrt_int(3));
        let am = fock_matrix(&BosonExpr::a_minus(), 1, 4, 1).unwrap();
        assert_eq!(am.matrix.get(1, 2), Scalar::sqrt_int(2));
        assert!(fock_matrix(&BosonExpr::a_minus(), 1, 4, 0).is_err());
    }

    #[test]
    fn exponential_is_the_truncated_series() {
        // <2| e^{2z a+} |0> = (2z)^2/2 * sqrt(2)
        let e = fock_matrix(&BosonExpr::exp_a(1), 1, 3, 0).unwrap();
        assert_eq!(e.matrix.get(2, 0), Scalar::sqrt_int(2).mul(&Scalar::monomial(int(2), 2)));
        let two = fock_matrix(&BosonExpr::b_plus().scale(&EpsilonScalar::from_int(3)), 2, 2, 0).unwrap();
        // |0,0> -> 3|0,1>
        assert_eq!(two.matrix.get(1, 0), Scalar::from_int(3));
    }
}
