//! Boson expressions acting on polynomials `x^n`.
//!
//! The map `a+ -> d/dx`, `a- -> -x` preserves `[a-, a+] = 1`; the exponential
//! becomes the shift `e^{2kz d/dx} f(x) = f(x + 2kz)`.

use num_bigint::BigInt;
use num_traits::One;

use crate::boson::BosonExpr;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};

fn binom(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Coefficients of `e^{2kz a+} a+^p a-^q x^n` in the monomial basis.
fn apply(k: i32, p: u32, q: u32, n: usize) -> Vec<(usize, Scalar)> {
    let (p, q) = (p as usize, q as usize);
    let deg = n + q;
    if p > deg {
        return Vec::new();
    }
    let sign = if q % 2 == 1 { -1 } else { 1 };
    let falling: BigInt = ((deg - p + 1)..=deg).fold(BigInt::from(sign), |acc, i| acc * BigInt::from(i));
    let m = deg - p;
    if k == 0 {
        return vec![(m, Scalar::from_rational(Rational::from_integer(falling)))];
    }
    // (x + 2kz)^m
    (0..=m)
        .map(|i| {
            let c = &falling * binom(m, i) * num_traits::pow(BigInt::from(2 * k), m - i);
            (i, Scalar::monomial(Rational::from_integer(c), (m - i) as i32))
        })
        .collect()
}

/// Matrix of `expr` on `span{1, x, ..., x^(dim-1)}`; fails when an image leaves the span.
pub fn monomial_matrix(expr: &BosonExpr, dim: usize) -> Result<Matrix<Scalar>> {
    if expr.uses_b() {
        return Err(Error::DimensionMismatch("monomial basis carries one mode".into()));
    }
    let mut m = Matrix::<Scalar>::zeros(dim, dim);
    let mut overflow: Vec<(usize, usize, Scalar)> = Vec::new();
    for col in 0..dim {
        let mut spill = std::collections::BTreeMap::<usize, Scalar>::new();
        for (mono, c) in expr.terms() {
            let c = c
                .as_scalar()
                .ok_or_else(|| Error::Unsupported(format!("coefficient {c} depends on eps")))?;
            for (row, w) in apply(mono.k, mono.pa, mono.qa, col) {
                let v = c.mul(&w);
                if row < dim {
                    m.add_at(row, col, &v);
                } else {
                    let e = spill.entry(row).or_default();
                    *e = e.add(&v);
                }
            }
        }
        overflow.extend(spill.into_iter().filter(|(_, v)| !v.is_zero()).map(|(r, v)| (r, col, v)));
    }
    if let Some((r, c, v)) = overflow.first() {
        return Err(Error::DimensionMismatch(format!(
            "image of x^{c} has component {v} on x^{r}, outside the span of dimension {dim}"
        )));
    }
    if let Some((r, c, v)) = m.entries().find(|(_, _, v)| !v.is_polynomial()) {
        return Err(Error::NotPolynomial(format!("entry ({r},{c}) = {v}")));
    }
    Ok(m)
}
