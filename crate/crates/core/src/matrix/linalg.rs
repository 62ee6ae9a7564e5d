//! Exact elimination: kernels, ranks, inverses, characteristic polynomials.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Rational, Ring, Scalar};

/// Reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.to_dense();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for j in c..cols {
            a[r][j] = a[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let d = f.mul(&a[r][j]);
                    a[i][j] = a[i][j].sub(&d);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (Matrix::from_rows_or_empty(a, rows, cols), pivots)
}

impl<T: Ring> Matrix<T> {
    pub(crate) fn from_rows_or_empty(rows: Vec<Vec<T>>, r: usize, c: usize) -> Self {
        if r == 0 {
            Matrix::zeros(0, c)
        } else {
            Matrix::from_rows(rows)
        }
    }
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel, one vector per free column.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = r.get(row, f).neg();
            }
            v
        })
        .collect()
}

/// Solve `m x = b` for some `x`, if solvable.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    let mut cols: Vec<Vec<F>> = (0..m.cols()).map(|c| m.column(c)).collect();
    cols.push(b.to_vec());
    let aug = Matrix::from_columns(&cols);
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![F::zero(); m.cols()];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(row, m.cols());
    }
    Some(x)
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let n = m.rows();
    if !m.is_square() {
        return None;
    }
    let mut cols: Vec<Vec<F>> = (0..n).map(|c| m.column(c)).collect();
    for i in 0..n {
        let mut e = vec![F::zero(); n];
        e[i] = F::one();
        cols.push(e);
    }
    let (r, pivots) = rref(&Matrix::from_columns(&cols));
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let idx: Vec<usize> = (0..n).collect();
    let right: Vec<usize> = (n..2 * n).collect();
    Some(r.select(&idx, &right))
}

/// Inverse of a lower unitriangular matrix by forward substitution; no division needed.
pub fn inverse_unitriangular<T: Ring>(m: &Matrix<T>) -> Option<Matrix<T>> {
    let n = m.rows();
    if !m.is_square() || !m.is_lower_triangular() || (0..n).any(|i| !m.get(i, i).is_one()) {
        return None;
    }
    // Solve m x = e_j column by column: x_i = e_ij - sum_{k<i} m_ik x_k.
    let mut inv = Matrix::zeros(n, n);
    for j in 0..n {
        let mut x: Vec<T> = vec![T::zero(); n];
        x[j] = T::one();
        for i in j + 1..n {
            let mut acc = T::zero();
            for (k, v) in m.row(i).range(j..i) {
                acc.add_assign(&v.mul(&x[*k]));
            }
            x[i] = acc.neg();
        }
        for (i, v) in x.into_iter().enumerate() {
            inv.set(i, j, v);
        }
    }
    Some(inv)
}

/// Inverse over `Scalar` by elimination with rational-constant pivots.
///
/// Tries the unitriangular route first. Fails with `SingularR` when no
/// invertible pivot can be found in a column.
pub fn inverse_scalar(m: &Matrix<Scalar>) -> Result<Matrix<Scalar>> {
    if let Some(inv) = inverse_unitriangular(m) {
        return Ok(inv);
    }
    let n = m.rows();
    if !m.is_square() {
        return Err(Error::SingularR);
    }
    let mut a = m.to_dense();
    let mut b = Matrix::<Scalar>::identity(n).to_dense();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| a[i][c].as_rational().is_some_and(|q| !num_traits::Zero::is_zero(&q)))
            .ok_or(Error::SingularR)?;
        a.swap(c, p);
        b.swap(c, p);
        let inv: Rational = a[c][c].as_rational().unwrap().recip();
        for j in 0..n {
            a[c][j] = a[c][j].scale(&inv);
            b[c][j] = b[c][j].scale(&inv);
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let da = f.mul(&a[c][j]);
                    a[i][j] = a[i][j].sub(&da);
                    let db = f.mul(&b[c][j]);
                    b[i][j] = b[i][j].sub(&db);
                }
            }
        }
    }
    Ok(Matrix::from_rows(b))
}

/// Characteristic polynomial `det(t I - m)` via Faddeev-LeVerrier;
/// coefficients ascending in `t`, monic.
pub fn char_poly<F: Field>(m: &Matrix<F>) -> Vec<F> {
    let n = m.rows();
    let mut coeffs = vec![F::zero(); n + 1];
    coeffs[n] = F::one();
    let mut mk = Matrix::<F>::zeros(n, n);
    let id = Matrix::<F>::identity(n);
    for k in 1..=n {
        mk = m.mul(&mk.add(&id.scale(&coeffs[n - k + 1])));
        let tr = mk.trace();
        coeffs[n - k] = tr.scale_q(&Rational::new((-1).into(), (k as i64).into()));
    }
    coeffs
}

/// Rational roots (with multiplicity) of a polynomial with rational coefficients,
/// ascending order. `None` when some root is irrational.
pub fn rational_roots(coeffs: &[Rational]) -> Option<Vec<Rational>> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};
    let mut p: Vec<Rational> = coeffs.to_vec();
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    let mut roots = Vec::new();
    while p.first().is_some_and(Zero::is_zero) && p.len() > 1 {
        p.remove(0);
        roots.push(crate::scalar::int(0));
    }
    // clear denominators
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ip: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    while ip.len() > 1 {
        let a0 = ip[0].abs();
        let an = ip.last().unwrap().abs();
        let divs = |n: &BigInt| -> Vec<BigInt> {
            let mut d = Vec::new();
            let mut i = BigInt::one();
            while &i * &i <= *n {
                if (n % &i).is_zero() {
                    d.push(i.clone());
                    d.push(n / &i);
                }
                i += 1;
            }
            d
        };
        let mut found = None;
        'search: for pn in divs(&a0) {
            for qd in divs(&an) {
                for s in [1, -1] {
                    let cand = Rational::new(&pn * s, qd.clone());
                    let v = ip.iter().rev().fold(crate::scalar::int(0), |acc, c| acc * &cand + Rational::from_integer(c.clone()));
                    if Zero::is_zero(&v) {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        let r = found?;
        // synthetic division by (t - r), working over Q then rescaling
        let qp: Vec<Rational> = ip.iter().map(|c| Rational::from_integer(c.clone())).collect();
        let n = qp.len() - 1;
        let mut q = vec![crate::scalar::int(0); n];
        q[n - 1] = qp[n].clone();
        for k in (0..n - 1).rev() {
            q[k] = &qp[k + 1] + &r * &q[k + 1];
        }
        let l = q.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        ip = q.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        roots.push(r);
    }
    roots.sort();
    Some(roots)
}

/// True when `v` lies in the column span of `basis`.
pub fn in_span<F: Field>(basis: &[Vec<F>], v: &[F]) -> bool {
    if basis.is_empty() {
        return v.iter().all(F::is_zero);
    }
    let m = Matrix::from_columns(basis);
    solve(&m, v).is_some()
}
