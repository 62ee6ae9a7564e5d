//! Row-sparse exact matrices over any `Ring`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::scalar::{Rational, Ring};

/// Row-sparse matrix. Zero entries are never stored, so derived equality is exact.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, T>>,
}

const PAR_THRESHOLD: usize = 64;

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| T::one()).collect())
    }

    pub fn diagonal(d: Vec<T>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in d.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Build from nested rows; panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_columns(cols: &[Vec<T>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r].get(&c).cloned().unwrap_or_else(T::zero)
    }

    pub fn get_ref(&self, r: usize, c: usize) -> Option<&T> {
        self.data[r].get(&c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &T) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.data[r];
        match row.get_mut(&c) {
            Some(x) => {
                x.add_assign(v);
                if x.is_zero() {
                    row.remove(&c);
                }
            }
            None => {
                row.insert(c, v.clone());
            }
        }
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, T> {
        &self.data[r]
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, row)| row.len() == 1 && row.get(&i).is_some_and(T::is_one))
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, T)> {
        self.entries().next().map(|(i, j, v)| (i, j, v.clone()))
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, c)).collect()
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        let mut out = Matrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.entries() {
            out.set(i, j, f(v));
        }
        out
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        let mut out = Matrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.entries() {
            out.set(i, j, f(v)?);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let mut out = self.clone();
        for (i, j, v) in other.entries() {
            out.add_at(i, j, v);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(T::neg)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        self.map(|v| v.mul(c))
    }

    pub fn scale_q(&self, c: &Rational) -> Self {
        self.map(|v| v.scale_q(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let row_product = |row: &BTreeMap<usize, T>| {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    let p = a.mul(b);
                    match acc.get_mut(j) {
                        Some(x) => x.add_assign(&p),
                        None => {
                            acc.insert(*j, p);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            acc
        };
        let data: Vec<BTreeMap<usize, T>> = if self.rows >= PAR_THRESHOLD {
            self.data.par_iter().map(row_product).collect()
        } else {
            self.data.iter().map(row_product).collect()
        };
        Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        self.data
            .iter()
            .map(|row| {
                let mut acc = T::zero();
                for (k, a) in row {
                    acc.add_assign(&a.mul(&v[*k]));
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for (i, j, v) in self.entries() {
            out.set(j, i, v.clone());
        }
        out
    }

    /// Kronecker product; index `(i, j) -> i * other.dim + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (i1, j1, a) in self.entries() {
            for (i2, j2, b) in other.entries() {
                out.set(i1 * other.rows + i2, j1 * other.cols + j2, a.mul(b));
            }
        }
        out
    }

    /// Rows and columns restricted to the given index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(p, c)| (*c, p)).collect();
        let mut out = Self::zeros(rows.len(), cols.len());
        for (ri, r) in rows.iter().enumerate() {
            for (c, v) in &self.data[*r] {
                if let Some(p) = col_pos.get(c) {
                    out.set(ri, *p, v.clone());
                }
            }
        }
        out
    }

    /// Leading `n x n` block.
    pub fn leading_block(&self, n: usize) -> Self {
        let idx: Vec<usize> = (0..n).collect();
        self.select(&idx, &idx)
    }

    /// True when every entry above the diagonal vanishes.
    pub fn is_lower_triangular(&self) -> bool {
        self.entries().all(|(i, j, _)| j <= i)
    }

    /// `A^k` vanishes for some `k <= dim`.
    pub fn is_nilpotent(&self) -> bool {
        let mut p = self.clone();
        for _ in 0..=self.rows {
            if p.is_zero() {
                return true;
            }
            p = p.mul(self);
        }
        p.is_zero()
    }

    /// `exp(self)` as a finite series when `self` is nilpotent; `None` otherwise.
    pub fn exp_nilpotent(&self) -> Option<Self> {
        let n = self.rows;
        let mut out = Self::identity(n);
        let mut term = Self::identity(n);
        for k in 1..=n + 1 {
            term = term.mul(self).scale_q(&Rational::new(1.into(), (k as i64).into()));
            if term.is_zero() {
                return Some(out);
            }
            out = out.add(&term);
        }
        None
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.rows.min(self.cols) {
            if let Some(v) = self.data[i].get(&i) {
                acc.add_assign(v);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn kron_index_convention() {
        let a = m(&[&[0, 1], &[0, 0]]);
        let i = Matrix::<Rational>::identity(2);
        let k = a.kron(&i);
        // (0,j) <- (1,j): rows 0,1 columns 2,3
        assert_eq!(k.get(0, 2), int(1));
        assert_eq!(k.get(1, 3), int(1));
        assert_eq!(k.nnz(), 2);
    }

    #[test]
    fn nilpotent_exponential_terminates() {
        let n = m(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let e = n.exp_nilpotent().unwrap();
        assert_eq!(e.get(2, 0), Rational::new(1.into(), 2.into()));
        assert!(m(&[&[1]]).exp_nilpotent().is_none());
    }
}
