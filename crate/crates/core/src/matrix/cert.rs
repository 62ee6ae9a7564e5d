//! Matrices with a certified-exact region.
//!
//! A truncated Fock matrix built at size `n` is exact in every entry, but a
//! product `X Y` loses rows near the truncation edge: row `r` of `X` reaches
//! row `r + l_X` of `Y`, where `l_X` is the lowering band of `X`. Each tensor
//! factor (a boson mode or a tensor leg) tracks its own band and exact extent,
//! so that `(X Y)` is exact on rows with every coordinate `r_i < min(e_X, e_Y - l_X)`.

use crate::error::{Error, Result};
use crate::matrix::linalg::inverse_unitriangular;
use crate::matrix::Matrix;
use crate::scalar::{Rational, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Leg {
    pub dim: usize,
    /// The leg is a truncation of an infinite-dimensional space.
    pub truncated: bool,
    /// Rows with this coordinate below `exact` are exact.
    pub exact: usize,
    /// Largest lowering step along this leg.
    pub band: usize,
}

impl Leg {
    pub fn finite(dim: usize) -> Self {
        Leg {
            dim,
            truncated: false,
            exact: dim,
            band: 0,
        }
    }

    pub fn truncated(dim: usize, band: usize) -> Self {
        Leg {
            dim,
            truncated: true,
            exact: dim,
            band,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertMatrix<T: Ring> {
    pub matrix: Matrix<T>,
    pub legs: Vec<Leg>,
}

/// Leg-wise lowering band of a matrix: for each leg, the largest `c_i - r_i`
/// over nonzero entries.
pub fn leg_bands<T: Ring>(m: &Matrix<T>, dims: &[usize]) -> Vec<usize> {
    let mut bands = vec![0usize; dims.len()];
    for (r, c, _) in m.entries() {
        let ri = split_index(r, dims);
        let ci = split_index(c, dims);
        for k in 0..dims.len() {
            if ci[k] > ri[k] {
                bands[k] = bands[k].max(ci[k] - ri[k]);
            }
        }
    }
    bands
}

/// Flat index -> per-leg coordinates, first leg most significant.
pub fn split_index(mut i: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = i % dims[k];
        i /= dims[k];
    }
    out
}

pub fn join_index(coords: &[usize], dims: &[usize]) -> usize {
    coords.iter().zip(dims).fold(0, |acc, (c, d)| acc * d + c)
}

impl<T: Ring> CertMatrix<T> {
    pub fn finite(m: Matrix<T>) -> Self {
        let n = m.rows();
        CertMatrix {
            matrix: m,
            legs: vec![Leg::finite(n)],
        }
    }

    /// Wraps a matrix whose entries are all exact, computing bands from its support.
    pub fn with_legs(m: Matrix<T>, dims: &[usize], truncated: &[bool]) -> Self {
        assert_eq!(dims.iter().product::<usize>(), m.rows());
        let bands = leg_bands(&m, dims);
        let legs = dims
            .iter()
            .zip(truncated)
            .zip(bands)
            .map(|((&d, &t), b)| if t { Leg::truncated(d, b) } else { Leg::finite(d) })
            .collect();
        CertMatrix { matrix: m, legs }
    }

    pub fn identity(legs: &[Leg]) -> Self {
        let n = legs.iter().map(|l| l.dim).product();
        CertMatrix {
            matrix: Matrix::identity(n),
            legs: legs
                .iter()
                .map(|l| Leg {
                    exact: l.dim,
                    band: 0,
                    ..*l
                })
                .collect(),
        }
    }

    pub fn zero(legs: &[Leg]) -> Self {
        let n = legs.iter().map(|l| l.dim).product();
        CertMatrix {
            matrix: Matrix::zeros(n, n),
            legs: legs
                .iter()
                .map(|l| Leg {
                    exact: l.dim,
                    band: 0,
                    ..*l
                })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.legs.iter().map(|l| l.dim).collect()
    }

    pub fn exact_extent(&self) -> Vec<usize> {
        self.legs.iter().map(|l| l.exact).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.legs.iter().all(|l| !l.truncated)
    }

    fn check_shape(&self, other: &Self, op: &str) {
        assert_eq!(self.dims(), other.dims(), "leg mismatch in {op}");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_shape(other, "add");
        let legs = self
            .legs
            .iter()
            .zip(&other.legs)
            .map(|(a, b)| Leg {
                exact: a.exact.min(b.exact),
                band: a.band.max(b.band),
                ..*a
            })
            .collect();
        CertMatrix {
            matrix: self.matrix.add(&other.matrix),
            legs,
        }
    }

    pub fn neg(&self) -> Self {
        CertMatrix {
            matrix: self.matrix.neg(),
            legs: self.legs.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &T) -> Self {
        CertMatrix {
            matrix: self.matrix.scale(c),
            legs: self.legs.clone(),
        }
    }

    pub fn scale_q(&self, c: &Rational) -> Self {
        CertMatrix {
            matrix: self.matrix.scale_q(c),
            legs: self.legs.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_shape(other, "mul");
        let legs = self
            .legs
            .iter()
            .zip(&other.legs)
            .map(|(x, y)| {
                if !x.truncated {
                    Leg::finite(x.dim)
                } else {
                    Leg {
                        exact: x.exact.min(y.exact.saturating_sub(x.band)),
                        band: x.band + y.band,
                        ..*x
                    }
                }
            })
            .collect();
        CertMatrix {
            matrix: self.matrix.mul(&other.matrix),
            legs,
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut legs = self.legs.clone();
        legs.extend(other.legs.iter().copied());
        CertMatrix {
            matrix: self.matrix.kron(&other.matrix),
            legs,
        }
    }

    /// `exp(self)`. Exact only when every truncated leg has band 0 and the
    /// matrix is nilpotent; anything else is refused.
    pub fn exp(&self) -> Result<Self> {
        if let Some(l) = self.legs.iter().find(|l| l.truncated && l.band > 0) {
            return Err(Error::NonNilpotentExponent(format!(
                "exponent lowers by {} on a truncated leg",
                l.band
            )));
        }
        let m = self
            .matrix
            .exp_nilpotent()
            .ok_or_else(|| Error::NonNilpotentExponent("exponent is not nilpotent".into()))?;
        Ok(CertMatrix {
            matrix: m,
            legs: self.legs.clone(),
        })
    }

    /// Inverse of a lower unitriangular band-0 matrix.
    pub fn inverse_unitriangular(&self) -> Result<Self> {
        if self.legs.iter().any(|l| l.truncated && l.band > 0) {
            return Err(Error::SingularR);
        }
        let m = inverse_unitriangular(&self.matrix).ok_or(Error::SingularR)?;
        Ok(CertMatrix {
            matrix: m,
            legs: self.legs.clone(),
        })
    }

    /// Flat indices whose per-leg coordinates are below `cutoffs`.
    pub fn block_indices(&self, cutoffs: &[usize]) -> Vec<usize> {
        let dims = self.dims();
        (0..self.dim())
            .filter(|&i| split_index(i, &dims).iter().zip(cutoffs).all(|(c, k)| c < k))
            .collect()
    }

    /// The certified block `cutoffs` along each leg; fails when the exact
    /// region does not cover it.
    pub fn certified_block(&self, cutoffs: &[usize]) -> Result<Matrix<T>> {
        for (l, &k) in self.legs.iter().zip(cutoffs) {
            if l.exact < k.min(l.dim) || k > l.dim {
                return Err(Error::MarginInsufficient {
                    certified: l.exact,
                    requested: k,
                });
            }
        }
        let idx = self.block_indices(cutoffs);
        Ok(self.matrix.select(&idx, &idx))
    }

    /// The largest block that is certified: per-leg exact extents.
    pub fn full_certified_block(&self) -> Matrix<T> {
        let idx = self.block_indices(&self.exact_extent());
        self.matrix.select(&idx, &idx)
    }

    /// Reorder tensor legs: new leg `k` is old leg `perm[k]`.
    pub fn permute_legs(&self, perm: &[usize]) -> Self {
        let old_dims = self.dims();
        let new_dims: Vec<usize> = perm.iter().map(|&p| old_dims[p]).collect();
        let map_index = |i: usize| {
            let old = split_index(i, &old_dims);
            let new: Vec<usize> = perm.iter().map(|&p| old[p]).collect();
            join_index(&new, &new_dims)
        };
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (r, c, v) in self.matrix.entries() {
            m.set(map_index(r), map_index(c), v.clone());
        }
        CertMatrix {
            matrix: m,
            legs: perm.iter().map(|&p| self.legs[p]).collect(),
        }
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> CertMatrix<U> {
        CertMatrix {
            matrix: self.matrix.map(f),
            legs: self.legs.clone(),
        }
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> std::result::Result<U, E>) -> std::result::Result<CertMatrix<U>, E> {
        Ok(CertMatrix {
            matrix: self.matrix.try_map(f)?,
            legs: self.legs.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn lowering(n: usize) -> CertMatrix<Rational> {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n - 1 {
            m.set(i, i + 1, int(1));
        }
        CertMatrix::with_legs(m, &[n], &[true])
    }

    #[test]
    fn products_shrink_the_exact_region() {
        let a = lowering(6);
        assert_eq!(a.legs[0].band, 1);
        let a2 = a.mul(&a);
        assert_eq!(a2.legs[0].exact, 5);
        let a3 = a2.mul(&a);
        assert_eq!(a3.legs[0].exact, 4);
        assert!(a3.certified_block(&[4]).is_ok());
        assert!(a3.certified_block(&[5]).is_err());
    }

    #[test]
    fn lowering_exponent_is_refused() {
        assert!(lowering(4).exp().is_err());
        assert!(lowering(4).map(|x| x.clone()).permute_legs(&[0]).matrix.get(0, 1) == int(1));
    }

    #[test]
    fn leg_permutation_swaps_factors() {
        let a = CertMatrix::finite(Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(4)]]));
        let i = CertMatrix::<Rational>::identity(&[Leg::finite(3)]);
        let ai = a.kron(&i);
        let ia = i.kron(&a);
        assert_eq!(ai.permute_legs(&[1, 0]), ia);
    }
}
