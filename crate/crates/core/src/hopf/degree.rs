//! Total-degree certificate for products on truncated tensor spaces.
//!
//! The per-leg certificate of [`CertMatrix`] refuses `exp` of an exponent
//! that lowers some leg, yet the R-matrix exponent `A+ (x) N` lowers the
//! second leg while raising the first. Here a matrix is exact on every row
//! `r` with `|r| = sum_i r_i < exact`, and `reach` bounds `|c| - |r|` over
//! its entries. A row with `|r| < min(e_X, e_Y - reach_X)` of `X Y` only
//! meets columns of `X` inside the exact rows of `Y`, so
//! `exact_XY = min(e_X, e_Y - reach_X)` and `reach_XY <= reach_X + reach_Y`.

use crate::error::{Error, Result};
use crate::matrix::cert::split_index;
use crate::matrix::{CertMatrix, Matrix};
use crate::rep::Representation;
use crate::scalar::{EpsilonScalar, Scalar};
use crate::word::WordTarget;

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeMatrix {
    pub matrix: Matrix<Scalar>,
    pub dims: Vec<usize>,
    pub exact: i64,
    pub reach: i64,
}

fn support_reach(m: &Matrix<Scalar>, dims: &[usize]) -> i64 {
    let deg = |i: usize| split_index(i, dims).iter().sum::<usize>() as i64;
    m.entries().map(|(r, c, _)| deg(c) - deg(r)).max().unwrap_or(0)
}

impl DegreeMatrix {
    fn cap(&self) -> i64 {
        self.dims.iter().copied().min().unwrap_or(0) as i64
    }

    /// From a matrix exact on the per-leg extents of `c`; every leg must be truncated.
    pub fn from_cert(c: &CertMatrix<Scalar>) -> Result<Self> {
        if c.legs.iter().any(|l| !l.truncated) {
            return Err(Error::Unsupported("degree certificate needs truncated legs only".into()));
        }
        let dims = c.dims();
        Ok(DegreeMatrix {
            reach: support_reach(&c.matrix, &dims),
            exact: c.legs.iter().map(|l| l.exact).min().unwrap_or(0) as i64,
            matrix: c.matrix.clone(),
            dims,
        })
    }

    pub fn identity(dims: &[usize]) -> Self {
        let n = dims.iter().product();
        DegreeMatrix {
            matrix: Matrix::identity(n),
            dims: dims.to_vec(),
            exact: dims.iter().copied().min().unwrap_or(0) as i64,
            reach: 0,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        DegreeMatrix {
            matrix: self.matrix.add(&o.matrix),
            dims: self.dims.clone(),
            exact: self.exact.min(o.exact),
            reach: self.reach.max(o.reach),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        DegreeMatrix {
            matrix: self.matrix.scale(c),
            ..self.clone()
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let exact = self.exact.min(o.exact - self.reach.max(0)).min(self.cap());
        DegreeMatrix {
            matrix: self.matrix.mul(&o.matrix),
            dims: self.dims.clone(),
            exact,
            reach: self.reach + o.reach,
        }
    }

    pub fn kron(&self, o: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend(&o.dims);
        DegreeMatrix {
            matrix: self.matrix.kron(&o.matrix),
            dims,
            exact: self.exact.min(o.exact),
            reach: self.reach + o.reach,
        }
    }

    /// `exp(self)` for a nilpotent matrix that never raises the total degree of a column.
    pub fn exp(&self) -> Result<Self> {
        if self.reach > 0 {
            return Err(Error::NonNilpotentExponent(format!(
                "exponent lowers the total degree by {}",
                self.reach
            )));
        }
        let m = self
            .matrix
            .exp_nilpotent()
            .ok_or_else(|| Error::NonNilpotentExponent("exponent is not nilpotent".into()))?;
        Ok(DegreeMatrix {
            matrix: m,
            dims: self.dims.clone(),
            exact: self.exact,
            reach: 0,
        })
    }

    /// Rows with every coordinate below `cutoff`; all of them must be exact.
    pub fn block_rows(&self, cutoff: usize) -> Result<Vec<usize>> {
        let need = (self.dims.len() * cutoff.saturating_sub(1)) as i64;
        if need >= self.exact {
            return Err(Error::MarginInsufficient {
                certified: self.exact.max(0) as usize,
                requested: need as usize + 1,
            });
        }
        Ok((0..self.matrix.rows())
            .filter(|&i| split_index(i, &self.dims).iter().all(|&c| c < cutoff))
            .collect())
    }
}

/// Words over a truncated representation with the degree certificate.
pub struct DegreeTarget<'a> {
    pub rep: &'a Representation,
}

impl WordTarget for DegreeTarget<'_> {
    type Elem = DegreeMatrix;

    fn one(&self) -> Result<DegreeMatrix> {
        Ok(DegreeMatrix::identity(&self.rep.legs().iter().map(|l| l.dim).collect::<Vec<_>>()))
    }

    fn generator(&self, name: &str) -> Result<DegreeMatrix> {
        DegreeMatrix::from_cert(self.rep.generator(name)?)
    }

    fn exp(&self, coeff: &Scalar, name: &str) -> Result<DegreeMatrix> {
        self.generator(name)?.scale(coeff).exp()
    }

    fn add(&self, a: &DegreeMatrix, b: &DegreeMatrix) -> DegreeMatrix {
        a.add(b)
    }

    fn mul(&self, a: &DegreeMatrix, b: &DegreeMatrix) -> DegreeMatrix {
        a.mul(b)
    }

    fn scale(&self, a: &DegreeMatrix, c: &EpsilonScalar) -> Result<DegreeMatrix> {
        let c = c
            .as_scalar()
            .ok_or_else(|| Error::Unsupported(format!("coefficient {c} depends on eps")))?;
        Ok(a.scale(&c))
    }
}
