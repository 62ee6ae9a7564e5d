//! Word evaluation over matrices, boson expressions and the counit.

use crate::boson::BosonExpr;
use crate::error::{Error, Result};
use crate::matrix::{CertMatrix, Leg};
use crate::realization::Realization;
use crate::rep::Representation;
use crate::scalar::{int, EpsilonScalar, Scalar};
use crate::word::WordTarget;

fn eps_free(c: &EpsilonScalar) -> Result<Scalar> {
    c.as_scalar()
        .ok_or_else(|| Error::Unsupported(format!("coefficient {c} depends on eps")))
}

/// Generator matrices of a representation; `exp` is the exact series of a
/// nilpotent matrix.
pub struct MatrixTarget<'a> {
    pub rep: &'a Representation,
    legs: Vec<Leg>,
}

impl<'a> MatrixTarget<'a> {
    pub fn new(rep: &'a Representation) -> Self {
        MatrixTarget { legs: rep.legs(), rep }
    }
}

impl WordTarget for MatrixTarget<'_> {
    type Elem = CertMatrix<Scalar>;

    fn one(&self) -> Result<Self::Elem> {
        Ok(CertMatrix::identity(&self.legs))
    }

    fn generator(&self, name: &str) -> Result<Self::Elem> {
        self.rep.generator(name).cloned()
    }

    fn exp(&self, coeff: &Scalar, name: &str) -> Result<Self::Elem> {
        self.rep.generator(name)?.scale(coeff).exp()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(b)
    }

    fn scale(&self, a: &Self::Elem, c: &EpsilonScalar) -> Result<Self::Elem> {
        Ok(a.scale(&eps_free(c)?))
    }
}

/// Generator images of a realization. `exp(c X)` is defined when `X` maps
/// to `a+` and `c = 2kz`.
pub struct BosonTarget<'a> {
    pub real: &'a Realization,
}

impl WordTarget for BosonTarget<'_> {
    type Elem = BosonExpr;

    fn one(&self) -> Result<Self::Elem> {
        Ok(BosonExpr::one())
    }

    fn generator(&self, name: &str) -> Result<Self::Elem> {
        self.real.get(name).cloned()
    }

    fn exp(&self, coeff: &Scalar, name: &str) -> Result<Self::Elem> {
        if *self.real.get(name)? != BosonExpr::a_plus() {
            return Err(Error::Unsupported(format!("exp of {name}, whose image is not a+")));
        }
        let k = coeff.coeff(1, 1) / int(2);
        if !k.is_integer() || *coeff != Scalar::monomial(k.clone() * int(2), 1) {
            return Err(Error::Unsupported(format!("exp slope {coeff} is not 2kz")));
        }
        let k = i32::try_from(k.to_integer()).map_err(|_| Error::Unsupported("exp slope too large".into()))?;
        Ok(BosonExpr::exp_a(k))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(b)
    }

    fn scale(&self, a: &Self::Elem, c: &EpsilonScalar) -> Result<Self::Elem> {
        Ok(a.scale(c))
    }
}

/// The counit as an algebra map: every generator to `counit(X)`, `exp` to 1.
pub struct CounitTarget<'a> {
    pub counit: &'a [(String, Scalar)],
}

impl WordTarget for CounitTarget<'_> {
    type Elem = EpsilonScalar;

    fn one(&self) -> Result<Self::Elem> {
        Ok(EpsilonScalar::one())
    }

    fn generator(&self, name: &str) -> Result<Self::Elem> {
        self.counit
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| EpsilonScalar::from_scalar(v.clone()))
            .ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    fn exp(&self, coeff: &Scalar, name: &str) -> Result<Self::Elem> {
        let e = self.generator(name)?;
        if !e.is_zero() {
            return Err(Error::Unsupported(format!("exp({coeff} {name}) with nonzero counit")));
        }
        Ok(EpsilonScalar::from_rational(int(1)))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(b)
    }

    fn scale(&self, a: &Self::Elem, c: &EpsilonScalar) -> Result<Self::Elem> {
        Ok(a.mul(c))
    }
}
