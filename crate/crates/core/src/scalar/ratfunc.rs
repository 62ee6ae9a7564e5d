//! The field `Q(z)` of rational functions, used for exact linear algebra
//! over symbolic `z` (kernels, eigenvectors, span tests).

use std::fmt;

use num_traits::{One, Zero};

use super::rational::Rational;

use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: ZPoly,
    den: ZPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: ZPoly::default(),
            den: ZPoly::constant(Rational::one()),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(ZPoly::constant(Rational::one()))
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_poly(ZPoly::constant(c))
    }

    /// Accepts Laurent input; negative powers move into the denominator.
    pub fn from_poly(p: ZPoly) -> Self {
        match p.min_degree() {
            Some(k) if k < 0 => Self::new(p.shift(-k), ZPoly::monomial(Rational::one(), -k)),
            _ => RatFunc {
                num: p,
                den: ZPoly::constant(Rational::one()),
            },
        }
    }

    pub fn new(num: ZPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lead = d.leading_coeff().unwrap().clone();
        let inv = lead.recip();
        RatFunc {
            num: n.scale(&inv),
            den: d.scale(&inv),
        }
    }

    pub fn numer(&self) -> &ZPoly {
        &self.num
    }

    pub fn denom(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value when the denominator is 1.
    pub fn as_poly(&self) -> Option<ZPoly> {
        (self.den.as_constant().is_some_and(|c| c.is_one())).then(|| self.num.clone())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_poly().and_then(|p| p.as_constant())
    }

    /// Evaluate at a rational point; `Err` when the denominator vanishes there.
    pub fn eval(&self, at: &Rational) -> Result<Rational> {
        let d = self.den.eval(at).unwrap();
        if d.is_zero() {
            return Err(Error::Unsupported(format!("pole of {self} at z = {at}")));
        }
        Ok(self.num.eval(at).unwrap() / d)
    }

    /// Substitute `z -> -z`.
    pub fn flip_z(&self) -> Self {
        Self::new(self.num.flip_z(), self.den.flip_z())
    }
}

impl super::ring::Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn from_i64(n: i64) -> Self {
        Self::from_rational(super::rational::int(n))
    }
    fn scale_q(&self, c: &Rational) -> Self {
        if num_traits::Zero::is_zero(c) {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

impl super::ring::Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_poly() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::int;
    use crate::scalar::ring::{Field, Ring};

    #[test]
    fn reduces_common_factors() {
        // (z^2 - 1)/(z - 1) = z + 1
        let n = ZPoly::from_coeffs(0, vec![int(-1), int(0), int(1)]);
        let d = ZPoly::from_coeffs(0, vec![int(-1), int(1)]);
        let r = RatFunc::new(n, d);
        assert_eq!(r.as_poly().unwrap(), ZPoly::from_coeffs(0, vec![int(1), int(1)]));
    }

    #[test]
    fn inverse_round_trips() {
        let r = RatFunc::new(ZPoly::z(), ZPoly::from_coeffs(0, vec![int(2), int(1)]));
        assert_eq!(r.mul(&r.inv().unwrap()), RatFunc::one());
        assert_eq!(RatFunc::from_poly(ZPoly::monomial(int(3), -1)).mul(&RatFunc::from_poly(ZPoly::z())), RatFunc::from_i64(3));
    }
}
