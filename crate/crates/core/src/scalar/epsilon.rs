//! Laurent polynomials in the contraction parameter ε over `Scalar`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::radical::Scalar;
use super::rational::Rational;

use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// `sum_k eps^k * s_k`, finitely many nonzero `s_k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct EpsilonScalar {
    terms: BTreeMap<i32, Scalar>,
}

impl EpsilonScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_scalar(Scalar::one())
    }

    pub fn from_scalar(s: Scalar) -> Self {
        Self::eps_monomial(s, 0)
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_scalar(Scalar::from_rational(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_scalar(Scalar::from_int(n))
    }

    /// `s * eps^k`.
    pub fn eps_monomial(s: Scalar, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(k, s);
        }
        EpsilonScalar { terms }
    }

    /// `eps^k`.
    pub fn eps_pow(k: i32) -> Self {
        Self::eps_monomial(Scalar::one(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Scalar)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn min_eps_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// The ε-free value, when no ε-dependence is present.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn eps_coeff(&self, k: i32) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    fn insert_add(&mut self, k: i32, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_default();
        *e = e.add(s);
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, s) in &other.terms {
            out.insert_add(*k, s);
        }
        out
    }

    pub fn neg(&self) -> Self {
        EpsilonScalar {
            terms: self.terms.iter().map(|(k, s)| (*k, s.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = EpsilonScalar::default();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                out.insert_add(i + j, &a.mul(b));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.mul_scalar(&Scalar::from_rational(c.clone()))
    }

    pub fn mul_scalar(&self, s: &Scalar) -> Self {
        let mut out = EpsilonScalar::default();
        for (k, a) in &self.terms {
            out.insert_add(*k, &a.mul(s));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by `z^k`.
    pub fn shift_z(&self, k: i32) -> Self {
        EpsilonScalar {
            terms: self.terms.iter().map(|(e, s)| (*e, s.shift_z(k))).collect(),
        }
    }

    /// Substitute `z -> eps^k * z`: a `z^n` term gains `eps^(k n)`.
    pub fn rescale_z_eps(&self, k: i32) -> Self {
        let mut out = EpsilonScalar::default();
        for (e, s) in &self.terms {
            for (r, p) in s.terms() {
                for (n, c) in p.terms() {
                    let piece = Scalar::with_radical(r, ZPoly::monomial(c.clone(), n));
                    out.insert_add(e + k * n, &piece);
                }
            }
        }
        out
    }

    /// Substitute a rational value for `z` in every ε-coefficient.
    pub fn specialize(&self, z_value: &Rational) -> Result<Self> {
        let mut out = EpsilonScalar::default();
        for (k, s) in &self.terms {
            out.insert_add(*k, &s.specialize(z_value)?);
        }
        Ok(out)
    }

    /// The ε → 0 limit: the degree-0 part, provided no negative degree occurs.
    pub fn epsilon_limit(&self) -> Result<Scalar> {
        if let Some(k) = self.min_eps_degree().filter(|k| *k < 0) {
            return Err(Error::NegativeEpsilonDegree {
                degree: k,
                context: self.to_string(),
            });
        }
        Ok(self.eps_coeff(0))
    }

    /// Coefficient of `z^d` (radicals and ε-degrees kept).
    pub fn z_coeff(&self, d: i32) -> Self {
        let mut out = EpsilonScalar::default();
        for (e, s) in &self.terms {
            for (r, p) in s.terms() {
                let c = p.coeff(d);
                if !num_traits::Zero::is_zero(&c) {
                    out.insert_add(*e, &Scalar::with_radical(r, ZPoly::constant(c)));
                }
            }
        }
        out
    }

    pub fn is_polynomial_in_z(&self) -> bool {
        self.terms.values().all(Scalar::is_polynomial)
    }
}

impl super::ring::Ring for EpsilonScalar {
    fn zero() -> Self {
        EpsilonScalar::zero()
    }
    fn one() -> Self {
        EpsilonScalar::one()
    }
    fn is_zero(&self) -> bool {
        EpsilonScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        EpsilonScalar::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        EpsilonScalar::mul(self, other)
    }
    fn neg(&self) -> Self {
        EpsilonScalar::neg(self)
    }
    fn from_i64(n: i64) -> Self {
        EpsilonScalar::from_int(n)
    }
    fn scale_q(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}

impl From<Scalar> for EpsilonScalar {
    fn from(s: Scalar) -> Self {
        EpsilonScalar::from_scalar(s)
    }
}

impl From<Rational> for EpsilonScalar {
    fn from(c: Rational) -> Self {
        EpsilonScalar::from_rational(c)
    }
}

impl fmt::Display for EpsilonScalar {
    /// ε-free values print as their `Scalar`; otherwise `(s) * eps^k` terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.as_scalar() {
            return write!(f, "{s}");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, s)| {
                if *k == 0 {
                    format!("({s})")
                } else {
                    format!("({s}) * eps^{k}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl EpsilonScalar {
    /// True when the value is exactly `1`.
    pub fn is_unit_one(&self) -> bool {
        self.as_scalar().and_then(|s| s.as_rational()).is_some_and(|r| r.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::int;

    #[test]
    fn limit_cancels_exactly() {
        let beta = Scalar::from_int(7);
        let a = EpsilonScalar::eps_pow(2).mul(&EpsilonScalar::eps_monomial(beta.clone(), -2));
        assert_eq!(a.epsilon_limit().unwrap(), beta);
    }

    #[test]
    fn divergent_limit_is_an_error() {
        let a = EpsilonScalar::eps_pow(-1);
        assert!(matches!(a.epsilon_limit(), Err(Error::NegativeEpsilonDegree { degree: -1, .. })));
    }

    #[test]
    fn scaled_alpha_vanishes() {
        let a = EpsilonScalar::eps_monomial(Scalar::from_int(3), 1);
        assert!(a.epsilon_limit().unwrap().is_zero());
    }

    #[test]
    fn z_rescaling_tracks_degree() {
        // z^2 + 3 under z -> eps z gives eps^2 z^2 + 3
        let s = Scalar::monomial(int(1), 2).add(&Scalar::from_int(3));
        let r = EpsilonScalar::from_scalar(s).rescale_z_eps(1);
        assert_eq!(r.eps_coeff(2), Scalar::monomial(int(1), 2));
        assert_eq!(r.eps_coeff(0), Scalar::from_int(3));
    }
}
