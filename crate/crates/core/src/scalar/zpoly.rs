//! Polynomials in the deformation parameter `z` with rational coefficients.
//!
//! Negative powers of `z` are allowed so that intermediate forms such as
//! `(e^{2z a+} - 1)/(2z)` can be carried exactly before the `z^{-1}` parts
//! cancel. `ZPoly::is_polynomial` tells whether a value is an honest
//! polynomial; the representation layer insists on that for final matrices.

use std::fmt;

use num_traits::{One, Zero};

use super::rational::{format_rational, Rational};


/// `sum_k coeffs[k] * z^(low + k)`.
///
/// Canonical: the zero polynomial has no coefficients and `low == 0`;
/// otherwise the first and last coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ZPoly {
    low: i32,
    coeffs: Vec<Rational>,
}

impl ZPoly {
    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(0, vec![c])
    }

    /// `c * z^k`.
    pub fn monomial(c: Rational, k: i32) -> Self {
        Self::from_coeffs(k, vec![c])
    }

    pub fn z() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// Coefficients in ascending degree starting at `z^low`.
    pub fn from_coeffs(low: i32, coeffs: Vec<Rational>) -> Self {
        let mut p = ZPoly { low, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest power present; `None` for zero.
    pub fn min_degree(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest power present; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || self.low >= 0
    }

    /// True when the value is a rational constant (possibly zero).
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.low == 0 && self.coeffs.len() == 1 {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn coeff(&self, k: i32) -> Rational {
        let idx = k - self.low;
        if idx < 0 {
            return Rational::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_else(Rational::zero)
    }

    /// `(degree, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    /// Coefficients `z^0 .. z^deg` for a polynomial; `None` if negative powers occur.
    pub fn dense_coeffs(&self) -> Option<Vec<Rational>> {
        if !self.is_polynomial() {
            return None;
        }
        if self.is_zero() {
            return Some(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.low as usize];
        out.extend(self.coeffs.iter().cloned());
        Some(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        ZPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        ZPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitute `z -> c z`.
    pub fn rescale_z(&self, c: &Rational) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, a) in self.coeffs.iter().enumerate() {
            out.push(a * pow_i32(c, self.low + i as i32));
        }
        Self::from_coeffs(self.low, out)
    }

    /// Evaluate at a rational point. Returns `None` only for `z = 0` with
    /// negative powers present.
    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if at.is_zero() {
            if self.low < 0 {
                return None;
            }
            return Some(self.coeff(0));
        }
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        Some(acc * pow_i32(at, self.low))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.degree().unwrap().max(other.degree().unwrap());
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (k, c) in self.terms().chain(other.terms()) {
            coeffs[(k - low) as usize] += c;
        }
        Self::from_coeffs(low, coeffs)
    }

    pub fn neg(&self) -> Self {
        ZPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(self.low + other.low, coeffs)
    }

    /// Polynomial long division `self = q * d + r` with `deg r < deg d`.
    /// Both operands must be polynomials; `d` nonzero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let num = self.dense_coeffs().expect("polynomial dividend");
        let den = d.dense_coeffs().expect("polynomial divisor");
        if num.len() < den.len() {
            return (Self::default(), self.clone());
        }
        let mut rem = num;
        let dl = den.len();
        let lead = den[dl - 1].clone();
        let mut quot = vec![Rational::zero(); rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dl - 1] / &lead;
            if !c.is_zero() {
                for (j, dc) in den.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dl - 1);
        (Self::from_coeffs(0, quot), Self::from_coeffs(0, rem))
    }

    /// Monic greatest common divisor of two polynomials.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Substitute `z -> -z`.
    pub fn flip_z(&self) -> Self {
        self.rescale_z(&-Rational::one())
    }
}

fn pow_i32(c: &Rational, k: i32) -> Rational {
    if k >= 0 {
        num_traits::pow(c.clone(), k as usize)
    } else {
        num_traits::pow(c.recip(), (-k) as usize)
    }
}

impl super::ring::Ring for ZPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(<Rational as One>::one())
    }
    fn is_zero(&self) -> bool {
        ZPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        ZPoly::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        ZPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        ZPoly::neg(self)
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(super::rational::int(n))
    }
    fn scale_q(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}

impl fmt::Display for ZPoly {
    /// `c0 + c1*z + c2*z^2` style, highest degree last.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let zpart = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if zpart.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{zpart}")?;
            } else {
                write!(f, "{}*{zpart}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{int, rat};

    fn p(low: i32, c: &[i64]) -> ZPoly {
        ZPoly::from_coeffs(low, c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn evaluation_matches_direct_sum() {
        let q = p(1, &[3, 1]); // 3z + z^2
        assert_eq!(q.eval(&int(0)).unwrap(), int(0));
        assert_eq!(q.eval(&int(1)).unwrap(), int(4));
        assert_eq!(q.eval(&int(-2)).unwrap(), int(-2));
    }

    #[test]
    fn laurent_parts_cancel() {
        let a = p(-1, &[1, 2]); // 1/z + 2
        let b = p(-1, &[-1]);
        let s = a.add(&b);
        assert!(s.is_polynomial());
        assert_eq!(s, ZPoly::constant(int(2)));
        assert!(a.eval(&int(0)).is_none());
    }

    #[test]
    fn gcd_is_monic() {
        // (z - 1)(z + 2) and (z - 1)(z + 3)
        let a = p(0, &[-2, 1, 1]);
        let b = p(0, &[-3, 2, 1]);
        assert_eq!(a.gcd(&b), p(0, &[-1, 1]));
        let (q, r) = a.div_rem(&p(0, &[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, p(0, &[2, 1]));
    }

    #[test]
    fn display_orders_by_degree() {
        let q = ZPoly::from_coeffs(0, vec![int(0), int(-1), rat(3, 4)]);
        assert_eq!(q.to_string(), "-z + 3/4*z^2");
    }
}
