//! Normal-ordered boson expressions in two modes `a`, `b`.
//!
//! A term is `c * e^{2kz a+} * a+^pa * a-^qa * b+^pb * b-^qb`. Products are
//! normal-ordered with
//!
//! * `a-^q e^{c a+} = e^{c a+} (a- + c)^q`
//! * `a-^i a+^p = sum_j C(i,j) C(p,j) j! a+^(p-j) a-^(i-j)`
//!
//! Mode `b` never carries an exponential. Coefficients are `EpsilonScalar`s,
//! which may hold `z^-1` so that `(e^{2z a+} - 1)/(2z)` is representable;
//! [`BosonExpr::check_regular`] confirms that such poles cancel once the
//! exponential is expanded.

mod text;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{EpsilonScalar, Rational, Scalar, ZPoly};

/// Exponent and powers of a normal-ordered monomial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    /// Exponential `e^{2 k z a+}`.
    pub k: i32,
    pub pa: u32,
    pub qa: u32,
    pub pb: u32,
    pub qb: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        k: 0,
        pa: 0,
        qa: 0,
        pb: 0,
        qb: 0,
    };

    pub fn uses_b(&self) -> bool {
        self.pb > 0 || self.qb > 0
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BosonExpr {
    terms: BTreeMap<Monomial, EpsilonScalar>,
}

fn binom(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `a^i a^+p` reordering weights `(j, C(i,j) C(p,j) j!)` for one mode.
fn reorder(i: u32, p: u32) -> Vec<(u32, Rational)> {
    (0..=i.min(p))
        .map(|j| (j, Rational::from_integer(binom(i, j) * binom(p, j) * factorial(j))))
        .collect()
}

impl BosonExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(EpsilonScalar::one())
    }

    pub fn scalar(c: EpsilonScalar) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: EpsilonScalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        BosonExpr { terms }
    }

    fn mono(m: Monomial) -> Self {
        Self::term(EpsilonScalar::one(), m)
    }

    pub fn a_plus() -> Self {
        Self::mono(Monomial { pa: 1, ..Monomial::ONE })
    }

    pub fn a_minus() -> Self {
        Self::mono(Monomial { qa: 1, ..Monomial::ONE })
    }

    pub fn b_plus() -> Self {
        Self::mono(Monomial { pb: 1, ..Monomial::ONE })
    }

    pub fn b_minus() -> Self {
        Self::mono(Monomial { qb: 1, ..Monomial::ONE })
    }

    /// `e^{2 k z a+}`.
    pub fn exp_a(k: i32) -> Self {
        Self::mono(Monomial { k, ..Monomial::ONE })
    }

    /// `(e^{2 k z a+} - 1) / (2 z)`, the discrete-derivative combination.
    pub fn exp_a_minus_one_over_2z(k: i32) -> Self {
        let inv2z = EpsilonScalar::from_scalar(Scalar::monomial(Rational::new(1.into(), 2.into()), -1));
        Self::exp_a(k).sub(&Self::one()).scale(&inv2z)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &EpsilonScalar)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> EpsilonScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn uses_b(&self) -> bool {
        self.terms.keys().any(Monomial::uses_b)
    }

    /// Largest number of `a-` (resp. `b-`) factors in any term.
    pub fn lowering_degree(&self) -> (u32, u32) {
        self.terms
            .keys()
            .fold((0, 0), |(a, b), m| (a.max(m.qa), b.max(m.qb)))
    }

    /// Largest net lowering `q - p` per mode, ignoring exponentials (which only raise).
    pub fn lowering_band(&self) -> (usize, usize) {
        self.terms.keys().fold((0, 0), |(a, b), m| {
            (
                a.max(m.qa.saturating_sub(m.pa) as usize),
                b.max(m.qb.saturating_sub(m.pb) as usize),
            )
        })
    }

    fn insert_add(&mut self, m: Monomial, c: &EpsilonScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_default();
        *e = e.add(c);
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        BosonExpr {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &EpsilonScalar) -> Self {
        let mut out = BosonExpr::zero();
        for (m, x) in &self.terms {
            out.insert_add(*m, &x.mul(c));
        }
        out
    }

    pub fn scale_scalar(&self, c: &Scalar) -> Self {
        self.scale(&EpsilonScalar::from_scalar(c.clone()))
    }

    pub fn scale_q(&self, c: &Rational) -> Self {
        self.scale(&EpsilonScalar::from_rational(c.clone()))
    }

    /// Normal-ordered product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BosonExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1.mul(c2);
                for (m, w) in mul_monomials(m1, m2) {
                    out.insert_add(m, &c.mul(&w));
                }
            }
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

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Substitute `z -> eps^t z` in all coefficients.
    pub fn rescale_z_eps(&self, t: i32) -> Self {
        let mut out = BosonExpr::zero();
        for (m, c) in &self.terms {
            out.insert_add(*m, &c.rescale_z_eps(t));
        }
        out
    }

    /// Substitute a value for `z`. The exponential becomes an ordinary series,
    /// so only `z = 0` is supported: `e^{2kz a+} -> 1`, after which poles must
    /// have cancelled.
    pub fn classical_limit(&self) -> Result<Self> {
        self.check_regular()?;
        // Expand e^{2kz a+} to the order needed to catch every z^0 contribution.
        let mut out = BosonExpr::zero();
        for (m, c) in &self.terms {
            let low = c
                .terms()
                .filter_map(|(_, s)| s.min_z_degree())
                .min()
                .unwrap_or(0)
                .min(0);
            let jmax = (-low) as u32;
            for j in 0..=jmax {
                if m.k == 0 && j > 0 {
                    break;
                }
                let w = Rational::from_integer(num_traits::pow(BigInt::from(2 * m.k), j as usize))
                    / Rational::from_integer(factorial(j));
                let c0 = c.z_coeff(-(j as i32)).scale(&w);
                let mm = Monomial {
                    k: 0,
                    pa: m.pa + j,
                    ..*m
                };
                out.insert_add(mm, &c0);
            }
        }
        Ok(out)
    }

    /// Confirms that every negative power of `z` cancels after expanding the
    /// exponentials, so that matrix images are polynomial in `z`.
    pub fn check_regular(&self) -> Result<()> {
        // Collect, per (pa+j, qa, pb, qb) and z-degree m < 0, the expanded coefficient.
        let mut acc: BTreeMap<(u32, u32, u32, u32, i32, i32), Scalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            for (e, s) in c.terms() {
                for (r, p) in s.terms() {
                    for (d, q) in p.terms() {
                        if d >= 0 {
                            continue;
                        }
                        // term q z^d e^{2kz a+}: contributes q (2k)^j/j! z^(d+j) a+^(pa+j)
                        let jmax = if m.k == 0 { 0 } else { (-d - 1) as u32 };
                        for j in 0..=jmax {
                            let w = Rational::from_integer(num_traits::pow(BigInt::from(2 * m.k), j as usize))
                                / Rational::from_integer(factorial(j));
                            let key = (m.pa + j, m.qa, m.pb, m.qb, e, d + j as i32);
                            let v = Scalar::with_radical(r, ZPoly::constant(q * &w));
                            let slot = acc.entry(key).or_default();
                            *slot = slot.add(&v);
                        }
                    }
                }
            }
        }
        if let Some((key, _)) = acc.iter().find(|(_, v)| !v.is_zero()) {
            return Err(Error::NotPolynomial(format!(
                "z^{} survives at a+^{} a-^{} b+^{} b-^{}",
                key.5, key.0, key.1, key.2, key.3
            )));
        }
        Ok(())
    }

    /// ε → 0 limit of every coefficient.
    pub fn epsilon_limit(&self) -> Result<Self> {
        let mut out = BosonExpr::zero();
        for (m, c) in &self.terms {
            let v = c.epsilon_limit().map_err(|e| match e {
                Error::NegativeEpsilonDegree { degree, context } => Error::NegativeEpsilonDegree {
                    degree,
                    context: format!("{context} at {}", text::format_monomial(m)),
                },
                other => other,
            })?;
            out.insert_add(*m, &EpsilonScalar::from_scalar(v));
        }
        Ok(out)
    }

    /// Apply a mode rescaling and `z -> eps^z_power z`, then re-normal-order.
    pub fn substitute(&self, map: &Substitution) -> Result<Self> {
        let mut out = BosonExpr::zero();
        for (m, c) in &self.terms {
            if m.k != 0 {
                // exponent 2k z a+ picks up eps^(z_power) * f(a+)
                let slope = map.a_plus.mul(&EpsilonScalar::eps_pow(map.z_power));
                if !slope.is_unit_one() {
                    return Err(Error::Unsupported(format!(
                        "rescaling changes the exponent 2z a+ by {slope}"
                    )));
                }
            }
            let f = map.a_plus.pow(m.pa)
                .mul(&map.a_minus.pow(m.qa))
                .mul(&map.b_plus.pow(m.pb))
                .mul(&map.b_minus.pow(m.qb));
            let c = c.rescale_z_eps(map.z_power).mul(&f);
            out.insert_add(*m, &c);
        }
        Ok(out)
    }

    /// Truncated classical check helper: true when no exponential occurs.
    pub fn is_exp_free(&self) -> bool {
        self.terms.keys().all(|m| m.k == 0)
    }

    /// True when no ε-dependence and all coefficients are ε-free scalars.
    pub fn is_eps_free(&self) -> bool {
        self.terms.values().all(|c| c.as_scalar().is_some())
    }

    pub fn map_coeffs(&self, f: impl Fn(&EpsilonScalar) -> EpsilonScalar) -> Self {
        let mut out = BosonExpr::zero();
        for (m, c) in &self.terms {
            out.insert_add(*m, &f(c));
        }
        out
    }
}

/// Product of two monomials as a normal-ordered sum with rational-in-z weights.
fn mul_monomials(m1: &Monomial, m2: &Monomial) -> Vec<(Monomial, EpsilonScalar)> {
    // a-^{q1} e^{2 k2 z a+} = e^{2 k2 z a+} sum_i C(q1,i) (2 k2 z)^(q1-i) a-^i
    let mut shifted: Vec<(u32, EpsilonScalar)> = Vec::new();
    if m2.k == 0 {
        shifted.push((m1.qa, EpsilonScalar::one()));
    } else {
        for i in 0..=m1.qa {
            let e = m1.qa - i;
            let c = Rational::from_integer(binom(m1.qa, i) * num_traits::pow(BigInt::from(2 * m2.k), e as usize));
            shifted.push((i, EpsilonScalar::from_scalar(Scalar::monomial(c, e as i32))));
        }
    }
    let mut out = Vec::new();
    let rb = reorder(m1.qb, m2.pb);
    for (i, w) in shifted {
        for (j, ca) in reorder(i, m2.pa) {
            for (l, cb) in &rb {
                let m = Monomial {
                    k: m1.k + m2.k,
                    pa: m1.pa + m2.pa - j,
                    qa: i - j + m2.qa,
                    pb: m1.pb + m2.pb - l,
                    qb: m1.qb - l + m2.qb,
                };
                out.push((m, w.scale(&(&ca * cb))));
            }
        }
    }
    out
}

/// Mode and deformation-parameter rescaling used by contractions:
/// `a+ -> a_plus * a+`, ..., and `z -> eps^z_power * z`.
#[derive(Clone, Debug, PartialEq)]
pub struct Substitution {
    pub a_plus: EpsilonScalar,
    pub a_minus: EpsilonScalar,
    pub b_plus: EpsilonScalar,
    pub b_minus: EpsilonScalar,
    pub z_power: i32,
}

impl Default for Substitution {
    fn default() -> Self {
        Substitution {
            a_plus: EpsilonScalar::one(),
            a_minus: EpsilonScalar::one(),
            b_plus: EpsilonScalar::one(),
            b_minus: EpsilonScalar::one(),
            z_power: 0,
        }
    }
}

/// The deformed boson pair `(e^{2z a+} - 1)/(2z)` and `a- + mu z`.
pub fn deformed_boson(mu: &Rational) -> (BosonExpr, BosonExpr) {
    let plus = BosonExpr::exp_a_minus_one_over_2z(1);
    let minus = BosonExpr::a_minus().add(&BosonExpr::scalar(EpsilonScalar::from_scalar(Scalar::monomial(mu.clone(), 1))));
    (plus, minus)
}

/// Product of a sequence of factors, left to right.
pub fn normal_order(factors: &[BosonExpr]) -> BosonExpr {
    factors.iter().fold(BosonExpr::one(), |acc, f| acc.mul(f))
}
