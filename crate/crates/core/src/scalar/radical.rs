//! `Scalar`: exact elements of `Q[z, z^-1]` adjoined square roots of
//! square-free positive integers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational_pq, int, parse_rational, Rational};

use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// `sum_n sqrt(n) * p_n(z)` over square-free radicands `n >= 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Scalar {
    terms: BTreeMap<u64, ZPoly>,
}

/// Splits `n = g^2 * r` with `r` square-free. Returns `(g, r)`.
pub fn square_free_split(n: u64) -> (u64, u64) {
    assert!(n > 0, "radicand must be positive");
    let mut g = 1u64;
    let mut r = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            g *= p;
        }
        if e % 2 == 1 {
            r *= p;
        }
        p += 1;
    }
    r *= m;
    (g, r)
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_zpoly(ZPoly::constant(c))
    }

    pub fn from_zpoly(p: ZPoly) -> Self {
        Self::with_radical(1, p)
    }

    /// `sqrt(radicand) * p`; the radicand need not be square-free.
    pub fn with_radical(radicand: u64, p: ZPoly) -> Self {
        let mut s = Scalar::default();
        if radicand == 0 || p.is_zero() {
            return s;
        }
        let (g, r) = square_free_split(radicand);
        let p = if g == 1 { p } else { p.scale(&int(g as i64)) };
        s.terms.insert(r, p);
        s
    }

    /// `c * z^k`.
    pub fn monomial(c: Rational, k: i32) -> Self {
        Self::from_zpoly(ZPoly::monomial(c, k))
    }

    pub fn z() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// Exact `sqrt(n)` for a non-negative integer.
    pub fn sqrt_int(n: u64) -> Self {
        Self::with_radical(n, ZPoly::constant(Rational::one()))
    }

    /// Exact `sqrt(n)` for a non-negative big integer fitting in `u64`.
    pub fn sqrt_big(n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::zero();
        }
        let s = n.sqrt();
        if &(&s * &s) == n {
            return Self::from_rational(Rational::from_integer(s));
        }
        let v = n.to_u64().expect("radicand exceeds u64");
        Self::sqrt_int(v)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Radicand → z-polynomial pairs in ascending radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &ZPoly)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn radical_part(&self, radicand: u64) -> ZPoly {
        self.terms.get(&radicand).cloned().unwrap_or_default()
    }

    /// True when no negative powers of `z` are present.
    pub fn is_polynomial(&self) -> bool {
        self.terms.values().all(|p| p.is_polynomial())
    }

    pub fn min_z_degree(&self) -> Option<i32> {
        self.terms.values().filter_map(|p| p.min_degree()).min()
    }

    pub fn max_z_degree(&self) -> Option<i32> {
        self.terms.values().filter_map(|p| p.degree()).max()
    }

    /// The rational value when the scalar is a rational constant.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (r, p) = self.terms.iter().next().unwrap();
                if *r == 1 {
                    p.as_constant()
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// The polynomial when no radicals other than `sqrt(1)` occur.
    pub fn as_zpoly(&self) -> Option<ZPoly> {
        match self.terms.len() {
            0 => Some(ZPoly::default()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    fn insert_add(&mut self, radicand: u64, p: ZPoly) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(radicand).or_default();
        *entry = entry.add(&p);
        if entry.is_zero() {
            self.terms.remove(&radicand);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, p) in &other.terms {
            out.insert_add(*r, p.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Scalar {
            terms: self.terms.iter().map(|(r, p)| (*r, p.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `sqrt(m) * sqrt(n) = g * sqrt(mn / g^2)` with `g^2` the largest square dividing `mn`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Scalar::default();
        for (m, p) in &self.terms {
            for (n, q) in &other.terms {
                let g = m.gcd(n);
                // sqrt(m) sqrt(n) = g sqrt((m/g)(n/g)); both square-free so the rest is too.
                let r = (m / g) * (n / g);
                let prod = p.mul(q);
                let prod = if g == 1 { prod } else { prod.scale(&int(g as i64)) };
                out.insert_add(r, prod);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(r, p)| (*r, p.scale(c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by `z^k`.
    pub fn shift_z(&self, k: i32) -> Self {
        Scalar {
            terms: self.terms.iter().map(|(r, p)| (*r, p.shift(k))).collect(),
        }
    }

    /// Substitute `z -> c z`.
    pub fn rescale_z(&self, c: &Rational) -> Self {
        let mut out = Scalar::default();
        for (r, p) in &self.terms {
            out.insert_add(*r, p.rescale_z(c));
        }
        out
    }

    /// Substitute a rational value for `z`; radicals are untouched.
    ///
    /// Fails only when `z_value` is zero and negative powers of `z` occur.
    pub fn specialize(&self, z_value: &Rational) -> Result<Self> {
        let mut out = Scalar::default();
        for (r, p) in &self.terms {
            let v = p.eval(z_value).ok_or(Error::NegativeZDegree)?;
            out.insert_add(*r, ZPoly::constant(v));
        }
        Ok(out)
    }

    /// Coefficient of `sqrt(radicand) * z^k`.
    pub fn coeff(&self, radicand: u64, k: i32) -> Rational {
        self.terms
            .get(&radicand)
            .map(|p| p.coeff(k))
            .unwrap_or_else(Rational::zero)
    }

    /// Canonical text: terms `p/q * sqrt(n) * z^k` joined by ` + `,
    /// ordered by radicand then degree; `sqrt(1)` and `z^0` are omitted.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (r, p) in &self.terms {
            for (k, c) in p.terms() {
                let mut s = format_rational_pq(c);
                if *r != 1 {
                    s.push_str(&format!(" * sqrt({r})"));
                }
                if k != 0 {
                    s.push_str(&format!(" * z^{k}"));
                }
                parts.push(s);
            }
        }
        parts.join(" + ")
    }
}

impl super::ring::Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Scalar::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Scalar::mul(self, other)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn add_assign(&mut self, other: &Self) {
        for (r, p) in &other.terms {
            self.insert_add(*r, p.clone());
        }
    }
    fn from_i64(n: i64) -> Self {
        Scalar::from_int(n)
    }
    fn scale_q(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts the canonical form and small variations: integer coefficients,
    /// `z` for `z^1`, and terms in any order or repeated.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "0" {
            return Ok(Scalar::zero());
        }
        let mut out = Scalar::zero();
        for term in t.split(" + ") {
            let mut coeff: Option<Rational> = None;
            let mut radicand = 1u64;
            let mut k = 0i32;
            for factor in term.split('*').map(str::trim) {
                if let Some(inner) = factor.strip_prefix("sqrt(").and_then(|x| x.strip_suffix(')')) {
                    radicand *= inner
                        .trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad radicand in {term:?}")))?;
                } else if factor == "z" {
                    k += 1;
                } else if let Some(e) = factor.strip_prefix("z^") {
                    k += e
                        .trim()
                        .parse::<i32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?;
                } else {
                    let c = parse_rational(factor)?;
                    coeff = Some(coeff.map_or(c.clone(), |old| old * c));
                }
            }
            let c = coeff.unwrap_or_else(Rational::one);
            out = out.add(&Scalar::with_radical(radicand, ZPoly::monomial(c, k)));
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarTermJson {
    radicand: u64,
    coeffs: Vec<String>,
    #[serde(default, skip_serializing_if = "is_zero_i32")]
    low: i32,
}

fn is_zero_i32(v: &i32) -> bool {
    *v == 0
}

impl Serialize for Scalar {
    /// `[{radicand, coeffs: ["p/q" by z-degree]}]`; a `low` field appears only
    /// for Laurent values with negative powers of `z`.
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let items: Vec<ScalarTermJson> = self
            .terms
            .iter()
            .map(|(r, p)| {
                let low = p.min_degree().unwrap_or(0).min(0);
                let high = p.degree().unwrap_or(0);
                let coeffs = (low..=high).map(|k| format_rational_pq(&p.coeff(k))).collect();
                ScalarTermJson {
                    radicand: *r,
                    coeffs,
                    low,
                }
            })
            .collect();
        items.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<ScalarTermJson>::deserialize(de)?;
        let mut out = Scalar::zero();
        for it in items {
            let coeffs = it
                .coeffs
                .iter()
                .map(|c| parse_rational(c))
                .collect::<Result<Vec<_>>>()
                .map_err(serde::de::Error::custom)?;
            out = out.add(&Scalar::with_radical(it.radicand, ZPoly::from_coeffs(it.low, coeffs)));
        }
        Ok(out)
    }
}
