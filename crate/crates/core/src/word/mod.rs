//! Word expressions: noncommutative polynomials in named generators with
//! exponential factors `exp(c X)`.
//!
//! Relation residuals, Casimirs, coproducts and antipodes are stored as words
//! and interpreted over any [`WordTarget`]: matrices, boson expressions or
//! scalars. Text syntax, e.g. `[J3,J+] - (exp(2z*J+) - 1)/z`:
//!
//! ```text
//! expr    := ["-"] term (("+" | "-") term)*
//! term    := power (("*" | "/" | juxtaposition) power)*
//! power   := primary ["^" n]
//! primary := n | "z" | "eps" | generator | "(" expr ")" | "[" expr "," expr "]"
//!          | "exp(" expr ")" | "sqrt(" n ")"
//! ```
//!
//! Division is only by a monomial scalar. The argument of `exp` must be a
//! scalar multiple of a single generator.

mod parse;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

pub use parse::parse_word;

use crate::error::{Error, Result};
use crate::scalar::{EpsilonScalar, Rational, Scalar};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Factor {
    Gen(String),
    /// `exp(coeff * gen)`.
    Exp { coeff: Scalar, gen: String },
}

impl Factor {
    pub fn generator(&self) -> &str {
        match self {
            Factor::Gen(g) | Factor::Exp { gen: g, .. } => g,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Gen(g) => f.write_str(g),
            Factor::Exp { coeff, gen } => write!(f, "exp(({coeff})*{gen})"),
        }
    }
}

/// Merge adjacent exponentials of the same generator; drop `exp(0)`.
fn canonical(seq: Vec<Factor>) -> Vec<Factor> {
    let mut out: Vec<Factor> = Vec::with_capacity(seq.len());
    for f in seq {
        if let Factor::Exp { coeff, gen } = &f {
            if let Some(Factor::Exp { coeff: c0, gen: g0 }) = out.last_mut() {
                if g0 == gen {
                    *c0 = c0.add(coeff);
                    if c0.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if coeff.is_zero() {
                continue;
            }
        }
        out.push(f);
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Word {
    terms: BTreeMap<Vec<Factor>, EpsilonScalar>,
}

impl Word {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(EpsilonScalar::one())
    }

    pub fn scalar(c: EpsilonScalar) -> Self {
        Self::term(c, Vec::new())
    }

    pub fn term(c: EpsilonScalar, seq: Vec<Factor>) -> Self {
        let mut w = Word::zero();
        w.insert_add(canonical(seq), &c);
        w
    }

    pub fn gen(name: &str) -> Self {
        Self::term(EpsilonScalar::one(), vec![Factor::Gen(name.into())])
    }

    pub fn exp(coeff: Scalar, name: &str) -> Self {
        Self::term(
            EpsilonScalar::one(),
            vec![Factor::Exp {
                coeff,
                gen: name.into(),
            }],
        )
    }

    fn insert_add(&mut self, seq: Vec<Factor>, c: &EpsilonScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(seq.clone()).or_default();
        *e = e.add(c);
        if e.is_zero() {
            self.terms.remove(&seq);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Factor>, &EpsilonScalar)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when the word is a pure scalar.
    pub fn as_scalar(&self) -> Option<EpsilonScalar> {
        match self.terms.len() {
            0 => Some(EpsilonScalar::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.insert_add(s.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&EpsilonScalar::from_int(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &EpsilonScalar) -> Self {
        let mut out = Word::zero();
        for (s, v) in &self.terms {
            out.insert_add(s.clone(), &v.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Word::zero();
        for (s1, c1) in &self.terms {
            for (s2, c2) in &other.terms {
                let mut seq = s1.clone();
                seq.extend(s2.iter().cloned());
                out.insert_add(canonical(seq), &c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Word::one(), |acc, _| acc.mul(self))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Generators referenced anywhere in the word.
    pub fn generators(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .terms
            .keys()
            .flat_map(|s| s.iter().map(|f| f.generator().to_string()))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Generators appearing inside an exponential.
    pub fn exp_generators(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .terms
            .keys()
            .flat_map(|s| {
                s.iter().filter_map(|f| match f {
                    Factor::Exp { gen, .. } => Some(gen.clone()),
                    Factor::Gen(_) => None,
                })
            })
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Rewrites generators `X -> s(X) Y(X)` with scalar `s` and `z -> eps^t z`.
    ///
    /// An exponential `exp(c X)` becomes `exp(c(eps^t z) s Y)`; its coefficient
    /// must come out free of `eps`.
    pub fn rescale(&self, map: &dyn Fn(&str) -> Result<(EpsilonScalar, String)>, t: i32) -> Result<Word> {
        let mut out = Word::zero();
        for (seq, c) in &self.terms {
            let mut coeff = c.rescale_z_eps(t);
            let mut new_seq = Vec::with_capacity(seq.len());
            for f in seq {
                match f {
                    Factor::Gen(g) => {
                        let (s, y) = map(g)?;
                        coeff = coeff.mul(&s);
                        new_seq.push(Factor::Gen(y));
                    }
                    Factor::Exp { coeff: ec, gen } => {
                        let (s, y) = map(gen)?;
                        let e = EpsilonScalar::from_scalar(ec.clone()).rescale_z_eps(t).mul(&s);
                        let e = e.as_scalar().ok_or_else(|| match e.min_eps_degree() {
                            Some(k) if k < 0 => Error::NegativeEpsilonDegree {
                                degree: k,
                                context: format!("exponent of exp({ec}*{gen})"),
                            },
                            _ => Error::Unsupported(format!("exponent of exp({ec}*{gen}) picks up eps: {e}")),
                        })?;
                        new_seq.push(Factor::Exp { coeff: e, gen: y });
                    }
                }
            }
            out.insert_add(canonical(new_seq), &coeff);
        }
        Ok(out)
    }

    /// `eps -> 0` term by term.
    pub fn epsilon_limit(&self) -> Result<Word> {
        let mut out = Word::zero();
        for (seq, c) in &self.terms {
            let v = c.epsilon_limit().map_err(|e| match e {
                Error::NegativeEpsilonDegree { degree, context } => Error::NegativeEpsilonDegree {
                    degree,
                    context: format!("{context} at {}", format_seq(seq)),
                },
                other => other,
            })?;
            out.insert_add(seq.clone(), &EpsilonScalar::from_scalar(v));
        }
        Ok(out)
    }

    /// Substitute `z = value` in coefficients and exponents.
    pub fn specialize(&self, z: &Rational) -> Result<Word> {
        let mut out = Word::zero();
        for (seq, c) in &self.terms {
            let s = seq
                .iter()
                .map(|f| match f {
                    Factor::Gen(_) => Ok(f.clone()),
                    Factor::Exp { coeff, gen } => Ok(Factor::Exp {
                        coeff: coeff.specialize(z)?,
                        gen: gen.clone(),
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            out.insert_add(canonical(s), &c.specialize(z)?);
        }
        Ok(out)
    }
}

fn format_seq(seq: &[Factor]) -> String {
    if seq.is_empty() {
        "1".into()
    } else {
        seq.iter().map(ToString::to_string).collect::<Vec<_>>().join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| {
                if s.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", format_seq(s))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// An algebra in which words can be evaluated.
pub trait WordTarget {
    type Elem: Clone;
    fn one(&self) -> Result<Self::Elem>;
    fn generator(&self, name: &str) -> Result<Self::Elem>;
    fn exp(&self, coeff: &Scalar, name: &str) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &EpsilonScalar) -> Result<Self::Elem>;
}

/// Evaluates `w` in `target`, caching generator images and exponentials.
pub fn evaluate<T: WordTarget>(w: &Word, target: &T) -> Result<T::Elem> {
    let mut cache: HashMap<&Factor, T::Elem> = HashMap::new();
    let mut acc: Option<T::Elem> = None;
    for (seq, c) in w.terms() {
        let mut prod: Option<T::Elem> = None;
        for f in seq {
            if !cache.contains_key(f) {
                let v = match f {
                    Factor::Gen(g) => target.generator(g)?,
                    Factor::Exp { coeff, gen } => target.exp(coeff, gen)?,
                };
                cache.insert(f, v);
            }
            let v = &cache[f];
            prod = Some(match prod {
                None => v.clone(),
                Some(p) => target.mul(&p, v),
            });
        }
        let term = match prod {
            None => target.one()?,
            Some(p) => p,
        };
        let term = target.scale(&term, c)?;
        acc = Some(match acc {
            None => term,
            Some(a) => target.add(&a, &term),
        });
    }
    match acc {
        Some(a) => Ok(a),
        None => target.scale(&target.one()?, &EpsilonScalar::zero()),
    }
}

/// `sum_i L_i (x) R_i`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TensorWord {
    pub terms: Vec<(Word, Word)>,
}

pub type CanonicalTensor = BTreeMap<(Vec<Factor>, Vec<Factor>), EpsilonScalar>;

impl TensorWord {
    /// Fully expanded form, suitable for equality tests.
    pub fn canonical(&self) -> CanonicalTensor {
        let mut out: CanonicalTensor = BTreeMap::new();
        for (l, r) in &self.terms {
            for (sl, cl) in l.terms() {
                for (sr, cr) in r.terms() {
                    let key = (sl.clone(), sr.clone());
                    let e = out.entry(key.clone()).or_default();
                    *e = e.add(&cl.mul(cr));
                    if e.is_zero() {
                        out.remove(&key);
                    }
                }
            }
        }
        out
    }

    pub fn map_words(&self, f: &dyn Fn(&Word) -> Result<Word>) -> Result<TensorWord> {
        Ok(TensorWord {
            terms: self
                .terms
                .iter()
                .map(|(l, r)| Ok((f(l)?, f(r)?)))
                .collect::<Result<_>>()?,
        })
    }

    pub fn scale(&self, c: &EpsilonScalar) -> TensorWord {
        TensorWord {
            terms: self.terms.iter().map(|(l, r)| (l.scale(c), r.clone())).collect(),
        }
    }

    /// `eps -> 0` on the expanded form, regrouped as one pair per term.
    pub fn epsilon_limit(&self) -> Result<TensorWord> {
        let mut terms = Vec::new();
        for ((sl, sr), c) in self.canonical() {
            let v = c.epsilon_limit().map_err(|e| match e {
                Error::NegativeEpsilonDegree { degree, context } => Error::NegativeEpsilonDegree {
                    degree,
                    context: format!("{context} at {} (x) {}", format_seq(&sl), format_seq(&sr)),
                },
                other => other,
            })?;
            if !v.is_zero() {
                terms.push((Word::term(EpsilonScalar::from_scalar(v), sl), Word::term(EpsilonScalar::one(), sr)));
            }
        }
        Ok(TensorWord { terms })
    }
}

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let canon = self.canonical();
        if canon.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = canon
            .iter()
            .map(|((l, r), c)| format!("({c})*{} (x) {}", format_seq(l), format_seq(r)))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn adjacent_exponentials_merge() {
        let a = Word::exp(Scalar::monomial(int(2), 1), "J+");
        let b = Word::exp(Scalar::monomial(int(-2), 1), "J+");
        assert_eq!(a.mul(&b), Word::one());
        let c = a.mul(&Word::gen("J3")).mul(&b);
        assert_eq!(c.terms().count(), 1);
    }

    #[test]
    fn rescaling_keeps_the_exponent() {
        let w = parse_word("exp(2z*J+)*J-", &["J+", "J-"]).unwrap();
        let map = |g: &str| -> Result<(EpsilonScalar, String)> {
            Ok(match g {
                "J+" => (EpsilonScalar::eps_pow(-1), "P+".into()),
                _ => (EpsilonScalar::eps_pow(-1), "P-".into()),
            })
        };
        let r = w.rescale(&map, 1).unwrap();
        let expect = parse_word("exp(2z*P+)*P-", &["P+", "P-"]).unwrap().scale(&EpsilonScalar::eps_pow(-1));
        assert_eq!(r, expect);
    }
}
