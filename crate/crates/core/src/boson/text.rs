//! Text form of boson expressions.
//!
//! ```text
//! expr    := "0" | term (" + " term)*
//! term    := "(" coeff ")" ("*" factor)*
//! factor  := "E[" slope "z,a+]" | ("a+" | "a-" | "b+" | "b-") "^" n
//! coeff   := scalar | eps-term (" + " eps-term)*
//! eps-term:= "(" scalar ")" [" * eps^" k]
//! scalar  := "p/q" [" * sqrt(n)"] [" * z^k"] joined by " + "
//! ```
//!
//! `slope` is `2k` for `e^{2kz a+}`; factors appear in the order
//! exponential, `a+`, `a-`, `b+`, `b-`. Example:
//! `(-1/4 * z^2)*E[2z,a+]*a-^1`.

use std::fmt;
use std::str::FromStr;

use super::{BosonExpr, Monomial};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, EpsilonScalar, Scalar};

pub(crate) fn format_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    if m.k != 0 {
        parts.push(format!("E[{}z,a+]", 2 * m.k));
    }
    for (name, p) in [("a+", m.pa), ("a-", m.qa), ("b+", m.pb), ("b-", m.qb)] {
        if p > 0 {
            parts.push(format!("{name}^{p}"));
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for BosonExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| {
                if *m == Monomial::ONE {
                    format!("({c})")
                } else {
                    format!("({c})*{}", format_monomial(m))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Splits on `sep` outside parentheses and brackets.
fn split_top(s: &str, sep: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && s[i..].starts_with(sep) {
            out.push(s[start..i].to_string());
            i += sep.len();
            start = i;
            continue;
        }
        i += 1;
    }
    out.push(s[start..].to_string());
    out
}

/// Index of the parenthesis closing the one at `open`.
fn matching_paren(s: &str, open: usize) -> Option<usize> {
    let mut depth = 0;
    for (i, ch) in s.char_indices().skip(open) {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

impl FromStr for EpsilonScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = EpsilonScalar::zero();
        for piece in split_top(s.trim(), " + ") {
            let p = piece.trim();
            if let Some(rest) = p.strip_prefix('(') {
                let close = matching_paren(p, 0).ok_or_else(|| Error::Parse(format!("unbalanced {p:?}")))?;
                let inner: Scalar = rest[..close - 1].parse()?;
                let tail = p[close + 1..].trim();
                let k = if tail.is_empty() {
                    0
                } else {
                    tail.strip_prefix("* eps^")
                        .and_then(|e| e.trim().parse::<i32>().ok())
                        .ok_or_else(|| Error::Parse(format!("bad eps factor {tail:?}")))?
                };
                out = out.add(&EpsilonScalar::eps_monomial(inner, k));
            } else {
                out = out.add(&EpsilonScalar::from_scalar(p.parse()?));
            }
        }
        Ok(out)
    }
}

impl FromStr for BosonExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "0" {
            return Ok(BosonExpr::zero());
        }
        let mut out = BosonExpr::zero();
        for term in split_top(t, " + ") {
            let term = term.trim();
            let (coeff, rest) = if term.starts_with('(') {
                let close = matching_paren(term, 0).ok_or_else(|| Error::Parse(format!("unbalanced {term:?}")))?;
                (term[1..close].parse::<EpsilonScalar>()?, &term[close + 1..])
            } else {
                (EpsilonScalar::one(), term)
            };
            let mut m = Monomial::ONE;
            for factor in split_top(rest, "*").into_iter().map(|f| f.trim().to_string()).filter(|f| !f.is_empty()) {
                if factor == "1" {
                    continue;
                }
                if let Some(inner) = factor.strip_prefix("E[").and_then(|x| x.strip_suffix("z,a+]")) {
                    let slope = parse_rational(inner)?;
                    let k: i32 = (slope / crate::scalar::int(2))
                        .to_integer()
                        .try_into()
                        .map_err(|_| Error::Parse(format!("bad slope {inner:?}")))?;
                    m.k += k;
                    continue;
                }
                let (name, pow) = match factor.split_once('^') {
                    Some((n, p)) => (n, p.parse::<u32>().map_err(|_| Error::Parse(format!("bad power {factor:?}")))?),
                    None => (factor.as_str(), 1),
                };
                match name {
                    "a+" => m.pa += pow,
                    "a-" => m.qa += pow,
                    "b+" => m.pb += pow,
                    "b-" => m.qb += pow,
                    _ => return Err(Error::Parse(format!("unknown factor {factor:?}"))),
                }
            }
            out = out.add(&BosonExpr::term(coeff, m));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Scalar};

    #[test]
    fn round_trip() {
        let e = BosonExpr::exp_a(1)
            .mul(&BosonExpr::a_minus())
            .scale(&EpsilonScalar::from_scalar(Scalar::monomial(rat(-1, 4), 2)))
            .add(&BosonExpr::b_plus().mul(&BosonExpr::b_minus()).scale(&EpsilonScalar::eps_pow(-1)))
            .add(&BosonExpr::scalar(EpsilonScalar::from_int(3)));
        let txt = e.to_string();
        let back: BosonExpr = txt.parse().unwrap();
        assert_eq!(back, e);
        assert!(txt.contains("(-1/4 * z^2)*E[2z,a+]*a-^1"));
    }

    #[test]
    fn eps_scalar_round_trip() {
        let e = EpsilonScalar::eps_monomial(Scalar::sqrt_int(2), -2).add(&EpsilonScalar::from_int(5));
        assert_eq!(e.to_string().parse::<EpsilonScalar>().unwrap(), e);
        assert_eq!("7/1".parse::<EpsilonScalar>().unwrap(), EpsilonScalar::from_rational(int(7)));
    }
}
