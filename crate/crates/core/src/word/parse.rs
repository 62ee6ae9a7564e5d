//! Recursive-descent parser for word expressions.

use num_bigint::BigInt;

use super::{Factor, Word};
use crate::error::{Error, Result};
use crate::scalar::{EpsilonScalar, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Gen(String),
    Sym(char),
}

fn tokenize(s: &str, gens: &[&str]) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = chars[start..i].iter().collect();
            out.push(Tok::Num(txt.parse().expect("digits")));
            continue;
        }
        if ch.is_alphabetic() {
            let rest: String = chars[i..].iter().collect();
            if let Some(g) = gens
                .iter()
                .filter(|g| rest.starts_with(**g))
                .max_by_key(|g| g.len())
            {
                out.push(Tok::Gen(g.to_string()));
                i += g.chars().count();
                continue;
            }
            if let Some(kw) = ["exp", "sqrt", "eps", "z"].iter().find(|k| rest.starts_with(**k)) {
                out.push(Tok::Ident(kw.to_string()));
                i += kw.len();
                continue;
            }
            return Err(Error::Parse(format!("unknown symbol at {rest:?}")));
        }
        if "+-*/^()[],".contains(ch) {
            out.push(Tok::Sym(ch));
            i += 1;
            continue;
        }
        return Err(Error::Parse(format!("unexpected character {ch:?} in {s:?}")));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in {:?}", self.pos, self.src))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {c:?}")))
        }
    }

    fn expr(&mut self) -> Result<Word> {
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_) | Tok::Ident(_) | Tok::Gen(_) | Tok::Sym('(' | '['))
        )
    }

    fn term(&mut self) -> Result<Word> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                let d = self.power()?;
                acc = acc.scale(&invert(&d).ok_or_else(|| self.err("division by a non-monomial"))?);
            } else if self.starts_primary() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Word> {
        if self.eat('-') {
            return Ok(self.power()?.neg());
        }
        let base = self.primary()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let k: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    if neg {
                        let inv = invert(&base).ok_or_else(|| self.err("negative power of a non-monomial"))?;
                        return Ok(Word::scalar(inv.pow(k)));
                    }
                    return Ok(base.pow(k));
                }
                _ => return Err(self.err("expected an integer exponent")),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Word> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Word::scalar(EpsilonScalar::from_rational(Rational::from_integer(n))))
            }
            Some(Tok::Gen(g)) => {
                self.pos += 1;
                Ok(Word::gen(&g))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                match id.as_str() {
                    "z" => Ok(Word::scalar(EpsilonScalar::from_scalar(Scalar::z()))),
                    "eps" => Ok(Word::scalar(EpsilonScalar::eps_pow(1))),
                    "exp" => {
                        self.expect('(')?;
                        let arg = self.expr()?;
                        self.expect(')')?;
                        exp_of(&arg).ok_or_else(|| self.err("exp needs a scalar multiple of one generator"))
                    }
                    "sqrt" => {
                        self.expect('(')?;
                        let n = match self.peek().cloned() {
                            Some(Tok::Num(n)) => n,
                            _ => return Err(self.err("sqrt needs an integer")),
                        };
                        self.pos += 1;
                        self.expect(')')?;
                        Ok(Word::scalar(EpsilonScalar::from_scalar(Scalar::sqrt_big(&n))))
                    }
                    _ => unreachable!("tokenizer emits keywords only"),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('[')) => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok(a.commutator(&b))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

/// Inverse of a word that is `c eps^e z^k` with `c` rational.
fn invert(w: &Word) -> Option<EpsilonScalar> {
    let s = w.as_scalar()?;
    let mut it = s.terms();
    let (e, v) = it.next()?;
    if it.next().is_some() {
        return None;
    }
    let p = v.as_zpoly()?;
    let mut pt = p.terms();
    let (k, c) = pt.next()?;
    if pt.next().is_some() {
        return None;
    }
    Some(EpsilonScalar::eps_monomial(Scalar::monomial(c.recip(), -k), -e))
}

fn exp_of(arg: &Word) -> Option<Word> {
    if arg.is_zero() {
        return Some(Word::one());
    }
    let mut it = arg.terms();
    let (seq, c) = it.next()?;
    if it.next().is_some() || seq.len() != 1 {
        return None;
    }
    let Factor::Gen(g) = &seq[0] else {
        return None;
    };
    Some(Word::exp(c.as_scalar()?, g))
}

/// Parses `s` with the given generator names.
pub fn parse_word(s: &str, gens: &[&str]) -> Result<Word> {
    let toks = tokenize(s, gens)?;
    let mut p = Parser { toks, pos: 0, src: s };
    let w = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(w)
}
