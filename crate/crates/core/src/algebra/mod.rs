//! Catalog of algebra presentations and the relation verifier.
//!
//! Presentations are data (`data/algebras.json`): generator names, relation
//! residuals, a Casimir word and, for the Hopf algebras, coproduct, counit,
//! antipode and the factorized R-matrix. Every word uses the syntax of
//! [`crate::word`].

mod targets;
mod verify;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

pub use targets::{BosonTarget, CounitTarget, MatrixTarget};
pub use verify::{
    casimir_expression, casimir_value, check_realization, check_relations, quadratic_basis, quadratic_basis_rep, CasimirValue,
    QuadraticVariant, RelationCheck, RelationReport, Witness,
};

use crate::error::{Error, Result};
use crate::hopf::{HopfData, RFactor, RSpec};
use crate::scalar::Scalar;
use crate::word::{parse_word, Factor, TensorWord, Word};

#[derive(Clone, Debug)]
pub struct Relation {
    pub label: String,
    pub residual: Word,
}

/// Change of basis into a quadratic presentation.
#[derive(Clone, Debug)]
pub struct QuadraticOf {
    pub source: String,
    /// Shift of the deformed lowering operator, as printed (`beta/2`, `0`, `beta`).
    pub mu: String,
    pub basis: Vec<(String, Word)>,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub id: String,
    pub label: String,
    pub generators: Vec<String>,
    /// Generators allowed under `exp`.
    pub exp_capable: Vec<String>,
    pub central: Vec<String>,
    /// Pairs of generators that commute.
    pub commuting: Vec<(String, String)>,
    pub relations: Vec<Relation>,
    pub casimir: Option<Word>,
    pub r_matrix_tag: Option<String>,
    pub hopf: Option<HopfData>,
    pub r_matrix: Option<RSpec>,
    pub quadratic_of: Option<QuadraticOf>,
}

#[derive(Deserialize)]
struct RawCatalog {
    algebras: Vec<RawPresentation>,
}

#[derive(Deserialize)]
struct RawRelation {
    label: String,
    residual: String,
}

#[derive(Deserialize)]
struct RawHopf {
    coproduct: BTreeMap<String, Vec<(String, String)>>,
    counit: BTreeMap<String, String>,
    antipode: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct RawFactor {
    coeff: String,
    left: String,
    right: String,
}

#[derive(Deserialize)]
struct RawQuadratic {
    source: String,
    mu: String,
    basis: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct RawPresentation {
    id: String,
    label: String,
    generators: Vec<String>,
    exp_capable: Vec<String>,
    #[serde(default)]
    central: Vec<String>,
    #[serde(default)]
    commuting: Vec<(String, String)>,
    relations: Vec<RawRelation>,
    casimir: Option<String>,
    r_matrix_tag: Option<String>,
    hopf: Option<RawHopf>,
    r_matrix: Option<Vec<RawFactor>>,
    quadratic_of: Option<RawQuadratic>,
}

const CATALOG: &str = include_str!("../../data/algebras.json");

fn scalar_word(s: &str) -> Result<Scalar> {
    parse_word(s, &[])?
        .as_scalar()
        .and_then(|c| c.as_scalar())
        .ok_or_else(|| Error::Parse(format!("{s:?} is not a scalar")))
}

fn in_order<T>(gens: &[String], map: BTreeMap<String, T>, what: &str) -> Result<Vec<(String, T)>> {
    let mut map = map;
    let out = gens
        .iter()
        .map(|g| {
            map.remove(g)
                .map(|v| (g.clone(), v))
                .ok_or_else(|| Error::Parse(format!("{what} missing for {g}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(k) = map.keys().next() {
        return Err(Error::UnknownGenerator(format!("{k} in {what}")));
    }
    Ok(out)
}

impl Presentation {
    fn from_raw(raw: RawPresentation) -> Result<Self> {
        let gens: Vec<&str> = raw.generators.iter().map(String::as_str).collect();
        let parse = |s: &str| parse_word(s, &gens);
        let relations = raw
            .relations
            .iter()
            .map(|r| {
                Ok(Relation {
                    label: r.label.clone(),
                    residual: parse(&r.residual)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let casimir = raw.casimir.as_deref().map(parse).transpose()?;
        let hopf = match raw.hopf {
            None => None,
            Some(h) => {
                let coproduct = h
                    .coproduct
                    .into_iter()
                    .map(|(g, pairs)| {
                        let terms = pairs
                            .iter()
                            .map(|(l, r)| Ok((parse(l)?, parse(r)?)))
                            .collect::<Result<Vec<_>>>()?;
                        Ok((g, TensorWord { terms }))
                    })
                    .collect::<Result<BTreeMap<_, _>>>()?;
                let counit = h
                    .counit
                    .into_iter()
                    .map(|(g, v)| Ok((g, scalar_word(&v)?)))
                    .collect::<Result<BTreeMap<_, _>>>()?;
                let antipode = h
                    .antipode
                    .into_iter()
                    .map(|(g, v)| Ok((g, parse(&v)?)))
                    .collect::<Result<BTreeMap<_, _>>>()?;
                Some(HopfData {
                    algebra: raw.id.clone(),
                    coproduct: in_order(&raw.generators, coproduct, "coproduct")?,
                    counit: in_order(&raw.generators, counit, "counit")?,
                    antipode: in_order(&raw.generators, antipode, "antipode")?,
                })
            }
        };
        let r_matrix = raw
            .r_matrix
            .map(|fs| {
                let factors = fs
                    .iter()
                    .map(|f| {
                        Ok(RFactor {
                            coeff: scalar_word(&f.coeff)?,
                            left: f.left.clone(),
                            right: f.right.clone(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok::<_, Error>(RSpec {
                    algebra: raw.id.clone(),
                    factors,
                })
            })
            .transpose()?;
        let quadratic_of = raw
            .quadratic_of
            .map(|q| {
                let basis = q
                    .basis
                    .into_iter()
                    .map(|(g, w)| Ok((g, parse(&w)?)))
                    .collect::<Result<BTreeMap<_, _>>>()?;
                Ok::<_, Error>(QuadraticOf {
                    source: q.source,
                    mu: q.mu,
                    basis: in_order(&raw.generators, basis, "quadratic basis")?,
                })
            })
            .transpose()?;
        let p = Presentation {
            id: raw.id,
            label: raw.label,
            generators: raw.generators,
            exp_capable: raw.exp_capable,
            central: raw.central,
            commuting: raw.commuting,
            relations,
            casimir,
            r_matrix_tag: raw.r_matrix_tag,
            hopf,
            r_matrix,
            quadratic_of,
        };
        p.validate()?;
        Ok(p)
    }

    /// Every word mentions declared generators only, and `exp` only of
    /// exp-capable ones.
    fn validate(&self) -> Result<()> {
        let mut words: Vec<&Word> = self.relations.iter().map(|r| &r.residual).collect();
        words.extend(self.casimir.iter());
        if let Some(h) = &self.hopf {
            for (_, t) in &h.coproduct {
                for (l, r) in &t.terms {
                    words.push(l);
                    words.push(r);
                }
            }
            words.extend(h.antipode.iter().map(|(_, w)| w));
        }
        for w in words {
            for g in w.generators() {
                if !self.generators.contains(&g) {
                    return Err(Error::UnknownGenerator(format!("{g} in {}", self.id)));
                }
            }
            for g in w.exp_generators() {
                if !self.exp_capable.contains(&g) {
                    return Err(Error::Parse(format!("exp of {g} is not allowed in {}", self.id)));
                }
            }
        }
        if let Some(r) = &self.r_matrix {
            for f in &r.factors {
                for g in [&f.left, &f.right] {
                    if !self.generators.contains(g) {
                        return Err(Error::UnknownGenerator(format!("{g} in the R-matrix of {}", self.id)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn gen_refs(&self) -> Vec<&str> {
        self.generators.iter().map(String::as_str).collect()
    }

    /// Parses a word over this presentation's generators.
    pub fn parse(&self, s: &str) -> Result<Word> {
        parse_word(s, &self.gen_refs())
    }

    pub fn hopf(&self) -> Result<&HopfData> {
        self.hopf
            .as_ref()
            .ok_or_else(|| Error::Unsupported(format!("{} carries no Hopf structure", self.id)))
    }

    pub fn r_spec(&self) -> Result<&RSpec> {
        self.r_matrix
            .as_ref()
            .ok_or_else(|| Error::Unsupported(format!("{} has no R-matrix", self.id)))
    }

    fn commutes(&self, a: &Factor, b: &Factor) -> bool {
        let (x, y) = (a.generator(), b.generator());
        if x == y {
            return true;
        }
        self.central.iter().any(|c| c == x || c == y)
            || self
                .commuting
                .iter()
                .any(|(p, q)| (p == x && q == y) || (p == y && q == x))
    }

    /// Normal form of a word modulo the commutations this presentation
    /// declares (central generators, commuting pairs): each monomial becomes
    /// its lexicographically least rearrangement.
    pub fn commutation_normal_form(&self, w: &Word) -> Word {
        let mut out = Word::zero();
        for (seq, c) in w.terms() {
            let mut cur = seq.clone();
            loop {
                let next = self.least_rearrangement(&cur);
                let merged: Vec<Factor> = Word::term(c.clone(), next.clone())
                    .terms()
                    .next()
                    .map(|(s, _)| s.clone())
                    .unwrap_or_default();
                if merged == cur {
                    break;
                }
                cur = merged;
                if cur.is_empty() {
                    break;
                }
            }
            out = out.add(&Word::term(c.clone(), cur));
        }
        out
    }

    fn least_rearrangement(&self, seq: &[Factor]) -> Vec<Factor> {
        let mut rest: Vec<Factor> = seq.to_vec();
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let pick = (0..rest.len())
                .filter(|&i| rest[..i].iter().all(|f| self.commutes(f, &rest[i])))
                .min_by(|&i, &j| rest[i].cmp(&rest[j]))
                .expect("the first factor is always movable");
            out.push(rest.remove(pick));
        }
        out
    }

    /// Equality of words modulo the declared commutations.
    pub fn words_equal(&self, a: &Word, b: &Word) -> bool {
        self.commutation_normal_form(&a.sub(b)).is_zero()
    }
}

/// All shipped presentations.
pub fn catalog() -> &'static [Presentation] {
    static CAT: OnceLock<Vec<Presentation>> = OnceLock::new();
    CAT.get_or_init(|| {
        let raw: RawCatalog = serde_json::from_str(CATALOG).expect("algebra catalog is valid JSON");
        raw.algebras
            .into_iter()
            .map(|r| {
                let id = r.id.clone();
                Presentation::from_raw(r).unwrap_or_else(|e| panic!("catalog entry {id}: {e}"))
            })
            .collect()
    })
}

pub fn presentation(id: &str) -> Result<&'static Presentation> {
    catalog()
        .iter()
        .find(|p| p.id == id)
        .ok_or_else(|| Error::UnknownAlgebra(id.into()))
}

/// Ids of every shipped presentation.
pub fn algebra_ids() -> Vec<&'static str> {
    catalog().iter().map(|p| p.id.as_str()).collect()
}
