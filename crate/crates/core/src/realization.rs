//! Boson realizations of the classical and deformed algebras.
//!
//! Every realization is a function of the free parameters; parameters are
//! `EpsilonScalar`s so that a contraction can feed in `eps`-rescaled values.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::boson::BosonExpr;
use crate::error::{Error, Result};
use crate::scalar::{rat, EpsilonScalar, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RealizationId {
    /// One-boson GD map of sl(2,R).
    Gd,
    /// One-boson realization of `U_z sl(2,R)`.
    GdQuantum,
    /// Two-boson realization of sl(2,R).
    TwoBoson,
    /// Two-boson realization of `U_z sl(2,R)`.
    TwoBosonQuantum,
    /// Two-boson realization of P(1+1).
    Poincare,
    /// Two-boson realization of the deformed Poincaré algebra.
    PoincareQuantum,
    /// One-boson realization of the extended sl(2,R).
    Extended,
    /// One-boson realization of the extended `U_z sl(2,R)`.
    ExtendedQuantum,
    /// One-boson realization of h4.
    H4,
    /// One-boson realization of `U_z h4`.
    H4Quantum,
    QuadraticSl2,
    QuadraticPoincare,
    QuadraticH4,
}

pub const ALL_REALIZATIONS: [RealizationId; 13] = [
    RealizationId::Gd,
    RealizationId::GdQuantum,
    RealizationId::TwoBoson,
    RealizationId::TwoBosonQuantum,
    RealizationId::Poincare,
    RealizationId::PoincareQuantum,
    RealizationId::Extended,
    RealizationId::ExtendedQuantum,
    RealizationId::H4,
    RealizationId::H4Quantum,
    RealizationId::QuadraticSl2,
    RealizationId::QuadraticPoincare,
    RealizationId::QuadraticH4,
];

impl RealizationId {
    pub fn name(self) -> &'static str {
        match self {
            RealizationId::Gd => "gd",
            RealizationId::GdQuantum => "gd-quantum",
            RealizationId::TwoBoson => "two-boson",
            RealizationId::TwoBosonQuantum => "two-boson-quantum",
            RealizationId::Poincare => "poincare",
            RealizationId::PoincareQuantum => "poincare-quantum",
            RealizationId::Extended => "extended",
            RealizationId::ExtendedQuantum => "extended-quantum",
            RealizationId::H4 => "h4",
            RealizationId::H4Quantum => "h4-quantum",
            RealizationId::QuadraticSl2 => "quadratic-sl2",
            RealizationId::QuadraticPoincare => "quadratic-poincare",
            RealizationId::QuadraticH4 => "quadratic-h4",
        }
    }

    /// Presentation the realization satisfies.
    pub fn algebra(self) -> &'static str {
        match self {
            RealizationId::Gd | RealizationId::TwoBoson => "sl2",
            RealizationId::GdQuantum | RealizationId::TwoBosonQuantum => "uzsl2",
            RealizationId::Poincare => "poincare",
            RealizationId::PoincareQuantum => "uzpoincare",
            RealizationId::Extended => "sl2ext",
            RealizationId::ExtendedQuantum => "uzsl2ext",
            RealizationId::H4 => "h4",
            RealizationId::H4Quantum => "uzh4",
            RealizationId::QuadraticSl2 => "uzsl2-quadratic",
            RealizationId::QuadraticPoincare => "uzpoincare-quadratic",
            RealizationId::QuadraticH4 => "uzh4-quadratic",
        }
    }

    pub fn modes(self) -> usize {
        match self {
            RealizationId::TwoBoson
            | RealizationId::TwoBosonQuantum
            | RealizationId::Poincare
            | RealizationId::PoincareQuantum
            | RealizationId::QuadraticPoincare => 2,
            _ => 1,
        }
    }

    /// Parameter names the builder reads.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            RealizationId::Gd | RealizationId::GdQuantum | RealizationId::QuadraticSl2 => &["beta"],
            RealizationId::TwoBoson
            | RealizationId::TwoBosonQuantum
            | RealizationId::Poincare
            | RealizationId::PoincareQuantum
            | RealizationId::QuadraticPoincare => &["alpha"],
            _ => &["beta", "delta"],
        }
    }

    /// The default realization used to build representations of `algebra`.
    pub fn for_algebra(algebra: &str) -> Result<Self> {
        Ok(match algebra {
            "sl2" => RealizationId::Gd,
            "uzsl2" => RealizationId::GdQuantum,
            "poincare" => RealizationId::Poincare,
            "uzpoincare" => RealizationId::PoincareQuantum,
            "sl2ext" => RealizationId::Extended,
            "uzsl2ext" => RealizationId::ExtendedQuantum,
            "h4" => RealizationId::H4,
            "uzh4" => RealizationId::H4Quantum,
            "uzsl2-quadratic" => RealizationId::QuadraticSl2,
            "uzpoincare-quadratic" => RealizationId::QuadraticPoincare,
            "uzh4-quadratic" => RealizationId::QuadraticH4,
            other => return Err(Error::UnknownAlgebra(other.into())),
        })
    }

    pub fn build(self, p: &Params) -> Result<Realization> {
        let gens = match self {
            RealizationId::Gd => gd(p.get("beta")?),
            RealizationId::GdQuantum => gd_quantum(p.get("beta")?),
            RealizationId::TwoBoson => two_boson(p.get("alpha")?),
            RealizationId::TwoBosonQuantum => two_boson_quantum(p.get("alpha")?),
            RealizationId::Poincare => poincare(p.get("alpha")?),
            RealizationId::PoincareQuantum => poincare_quantum(p.get("alpha")?),
            RealizationId::Extended => extended(p.get("beta")?, p.get("delta")?),
            RealizationId::ExtendedQuantum => extended_quantum(p.get("beta")?, p.get("delta")?),
            RealizationId::H4 => h4(p.get("beta")?, p.get("delta")?),
            RealizationId::H4Quantum => h4_quantum(p.get("beta")?, p.get("delta")?),
            RealizationId::QuadraticSl2 => quadratic_sl2(p.get("beta")?),
            RealizationId::QuadraticPoincare => quadratic_poincare(p.get("alpha")?),
            RealizationId::QuadraticH4 => quadratic_h4(p.get("beta")?, p.get("delta")?),
        };
        Ok(Realization {
            id: Some(self),
            algebra: self.algebra().into(),
            modes: self.modes(),
            generators: gens.into_iter().map(|(n, e)| (n.to_string(), e)).collect(),
        })
    }
}

impl fmt::Display for RealizationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RealizationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_REALIZATIONS
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown realization {s:?}")))
    }
}

/// Parameter values `beta`, `delta`, `alpha`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Params {
    pub beta: Option<EpsilonScalar>,
    pub delta: Option<EpsilonScalar>,
    pub alpha: Option<EpsilonScalar>,
}

impl Params {
    pub fn rational(beta: Option<Rational>, delta: Option<Rational>, alpha: Option<Rational>) -> Self {
        Params {
            beta: beta.map(EpsilonScalar::from_rational),
            delta: delta.map(EpsilonScalar::from_rational),
            alpha: alpha.map(EpsilonScalar::from_rational),
        }
    }

    pub fn get(&self, name: &str) -> Result<&EpsilonScalar> {
        let v = match name {
            "beta" => &self.beta,
            "delta" => &self.delta,
            "alpha" => &self.alpha,
            _ => return Err(Error::Parse(format!("unknown parameter {name:?}"))),
        };
        v.as_ref()
            .ok_or_else(|| Error::Parse(format!("parameter {name} is required")))
    }
}

/// Generator images in declaration order.
#[derive(Clone, Debug, PartialEq)]
pub struct Realization {
    pub id: Option<RealizationId>,
    pub algebra: String,
    pub modes: usize,
    pub generators: Vec<(String, BosonExpr)>,
}

impl Realization {
    pub fn get(&self, name: &str) -> Result<&BosonExpr> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| e)
            .ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.generators.iter().map(|(n, _)| n.as_str()).collect()
    }

    /// Largest lowering band per mode over all generators.
    pub fn lowering_band(&self) -> (usize, usize) {
        self.generators.iter().fold((0, 0), |(a, b), (_, e)| {
            let (x, y) = e.lowering_band();
            (a.max(x), b.max(y))
        })
    }

    /// `z -> 0` image of every generator.
    pub fn classical_limit(&self) -> Result<Realization> {
        let generators = self
            .generators
            .iter()
            .map(|(n, e)| Ok((n.clone(), e.classical_limit()?)))
            .collect::<Result<_>>()?;
        Ok(Realization {
            id: None,
            generators,
            ..self.clone()
        })
    }
}

type Gens = Vec<(&'static str, BosonExpr)>;

fn c(v: &EpsilonScalar) -> BosonExpr {
    BosonExpr::scalar(v.clone())
}

fn q(n: i64, d: i64) -> BosonExpr {
    BosonExpr::scalar(EpsilonScalar::from_rational(rat(n, d)))
}

fn zq(n: i64, d: i64, k: i32) -> BosonExpr {
    BosonExpr::scalar(EpsilonScalar::from_scalar(Scalar::monomial(rat(n, d), k)))
}

fn ap() -> BosonExpr {
    BosonExpr::a_plus()
}

fn am() -> BosonExpr {
    BosonExpr::a_minus()
}

fn bp() -> BosonExpr {
    BosonExpr::b_plus()
}

fn bm() -> BosonExpr {
    BosonExpr::b_minus()
}

fn e(k: i32) -> BosonExpr {
    BosonExpr::exp_a(k)
}

/// `(e^{2z a+} - 1)/(2z)`.
fn dz() -> BosonExpr {
    BosonExpr::exp_a_minus_one_over_2z(1)
}

fn prod(fs: &[&BosonExpr]) -> BosonExpr {
    fs.iter().fold(BosonExpr::one(), |acc, f| acc.mul(f))
}

pub fn gd(beta: &EpsilonScalar) -> Gens {
    let j3 = prod(&[&q(2, 1), &ap(), &am()]).add(&c(beta));
    let jm = prod(&[&ap(), &am(), &am()]).neg().sub(&c(beta).mul(&am()));
    vec![("J+", ap()), ("J3", j3), ("J-", jm)]
}

fn gd_quantum_j3(beta: &EpsilonScalar) -> BosonExpr {
    let ep1_half = e(1).add(&BosonExpr::one()).mul(&q(1, 2));
    prod(&[&q(2, 1), &dz(), &am()]).add(&c(beta).mul(&ep1_half))
}

fn gd_quantum_jm(beta: &EpsilonScalar) -> BosonExpr {
    let ep1_half = e(1).add(&BosonExpr::one()).mul(&q(1, 2));
    let t1 = prod(&[&dz(), &am(), &am()]).neg();
    let t2 = prod(&[&c(beta), &ep1_half, &am()]).neg();
    // z beta^2 (e - 1)/8 = z^2 beta^2 dz / 4
    let t3 = prod(&[&zq(1, 4, 2), &c(&beta.mul(beta)), &dz()]).neg();
    t1.add(&t2).add(&t3)
}

pub fn gd_quantum(beta: &EpsilonScalar) -> Gens {
    vec![("J+", ap()), ("J3", gd_quantum_j3(beta)), ("J-", gd_quantum_jm(beta))]
}

fn n_b() -> BosonExpr {
    bp().mul(&bm())
}

pub fn two_boson(alpha: &EpsilonScalar) -> Gens {
    let j3 = prod(&[&q(2, 1), &ap(), &am()]).sub(&n_b().mul(&q(2, 1)));
    let jm = prod(&[&ap(), &am(), &am()])
        .neg()
        .add(&prod(&[&q(2, 1), &n_b(), &am()]))
        .add(&c(alpha).mul(&bp()));
    vec![("J+", ap()), ("J3", j3), ("J-", jm)]
}

pub fn two_boson_quantum(alpha: &EpsilonScalar) -> Gens {
    let j3 = prod(&[&q(2, 1), &dz(), &am()]).sub(&n_b().mul(&q(2, 1)));
    let quartic = prod(&[&bp(), &bp(), &bm(), &bm()]);
    let jm = prod(&[&dz(), &am(), &am()])
        .neg()
        .add(&prod(&[&q(2, 1), &n_b(), &am()]))
        .add(&c(alpha).mul(&bp()))
        .add(&zq(2, 1, 1).mul(&n_b().add(&quartic)));
    vec![("J+", ap()), ("J3", j3), ("J-", jm)]
}

pub fn poincare(alpha: &EpsilonScalar) -> Gens {
    let k = ap().mul(&am()).sub(&n_b());
    vec![("P+", ap()), ("K", k), ("P-", c(alpha).mul(&bp()))]
}

pub fn poincare_quantum(alpha: &EpsilonScalar) -> Gens {
    let k = dz().mul(&am()).sub(&n_b());
    vec![("P+", ap()), ("K", k), ("P-", c(alpha).mul(&bp()))]
}

pub fn extended(beta: &EpsilonScalar, delta: &EpsilonScalar) -> Gens {
    let j3 = prod(&[&q(2, 1), &ap(), &am()]).add(&c(beta));
    let jm = prod(&[&ap(), &am(), &am()])
        .neg()
        .sub(&c(beta).mul(&am()))
        .add(&c(delta).mul(&am()));
    vec![("J+", ap()), ("J3", j3), ("J-", jm), ("I", c(delta))]
}

pub fn extended_quantum(beta: &EpsilonScalar, delta: &EpsilonScalar) -> Gens {
    let extra = prod(&[&c(delta), &e(1), &am()]).add(&prod(&[&zq(1, 2, 1), &c(beta), &c(delta), &e(1)]));
    vec![
        ("J+", ap()),
        ("J3", gd_quantum_j3(beta)),
        ("J-", gd_quantum_jm(beta).add(&extra)),
        ("I", c(delta)),
    ]
}

pub fn h4(beta: &EpsilonScalar, delta: &EpsilonScalar) -> Gens {
    vec![
        ("A+", ap()),
        ("N", ap().mul(&am()).add(&c(beta))),
        ("A-", c(delta).mul(&am())),
        ("M", c(delta)),
    ]
}

pub fn h4_quantum(beta: &EpsilonScalar, delta: &EpsilonScalar) -> Gens {
    let ep1_half = e(1).add(&BosonExpr::one()).mul(&q(1, 2));
    let n = dz().mul(&am()).add(&c(beta).mul(&ep1_half));
    let a_minus = prod(&[&c(delta), &e(1), &am()]).add(&prod(&[&c(delta), &c(beta), &zq(1, 1, 1), &e(1)]));
    vec![("A+", ap()), ("N", n), ("A-", a_minus), ("M", c(delta))]
}

/// `(a+bar, a-bar)` with `a-bar = a- + mu z`.
fn deformed(mu: &EpsilonScalar) -> (BosonExpr, BosonExpr) {
    (dz(), am().add(&zq(1, 1, 1).mul(&c(mu))))
}

pub fn quadratic_sl2(beta: &EpsilonScalar) -> Gens {
    let (p, m) = deformed(&beta.scale(&rat(1, 2)));
    let j3 = prod(&[&q(2, 1), &p, &m]).add(&c(beta));
    let jm = prod(&[&p, &m, &m])
        .neg()
        .sub(&c(beta).mul(&m))
        .add(&prod(&[&zq(1, 2, 1), &c(&beta.mul(beta))]));
    vec![("J+", p), ("J3", j3), ("J-", jm)]
}

pub fn quadratic_poincare(alpha: &EpsilonScalar) -> Gens {
    let (p, m) = deformed(&EpsilonScalar::zero());
    let k = p.mul(&m).sub(&n_b());
    vec![("P+", p), ("K", k), ("P-", c(alpha).mul(&bp()))]
}

pub fn quadratic_h4(beta: &EpsilonScalar, delta: &EpsilonScalar) -> Gens {
    let (p, m) = deformed(beta);
    let n = p.mul(&m).add(&c(beta));
    vec![("A+", p), ("N", n), ("A-", c(delta).mul(&m)), ("M", c(delta))]
}
