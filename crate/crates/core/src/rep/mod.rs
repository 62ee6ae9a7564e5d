//! Representations: named generator matrices over `Scalar` plus metadata.

mod fock;
mod latex;
mod monomial;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

pub use fock::fock_matrix;
pub use latex::{matrix_latex, scalar_latex};
pub use monomial::monomial_matrix;

use crate::boson::BosonExpr;
use crate::error::{Error, Result};
use crate::matrix::{CertMatrix, Leg, Matrix};
use crate::realization::{Params, Realization, RealizationId};
use crate::scalar::{format_rational, int, rat, Rational, Scalar};

pub const DEFAULT_MARGIN: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    FockLower,
    FockQuotient,
    MonomialUpper,
    /// Coproduct representation on a tensor product.
    Tensor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisSpec {
    pub kind: BasisKind,
    pub modes: usize,
    pub cutoff: usize,
    pub margin: usize,
}

/// Parameter values attached to a representation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RepParams {
    pub beta: Option<Rational>,
    pub delta: Option<Rational>,
    pub alpha: Option<Rational>,
}

impl RepParams {
    pub fn beta(b: Rational) -> Self {
        RepParams {
            beta: Some(b),
            ..Default::default()
        }
    }

    pub fn to_params(&self) -> Params {
        Params::rational(self.beta.clone(), self.delta.clone(), self.alpha.clone())
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in [("beta", &self.beta), ("delta", &self.delta), ("alpha", &self.alpha)] {
            if let Some(v) = v {
                m.insert(k.into(), Value::String(format_rational(v)));
            }
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    pub algebra: String,
    pub params: RepParams,
    pub basis: BasisSpec,
    /// Generator matrices in declaration order.
    pub generators: Vec<(String, CertMatrix<Scalar>)>,
    pub j_z: Option<Rational>,
    /// Sign normalization applied to a printed template, if any.
    pub normalization: Option<Vec<String>>,
}

impl Representation {
    pub fn generator(&self, name: &str) -> Result<&CertMatrix<Scalar>> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.generators.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn legs(&self) -> Vec<Leg> {
        self.generators
            .first()
            .map(|(_, m)| m.legs.iter().map(|l| Leg { exact: l.dim, band: 0, ..*l }).collect())
            .unwrap_or_default()
    }

    /// Internal dimension, including the margin.
    pub fn dim(&self) -> usize {
        self.legs().iter().map(|l| l.dim).product()
    }

    /// Per-leg extent of the block whose entries are reported.
    pub fn block_cutoffs(&self) -> Vec<usize> {
        self.legs()
            .iter()
            .map(|l| if l.truncated { self.basis.cutoff.min(l.dim) } else { l.dim })
            .collect()
    }

    pub fn block_dim(&self) -> usize {
        self.block_cutoffs().iter().product()
    }

    pub fn is_finite(&self) -> bool {
        self.legs().iter().all(|l| !l.truncated)
    }

    /// Certified block of one generator.
    pub fn block(&self, name: &str) -> Result<Matrix<Scalar>> {
        self.generator(name)?.certified_block(&self.block_cutoffs())
    }

    pub fn map_entries(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Representation> {
        let generators = self
            .generators
            .iter()
            .map(|(n, m)| Ok((n.clone(), m.try_map(&f)?)))
            .collect::<Result<_>>()?;
        Ok(Representation {
            generators,
            ..self.clone()
        })
    }

    pub fn specialize(&self, z: &Rational) -> Result<Representation> {
        self.map_entries(|s| s.specialize(z))
    }

    /// Entries at `z = 0`.
    pub fn classical_limit(&self) -> Result<Representation> {
        self.specialize(&int(0))
    }

    /// `{algebra, params, basis, dim, generators: {name: [[scalar]]}}` on the certified block.
    pub fn to_json(&self) -> Result<Value> {
        let mut gens = Map::new();
        for (name, _) in &self.generators {
            gens.insert(name.clone(), matrix_json(&self.block(name)?));
        }
        let mut doc = json!({
            "algebra": self.algebra,
            "params": self.params.to_json(),
            "basis": self.basis,
            "dim": self.block_dim(),
            "generators": Value::Object(gens),
        });
        if let Some(j) = &self.j_z {
            doc["j_z"] = Value::String(format_rational(j));
        }
        if let Some(n) = &self.normalization {
            doc["normalization"] = json!(n);
        }
        Ok(doc)
    }

    pub fn to_latex(&self) -> Result<String> {
        let mut out = String::new();
        for (name, _) in &self.generators {
            out.push_str(&format!("{} = {}\n", latex_name(name), matrix_latex(&self.block(name)?)));
        }
        Ok(out)
    }
}

fn latex_name(n: &str) -> String {
    match n.split_at(1) {
        (h, "+") => format!("{h}_+"),
        (h, "-") => format!("{h}_-"),
        (h, "3") => format!("{h}_3"),
        _ => n.to_string(),
    }
}

pub fn matrix_json(m: &Matrix<Scalar>) -> Value {
    Value::Array(
        m.to_dense()
            .iter()
            .map(|row| Value::Array(row.iter().map(|s| serde_json::to_value(s).expect("scalar json")).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix<Scalar>> {
    let rows: Vec<Vec<Scalar>> = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(Error::DimensionMismatch("matrix is not square".into()));
    }
    Ok(Matrix::from_rows(rows))
}

impl Representation {
    /// Reads a document written by [`Representation::to_json`]; every leg is
    /// treated as finite.
    pub fn from_json(v: &Value) -> Result<Representation> {
        let s = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing field {k}")));
        let algebra = s("algebra")?.as_str().ok_or_else(|| Error::Parse("algebra".into()))?.to_string();
        let basis: BasisSpec = serde_json::from_value(s("basis")?.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let p = s("params")?;
        let get = |k: &str| -> Result<Option<Rational>> {
            p.get(k)
                .and_then(Value::as_str)
                .map(crate::scalar::parse_rational)
                .transpose()
        };
        let params = RepParams {
            beta: get("beta")?,
            delta: get("delta")?,
            alpha: get("alpha")?,
        };
        let gens = s("generators")?.as_object().ok_or_else(|| Error::Parse("generators".into()))?;
        let order = crate::algebra::presentation(&algebra)
            .map(|pr| pr.generators.clone())
            .unwrap_or_else(|_| gens.keys().cloned().collect());
        let mut generators = Vec::new();
        for name in order {
            if let Some(m) = gens.get(&name) {
                generators.push((name.clone(), CertMatrix::finite(matrix_from_json(m)?)));
            }
        }
        let j_z = v.get("j_z").and_then(Value::as_str).map(crate::scalar::parse_rational).transpose()?;
        Ok(Representation {
            algebra,
            params,
            basis,
            generators,
            j_z,
            normalization: None,
        })
    }
}

/// Truncated number-state representation of a realization.
pub fn fock_rep(real: &Realization, params: RepParams, cutoff: usize, margin: usize) -> Result<Representation> {
    if cutoff == 0 {
        return Err(Error::CutoffTooSmall { needed: 1, margin });
    }
    let generators = real
        .generators
        .iter()
        .map(|(n, e)| Ok((n.clone(), fock_matrix(e, real.modes, cutoff, margin)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Representation {
        algebra: real.algebra.clone(),
        params,
        basis: BasisSpec {
            kind: BasisKind::FockLower,
            modes: real.modes,
            cutoff,
            margin,
        },
        generators,
        j_z: None,
        normalization: None,
    })
}

/// Fock representation of the default realization of `algebra`.
pub fn fock_rep_for(algebra: &str, params: RepParams, cutoff: usize, margin: usize) -> Result<Representation> {
    let id = RealizationId::for_algebra(algebra)?;
    let real = id.build(&params.to_params())?;
    fock_rep(&real, params, cutoff, margin)
}

fn negative_integer(b: &Option<Rational>) -> Result<usize> {
    let b = b.as_ref().ok_or_else(|| Error::InvalidBeta("beta is required".into()))?;
    if !b.is_integer() || *b >= int(0) {
        return Err(Error::InvalidBeta(format!("{} is not a negative integer", format_rational(b))));
    }
    (-b.to_integer()).try_into().map_err(|_| Error::InvalidBeta("beta too large".into()))
}

/// Finite quotient of the lower bounded representation.
///
/// The states `|m>` with `m >= d` span a submodule exactly when every
/// generator has no entry in rows `< d` of columns `>= d`; `d` is the
/// smallest such size. For sl(2,R)-type algebras `d = |beta| + 1`.
pub fn quotient_rep(algebra: &str, params: RepParams) -> Result<Representation> {
    let id = RealizationId::for_algebra(algebra)?;
    if id.modes() != 1 || !matches!(algebra, "sl2" | "uzsl2" | "sl2ext" | "uzsl2ext" | "uzsl2-quadratic") {
        return Err(Error::Unsupported(format!("no finite quotients for {algebra}")));
    }
    let expected = if algebra.contains("ext") {
        let b = params.beta.clone().ok_or_else(|| Error::InvalidBeta("beta is required".into()))?;
        let d = params.delta.clone().unwrap_or_else(|| int(0));
        negative_integer(&Some(b - d))?
    } else {
        negative_integer(&params.beta)?
    };
    let real = id.build(&params.to_params())?;
    let band = real.lowering_band().0;
    let d = expected + 1;
    let full: Vec<(String, CertMatrix<Scalar>)> = real
        .generators
        .iter()
        .map(|(n, e)| Ok((n.clone(), fock_matrix(e, 1, d, band + 1)?)))
        .collect::<Result<_>>()?;
    for (n, m) in &full {
        for (r, c, v) in m.matrix.entries() {
            if r < d && c >= d {
                return Err(Error::InvalidBeta(format!(
                    "states above {d} are not invariant: {n} has entry ({r},{c}) = {v}"
                )));
            }
        }
    }
    let generators = full
        .into_iter()
        .map(|(n, m)| (n, CertMatrix::finite(m.matrix.leading_block(d))))
        .collect();
    Ok(Representation {
        algebra: algebra.into(),
        params,
        basis: BasisSpec {
            kind: BasisKind::FockQuotient,
            modes: 1,
            cutoff: d,
            margin: 0,
        },
        generators,
        j_z: Some(rat(d as i64 - 1, 2)),
        normalization: None,
    })
}

/// `U_z sl(2,R)` quotient for the spin label `j_z`, i.e. `beta = -2 j_z`.
pub fn spin_rep(j: &Rational) -> Result<Representation> {
    quotient_rep("uzsl2", RepParams::beta(-(j * int(2))))
}

/// Sign choices applied to the printed difference-operator template.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flips {
    pub beta: bool,
    pub j3: bool,
    pub j_pm: bool,
    pub x: bool,
    pub z: bool,
}

impl Flips {
    fn count(&self) -> usize {
        [self.beta, self.j3, self.j_pm, self.x, self.z].iter().filter(|b| **b).count()
    }

    pub fn labels(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.beta {
            v.push("beta -> -beta".to_string());
        }
        if self.j3 {
            v.push("J3 -> -J3".to_string());
        }
        if self.j_pm {
            v.push("J+ -> -J+, J- -> -J-".to_string());
        }
        if self.x {
            v.push("x -> -x".to_string());
        }
        if self.z {
            v.push("z -> -z".to_string());
        }
        v
    }

    /// All 32 choices, fewest flips first.
    pub fn all() -> Vec<Flips> {
        let mut v: Vec<Flips> = (0..32u8)
            .map(|b| Flips {
                beta: b & 1 != 0,
                j3: b & 2 != 0,
                j_pm: b & 4 != 0,
                x: b & 8 != 0,
                z: b & 16 != 0,
            })
            .collect();
        v.sort_by_key(|f| f.count());
        v
    }
}

/// The printed difference-operator template
/// `J+ = d/dx`, `J3 = 2 D x + z beta D + beta`,
/// `J- = -D x^2 - z beta D x - z^2 beta^2/4 D - beta x`, `D = (e^{2z d/dx} - 1)/(2z)`,
/// written with `d/dx = a+`, `x = -a-` and the given sign flips.
pub fn difference_template(beta: &Rational, f: Flips) -> Vec<(String, BosonExpr)> {
    use crate::scalar::EpsilonScalar;
    let sx: i64 = if f.x { -1 } else { 1 };
    let sz: i64 = if f.z { -1 } else { 1 };
    let b = if f.beta { -beta.clone() } else { beta.clone() };
    let k = |c: Rational| BosonExpr::scalar(EpsilonScalar::from_rational(c));
    let zz = BosonExpr::scalar(EpsilonScalar::from_scalar(Scalar::monomial(int(sz), 1)));
    let d_op = BosonExpr::a_plus().scale_q(&int(sx));
    let x_op = BosonExpr::a_minus().scale_q(&int(-sx));
    // D = (e^{2 zz d} - 1)/(2 zz); e^{2 sz z sx a+} = exp_a(sx sz)
    let dz = BosonExpr::exp_a((sx * sz) as i32)
        .sub(&BosonExpr::one())
        .scale(&EpsilonScalar::from_scalar(Scalar::monomial(rat(1, 2 * sz), -1)));
    let bz = zz.mul(&k(b.clone()));
    let jp = d_op;
    let j3 = k(int(2)).mul(&dz).mul(&x_op).add(&bz.mul(&dz)).add(&k(b.clone()));
    let jm = dz
        .mul(&x_op)
        .mul(&x_op)
        .neg()
        .sub(&bz.mul(&dz).mul(&x_op))
        .sub(&bz.mul(&bz).scale_q(&rat(1, 4)).mul(&dz))
        .sub(&k(b).mul(&x_op));
    let s3 = if f.j3 { -1 } else { 1 };
    let spm = if f.j_pm { -1 } else { 1 };
    vec![
        ("J+".into(), jp.scale_q(&int(spm))),
        ("J3".into(), j3.scale_q(&int(s3))),
        ("J-".into(), jm.scale_q(&int(spm))),
    ]
}

fn monomial_generators(gens: &[(String, BosonExpr)], dim: usize) -> Result<Vec<(String, CertMatrix<Scalar>)>> {
    gens.iter()
        .map(|(n, e)| Ok((n.clone(), CertMatrix::finite(monomial_matrix(e, dim)?))))
        .collect()
}

/// Upper bounded representation on `span{1, x, ..., x^(beta_plus - 2)}`.
///
/// The printed difference template is tried under every sign normalization,
/// fewest flips first; the first one that stays in the span and satisfies the
/// `U_z sl(2,R)` relations is accepted and recorded. The result is then
/// compared with the one-boson realization transported by `a+ -> d/dx`,
/// `a- -> -x` at `beta = beta_plus`.
pub fn monomial_rep(algebra: &str, beta_plus: &Rational) -> Result<Representation> {
    if !beta_plus.is_integer() || *beta_plus < int(2) {
        return Err(Error::InvalidBeta(format!(
            "beta_plus = {} must be an integer >= 2",
            format_rational(beta_plus)
        )));
    }
    if algebra != "uzsl2" && algebra != "sl2" {
        return Err(Error::Unsupported(format!("no monomial realization for {algebra}")));
    }
    let dim: usize = (beta_plus.to_integer() - 1u32).try_into().map_err(|_| Error::InvalidBeta("too large".into()))?;
    let pres = crate::algebra::presentation("uzsl2")?;
    let params = RepParams::beta(beta_plus.clone());
    let make = |generators, normalization| Representation {
        algebra: "uzsl2".into(),
        params: params.clone(),
        basis: BasisSpec {
            kind: BasisKind::MonomialUpper,
            modes: 1,
            cutoff: dim,
            margin: 0,
        },
        generators,
        j_z: Some(rat(dim as i64 - 1, 2)),
        normalization,
    };
    let mut accepted = None;
    for f in Flips::all() {
        let Ok(gens) = monomial_generators(&difference_template(beta_plus, f), dim) else {
            continue;
        };
        let rep = make(gens, Some(f.labels()));
        if crate::algebra::check_relations(&rep, pres)?.passed() {
            accepted = Some(rep);
            break;
        }
    }
    let rep = accepted.ok_or_else(|| {
        Error::RelationFailure("no sign normalization of the difference template satisfies the relations".into())
    })?;
    let boson = RealizationId::GdQuantum.build(&params.to_params())?;
    let transported = monomial_generators(&boson.generators, dim)?;
    if transported != rep.generators {
        return Err(Error::RelationFailure(
            "normalized difference template differs from the transported boson realization".into(),
        ));
    }
    if algebra == "sl2" {
        let mut c = rep.classical_limit()?;
        c.algebra = "sl2".into();
        return Ok(c);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(txt: &str) -> Scalar {
        txt.parse().unwrap()
    }

    #[test]
    fn two_dimensional_quotient() {
        let r = quotient_rep("uzsl2", RepParams::beta(int(-1))).unwrap();
        let jm = r.block("J-").unwrap();
        assert_eq!(jm.to_dense(), vec![vec![s("0"), s("1")], vec![s("-1/4 * z^2"), s("1 * z")]]);
        let j3 = r.block("J3").unwrap();
        assert_eq!(j3.to_dense(), vec![vec![s("-1"), s("0")], vec![s("-1 * z"), s("1")]]);
        assert_eq!(r.j_z, Some(rat(1, 2)));
    }

    #[test]
    fn quotient_rejects_positive_beta() {
        assert!(matches!(quotient_rep("uzsl2", RepParams::beta(int(2))), Err(Error::InvalidBeta(_))));
        assert!(matches!(quotient_rep("uzsl2", RepParams::beta(rat(-1, 2))), Err(Error::InvalidBeta(_))));
    }

    #[test]
    fn json_round_trip() {
        let r = quotient_rep("uzsl2", RepParams::beta(int(-2))).unwrap();
        let v = r.to_json().unwrap();
        let back = Representation::from_json(&v).unwrap();
        assert_eq!(back.block("J-").unwrap(), r.block("J-").unwrap());
        assert_eq!(v["dim"], 3);
    }
}
