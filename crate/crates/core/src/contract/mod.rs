//! Inönü-Wigner contractions of realizations, Casimirs, Hopf data and
//! factorized R-matrices.
//!
//! A scheme lists the new quantities as `eps`-monomial multiples of the old
//! ones (`P+ = eps J+`, `a+ -> eps a+`, `z -> z / eps`, ...). Expressions in
//! the old quantities are rewritten through the inverse relations and the
//! `eps -> 0` limit is taken term by term; a surviving negative power of
//! `eps` is an error naming the offending term.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{check_realization, presentation, Presentation};
use crate::boson::Substitution;
use crate::error::{Error, Result};
use crate::hopf::{HopfData, RFactor, RSpec};
use crate::realization::{Params, Realization, RealizationId};
use crate::scalar::{format_rational, parse_rational, EpsilonScalar, Rational};
use crate::word::{TensorWord, Word};

/// `coeff * eps^eps`.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsMonomial {
    pub coeff: Rational,
    pub eps: i32,
}

impl EpsMonomial {
    pub fn value(&self) -> EpsilonScalar {
        EpsilonScalar::from_rational(self.coeff.clone()).mul(&EpsilonScalar::eps_pow(self.eps))
    }

    pub fn inverse(&self) -> EpsilonScalar {
        EpsilonScalar::from_rational(self.coeff.recip()).mul(&EpsilonScalar::eps_pow(-self.eps))
    }

    fn to_json(&self) -> Value {
        json!({"coeff": format_rational(&self.coeff), "eps": self.eps})
    }
}

/// `target = factor * source`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorMap {
    pub target: String,
    pub source: String,
    pub factor: EpsMonomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quantum,
    Classical,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContractionScheme {
    pub id: String,
    pub label: String,
    pub source: String,
    pub target: String,
    pub classical_source: String,
    pub classical_target: String,
    pub realization: (RealizationId, RealizationId),
    pub classical_realization: (RealizationId, RealizationId),
    pub generators: Vec<GeneratorMap>,
    /// New mode operators as `eps^k` times the old: `[a+, a-, b+, b-]`.
    pub bosons: [i32; 4],
    /// New parameters in terms of the old.
    pub parameters: Vec<(String, EpsMonomial)>,
    /// `z_new = eps^z_eps z_old`.
    pub z_eps: i32,
    pub casimir_prefactor: EpsMonomial,
}

#[derive(Deserialize)]
struct RawMono {
    coeff: String,
    eps: i32,
}

#[derive(Deserialize)]
struct RawGen {
    target: String,
    source: String,
    coeff: String,
    eps: i32,
}

#[derive(Deserialize)]
struct RawPair {
    source: String,
    target: String,
}

#[derive(Deserialize)]
struct RawScheme {
    id: String,
    label: String,
    source: String,
    target: String,
    classical_source: String,
    classical_target: String,
    realization: RawPair,
    classical_realization: RawPair,
    generators: Vec<RawGen>,
    bosons: std::collections::BTreeMap<String, i32>,
    #[serde(default)]
    parameters: std::collections::BTreeMap<String, RawMono>,
    z_eps: i32,
    casimir_prefactor: RawMono,
}

#[derive(Deserialize)]
struct RawSchemes {
    schemes: Vec<RawScheme>,
}

fn mono(coeff: &str, eps: i32) -> Result<EpsMonomial> {
    let coeff = parse_rational(coeff)?;
    if coeff == crate::scalar::int(0) {
        return Err(Error::Parse("zero rescaling factor".into()));
    }
    Ok(EpsMonomial { coeff, eps })
}

impl ContractionScheme {
    fn from_raw(r: RawScheme) -> Result<Self> {
        let pair = |p: &RawPair| -> Result<(RealizationId, RealizationId)> { Ok((p.source.parse()?, p.target.parse()?)) };
        let boson = |k: &str| r.bosons.get(k).copied().unwrap_or(0);
        let s = ContractionScheme {
            realization: pair(&r.realization)?,
            classical_realization: pair(&r.classical_realization)?,
            generators: r
                .generators
                .iter()
                .map(|g| {
                    Ok(GeneratorMap {
                        target: g.target.clone(),
                        source: g.source.clone(),
                        factor: mono(&g.coeff, g.eps)?,
                    })
                })
                .collect::<Result<_>>()?,
            bosons: [boson("a+"), boson("a-"), boson("b+"), boson("b-")],
            parameters: r
                .parameters
                .iter()
                .map(|(k, m)| Ok((k.clone(), mono(&m.coeff, m.eps)?)))
                .collect::<Result<_>>()?,
            casimir_prefactor: mono(&r.casimir_prefactor.coeff, r.casimir_prefactor.eps)?,
            id: r.id,
            label: r.label,
            source: r.source,
            target: r.target,
            classical_source: r.classical_source,
            classical_target: r.classical_target,
            z_eps: r.z_eps,
        };
        s.validate()?;
        Ok(s)
    }

    /// Parses `{"schemes": [...]}` or a single scheme object.
    pub fn from_json(text: &str) -> Result<Vec<ContractionScheme>> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let raws: Vec<RawScheme> = if v.get("schemes").is_some() {
            serde_json::from_value::<RawSchemes>(v).map_err(|e| Error::Parse(e.to_string()))?.schemes
        } else {
            vec![serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?]
        };
        raws.into_iter().map(Self::from_raw).collect()
    }

    fn validate(&self) -> Result<()> {
        for (src, dst) in [(&self.source, &self.target), (&self.classical_source, &self.classical_target)] {
            let (s, t) = (presentation(src)?, presentation(dst)?);
            let mut sources: Vec<&str> = self.generators.iter().map(|g| g.source.as_str()).collect();
            let mut targets: Vec<&str> = self.generators.iter().map(|g| g.target.as_str()).collect();
            sources.sort();
            targets.sort();
            let mut want_s = s.gen_refs();
            let mut want_t = t.gen_refs();
            want_s.sort();
            want_t.sort();
            if sources != want_s || targets != want_t {
                return Err(Error::Parse(format!(
                    "scheme {} does not map the generators of {src} onto those of {dst}",
                    self.id
                )));
            }
        }
        Ok(())
    }

    pub fn algebras(&self, level: Level) -> (&str, &str) {
        match level {
            Level::Quantum => (&self.source, &self.target),
            Level::Classical => (&self.classical_source, &self.classical_target),
        }
    }

    pub fn realizations(&self, level: Level) -> (RealizationId, RealizationId) {
        match level {
            Level::Quantum => self.realization,
            Level::Classical => self.classical_realization,
        }
    }

    fn source_image(&self, source: &str) -> Result<(EpsilonScalar, String)> {
        self.generators
            .iter()
            .find(|g| g.source == source)
            .map(|g| (g.factor.inverse(), g.target.clone()))
            .ok_or_else(|| Error::UnknownGenerator(source.into()))
    }

    fn target_map(&self, target: &str) -> Result<&GeneratorMap> {
        self.generators
            .iter()
            .find(|g| g.target == target)
            .ok_or_else(|| Error::UnknownGenerator(target.into()))
    }

    /// A word in the old generators, rewritten in the new ones with
    /// `z_old = eps^(-z_eps) z`; no limit taken.
    pub fn substitute_word(&self, w: &Word) -> Result<Word> {
        w.rescale(&|g| self.source_image(g), -self.z_eps)
    }

    /// Old parameter values in terms of the new ones.
    pub fn source_params(&self, new: &Params) -> Result<Params> {
        let mut p = new.clone();
        for (name, m) in &self.parameters {
            let slot = match name.as_str() {
                "alpha" => &mut p.alpha,
                "beta" => &mut p.beta,
                "delta" => &mut p.delta,
                other => return Err(Error::Parse(format!("unknown parameter {other:?}"))),
            };
            if let Some(v) = slot.as_mut() {
                *v = v.mul(&m.inverse());
            }
        }
        Ok(p)
    }

    fn substitution(&self) -> Substitution {
        let inv = |k: i32| EpsilonScalar::eps_pow(-k);
        Substitution {
            a_plus: inv(self.bosons[0]),
            a_minus: inv(self.bosons[1]),
            b_plus: inv(self.bosons[2]),
            b_minus: inv(self.bosons[3]),
            z_power: -self.z_eps,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "label": self.label,
            "source": self.source,
            "target": self.target,
            "classical_source": self.classical_source,
            "classical_target": self.classical_target,
            "generators": self.generators.iter().map(|g| json!({
                "target": g.target, "source": g.source,
                "coeff": format_rational(&g.factor.coeff), "eps": g.factor.eps,
            })).collect::<Vec<_>>(),
            "bosons": {"a+": self.bosons[0], "a-": self.bosons[1], "b+": self.bosons[2], "b-": self.bosons[3]},
            "parameters": self.parameters.iter().map(|(k, m)| (k.clone(), m.to_json())).collect::<serde_json::Map<_, _>>(),
            "z_eps": self.z_eps,
            "casimir_prefactor": self.casimir_prefactor.to_json(),
        })
    }
}

const SCHEMES: &str = include_str!("../../data/schemes.json");

/// The shipped schemes.
pub fn schemes() -> &'static [ContractionScheme] {
    static S: OnceLock<Vec<ContractionScheme>> = OnceLock::new();
    S.get_or_init(|| ContractionScheme::from_json(SCHEMES).unwrap_or_else(|e| panic!("scheme file: {e}")))
}

pub fn scheme(id: &str) -> Result<&'static ContractionScheme> {
    schemes()
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownScheme(id.into()))
}

/// Builds the source realization at the rescaled parameters, substitutes the
/// boson and `z` rescalings, maps the generators and takes `eps -> 0`. The
/// result must satisfy the target relations.
pub fn contract_realization(scheme: &ContractionScheme, level: Level, params: &Params) -> Result<Realization> {
    let (src_id, _) = scheme.realizations(level);
    let (_, target) = scheme.algebras(level);
    let source = src_id.build(&scheme.source_params(params)?)?;
    let sub = scheme.substitution();
    let generators = presentation(target)?
        .generators
        .par_iter()
        .map(|t| {
            let g = scheme.target_map(t)?;
            let e = source.get(&g.source)?.substitute(&sub)?.scale(&g.factor.value());
            Ok((t.clone(), e.epsilon_limit()?))
        })
        .collect::<Result<Vec<_>>>()?;
    let out = Realization {
        id: None,
        algebra: target.into(),
        modes: source.modes,
        generators,
    };
    let report = check_realization(&out, presentation(target)?)?;
    if let Some(f) = report.failures().next() {
        return Err(Error::RelationFailure(format!("contracted {}: {} ({:?})", target, f.label, f.witness)));
    }
    Ok(out)
}

/// `lim prefactor * C` with `C` rewritten in the new generators.
pub fn contract_casimir(scheme: &ContractionScheme, casimir: &Word) -> Result<Word> {
    scheme
        .substitute_word(casimir)?
        .scale(&scheme.casimir_prefactor.value())
        .epsilon_limit()
}

/// Coproducts, counits and antipodes of the new generators.
pub fn contract_hopf(scheme: &ContractionScheme, hopf: &HopfData, level: Level) -> Result<HopfData> {
    let (_, target) = scheme.algebras(level);
    let pres = presentation(target)?;
    let mut coproduct = Vec::new();
    let mut counit = Vec::new();
    let mut antipode = Vec::new();
    for t in &pres.generators {
        let g = scheme.target_map(t)?;
        let f = g.factor.value();
        let d = hopf.coproduct_of(&g.source)?;
        let mapped = d.map_words(&|w| scheme.substitute_word(w))?.scale(&f).epsilon_limit()?;
        coproduct.push((t.clone(), mapped));
        let s = scheme.substitute_word(hopf.antipode_of(&g.source)?)?.scale(&f).epsilon_limit()?;
        antipode.push((t.clone(), s));
        let e = hopf
            .counit
            .iter()
            .find(|(n, _)| *n == g.source)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Error::UnknownGenerator(g.source.clone()))?;
        counit.push((t.clone(), EpsilonScalar::from_scalar(e).mul(&f).epsilon_limit()?));
    }
    Ok(HopfData {
        algebra: target.into(),
        coproduct,
        counit,
        antipode,
    })
}

/// Each factor `exp(c(z) X (x) Y)` maps to `exp(c(eps z) s_X s_Y X' (x) Y')`;
/// the new exponent must be free of `eps`.
pub fn contract_r(scheme: &ContractionScheme, spec: &RSpec, level: Level) -> Result<RSpec> {
    let (_, target) = scheme.algebras(level);
    let factors = spec
        .factors
        .iter()
        .map(|f| {
            let (sl, l) = scheme.source_image(&f.left)?;
            let (sr, r) = scheme.source_image(&f.right)?;
            let c = EpsilonScalar::from_scalar(f.coeff.clone())
                .rescale_z_eps(-scheme.z_eps)
                .mul(&sl)
                .mul(&sr);
            let coeff = c.as_scalar().ok_or_else(|| match c.min_eps_degree() {
                Some(k) if k < 0 => Error::NegativeEpsilonDegree {
                    degree: k,
                    context: format!("exponent of the R-matrix factor {l} (x) {r}"),
                },
                _ => Error::Unsupported(format!("R-matrix exponent {c} keeps a positive power of eps")),
            })?;
            Ok(RFactor { coeff, left: l, right: r })
        })
        .collect::<Result<_>>()?;
    Ok(RSpec {
        algebra: target.into(),
        factors,
    })
}

fn tensor_equal(p: &Presentation, a: &TensorWord, b: &TensorWord) -> bool {
    let norm = |t: &TensorWord| {
        t.map_words(&|w| Ok(p.commutation_normal_form(w)))
            .expect("normal form is infallible")
            .canonical()
    };
    norm(a) == norm(b)
}

/// Field-by-field comparison with the target presentation; returns the
/// names of the fields that differ.
pub fn hopf_mismatches(p: &Presentation, h: &HopfData) -> Result<Vec<String>> {
    let want = p.hopf()?;
    let mut out = Vec::new();
    for (n, t) in &h.coproduct {
        if !tensor_equal(p, t, want.coproduct_of(n)?) {
            out.push(format!("coproduct {n}"));
        }
    }
    for (n, w) in &h.antipode {
        if !p.words_equal(w, want.antipode_of(n)?) {
            out.push(format!("antipode {n}"));
        }
    }
    if h.counit != want.counit {
        out.push("counit".into());
    }
    Ok(out)
}

/// One comparison in a [`ContractionReport`].
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionCheck {
    pub object: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContractionReport {
    pub scheme: String,
    pub level: Level,
    pub realization: Realization,
    pub casimir: Option<Word>,
    pub hopf: HopfData,
    pub r_matrix: Option<RSpec>,
    pub checks: Vec<ContractionCheck>,
}

impl ContractionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "scheme": self.scheme,
            "level": match self.level { Level::Quantum => "quantum", Level::Classical => "classical" },
            "target": self.realization.algebra,
            "passed": self.passed(),
            "realization": self.realization.generators.iter()
                .map(|(n, e)| (n.clone(), Value::String(e.to_string())))
                .collect::<serde_json::Map<_, _>>(),
            "casimir": self.casimir.as_ref().map(|w| w.to_string()),
            "hopf": {
                "coproduct": self.hopf.coproduct.iter().map(|(n, t)| (n.clone(), Value::String(t.to_string()))).collect::<serde_json::Map<_, _>>(),
                "counit": self.hopf.counit.iter().map(|(n, v)| (n.clone(), Value::String(v.to_string()))).collect::<serde_json::Map<_, _>>(),
                "antipode": self.hopf.antipode.iter().map(|(n, w)| (n.clone(), Value::String(w.to_string()))).collect::<serde_json::Map<_, _>>(),
            },
            "r_matrix": self.r_matrix.as_ref().map(RSpec::to_json),
            "checks": self.checks.iter().map(|c| {
                let mut v = json!({"object": c.object, "passed": c.passed});
                if let Some(d) = &c.detail {
                    v["detail"] = json!(d);
                }
                v
            }).collect::<Vec<_>>(),
        })
    }
}

fn check(object: &str, passed: bool, detail: Option<String>) -> ContractionCheck {
    ContractionCheck {
        object: object.into(),
        passed,
        detail: if passed { None } else { detail },
    }
}

/// Contracts every object of the source algebra and compares with the
/// stored target data and the target realization built directly.
pub fn run_scheme(scheme: &ContractionScheme, level: Level, params: &Params) -> Result<ContractionReport> {
    let (src, dst) = scheme.algebras(level);
    let (sp, tp) = (presentation(src)?, presentation(dst)?);
    let realization = contract_realization(scheme, level, params)?;
    let direct = scheme.realizations(level).1.build(params)?;
    let mut checks = vec![check(
        "realization",
        realization.generators == direct.generators,
        Some(format!("differs from the {} realization", direct.algebra)),
    )];
    let casimir = match (&sp.casimir, &tp.casimir) {
        (Some(c), Some(want)) => {
            let got = contract_casimir(scheme, c)?;
            checks.push(check("casimir", tp.words_equal(&got, want), Some(got.to_string())));
            Some(got)
        }
        _ => None,
    };
    let hopf = contract_hopf(scheme, sp.hopf()?, level)?;
    let mism = hopf_mismatches(tp, &hopf)?;
    checks.push(check("hopf", mism.is_empty(), Some(mism.join(", "))));
    let r_matrix = match (&sp.r_matrix, &tp.r_matrix) {
        (Some(r), Some(want)) => {
            let got = contract_r(scheme, r, level)?;
            checks.push(check("r-matrix", got == *want, Some(got.to_json().to_string())));
            Some(got)
        }
        _ => None,
    };
    Ok(ContractionReport {
        scheme: scheme.id.clone(),
        level,
        realization,
        casimir,
        hopf,
        r_matrix,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn params() -> Params {
        Params::rational(Some(rat(3, 4)), Some(rat(-2, 5)), Some(int(3)))
    }

    #[test]
    fn shipped_schemes_close() {
        for s in schemes() {
            for level in [Level::Quantum, Level::Classical] {
                let r = run_scheme(s, level, &params()).unwrap();
                assert!(r.passed(), "{} {:?}: {:?}", s.id, level, r.checks);
            }
        }
    }

    #[test]
    fn lowering_coproduct_gains_the_central_term() {
        let s = scheme("ext-to-h4").unwrap();
        let h = contract_hopf(s, presentation("uzsl2ext").unwrap().hopf().unwrap(), Level::Quantum).unwrap();
        let d = h.coproduct_of("A-").unwrap();
        let p = presentation("uzh4").unwrap();
        let want = TensorWord {
            terms: vec![
                (p.parse("1").unwrap(), p.parse("A-").unwrap()),
                (p.parse("A-").unwrap(), p.parse("exp(2z A+)").unwrap()),
                (p.parse("2z N").unwrap(), p.parse("M exp(2z A+)").unwrap()),
            ],
        };
        assert_eq!(d.canonical(), want.canonical());
    }

    #[test]
    fn wrong_scaling_diverges() {
        let mut s = scheme("sl2-to-poincare").unwrap().clone();
        s.generators[0].factor.eps = 2;
        s.generators[2].factor.eps = 0;
        let c = presentation("uzsl2").unwrap().casimir.clone().unwrap();
        assert!(matches!(contract_casimir(&s, &c), Err(Error::NegativeEpsilonDegree { .. })));
        s.bosons[0] = 2;
        assert!(contract_realization(&s, Level::Classical, &params()).is_err());
    }

    #[test]
    fn contraction_commutes_with_the_classical_limit() {
        for s in schemes() {
            let q = contract_realization(s, Level::Quantum, &params()).unwrap().classical_limit().unwrap();
            let c = contract_realization(s, Level::Classical, &params()).unwrap();
            assert_eq!(q.generators, c.generators, "{}", s.id);
        }
    }
}
