use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::targets::{BosonTarget, MatrixTarget};
use super::{presentation, Presentation};
use crate::boson::BosonExpr;
use crate::error::{Error, Result};
use crate::matrix::{CertMatrix, Matrix};
use crate::realization::Realization;
use crate::rep::Representation;
use crate::scalar::Scalar;
use crate::word::{evaluate, Word};

/// Where a residual fails to vanish.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Entry { row: usize, col: usize, value: Scalar },
    Term(String),
}

impl Witness {
    pub fn to_json(&self) -> Value {
        match self {
            Witness::Entry { row, col, value } => json!({"row": row, "col": col, "value": value}),
            Witness::Term(t) => json!({"term": t}),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationCheck {
    pub label: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    pub algebra: String,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> + '_ {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.algebra,
            "passed": self.passed(),
            "relations": self.checks.iter().map(|c| {
                let mut v = json!({"relation": c.label, "passed": c.passed});
                if let Some(w) = &c.witness {
                    v["witness"] = w.to_json();
                }
                v
            }).collect::<Vec<_>>(),
        })
    }
}

fn check_covers(rep: &Representation, pres: &Presentation) -> Result<()> {
    for g in &pres.generators {
        rep.generator(g)?;
    }
    Ok(())
}

/// Certified block of `w` evaluated on `rep`.
pub(crate) fn evaluate_block(w: &Word, rep: &Representation) -> Result<Matrix<Scalar>> {
    let m: CertMatrix<Scalar> = evaluate(w, &MatrixTarget::new(rep))?;
    m.certified_block(&rep.block_cutoffs())
}

fn entry_witness(m: &Matrix<Scalar>) -> Option<Witness> {
    m.first_nonzero().map(|(row, col, value)| Witness::Entry { row, col, value })
}

/// Evaluates every relation residual on the certified block of `rep`.
pub fn check_relations(rep: &Representation, pres: &Presentation) -> Result<RelationReport> {
    check_covers(rep, pres)?;
    let checks = pres
        .relations
        .par_iter()
        .map(|r| {
            let block = evaluate_block(&r.residual, rep)?;
            let witness = entry_witness(&block);
            Ok(RelationCheck {
                label: r.label.clone(),
                passed: witness.is_none(),
                witness,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RelationReport {
        algebra: pres.id.clone(),
        checks,
    })
}

/// Relation residuals as normal-ordered boson expressions.
pub fn check_realization(real: &Realization, pres: &Presentation) -> Result<RelationReport> {
    let target = BosonTarget { real };
    let checks = pres
        .relations
        .iter()
        .map(|r| {
            let e = evaluate(&r.residual, &target)?;
            let witness = e
                .terms()
                .next()
                .map(|(m, c)| Witness::Term(BosonExpr::term(c.clone(), *m).to_string()));
            Ok(RelationCheck {
                label: r.label.clone(),
                passed: e.is_zero(),
                witness,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RelationReport {
        algebra: pres.id.clone(),
        checks,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum CasimirValue {
    Scalar(Scalar),
    NotScalar(Witness),
}

impl CasimirValue {
    pub fn scalar(&self) -> Option<&Scalar> {
        match self {
            CasimirValue::Scalar(s) => Some(s),
            CasimirValue::NotScalar(_) => None,
        }
    }
}

fn casimir_word(pres: &Presentation) -> Result<&Word> {
    pres.casimir
        .as_ref()
        .ok_or_else(|| Error::Unsupported(format!("{} has no Casimir in the catalog", pres.id)))
}

/// The Casimir on the certified block: `lambda` when it is `lambda * 1`.
pub fn casimir_value(rep: &Representation, pres: &Presentation) -> Result<CasimirValue> {
    check_covers(rep, pres)?;
    let block = evaluate_block(casimir_word(pres)?, rep)?;
    let lambda = block.get(0, 0);
    let residual = block.sub(&Matrix::identity(block.rows()).scale(&lambda));
    Ok(match entry_witness(&residual) {
        None => CasimirValue::Scalar(lambda),
        Some(w) => CasimirValue::NotScalar(w),
    })
}

/// The Casimir of a realization as a boson expression.
pub fn casimir_expression(real: &Realization, pres: &Presentation) -> Result<BosonExpr> {
    evaluate(casimir_word(pres)?, &BosonTarget { real })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadraticVariant {
    Sl2,
    Poincare,
    H4,
}

impl QuadraticVariant {
    pub fn target(self) -> &'static str {
        match self {
            QuadraticVariant::Sl2 => "uzsl2-quadratic",
            QuadraticVariant::Poincare => "uzpoincare-quadratic",
            QuadraticVariant::H4 => "uzh4-quadratic",
        }
    }

    fn change(self) -> Result<(&'static Presentation, &'static super::QuadraticOf)> {
        let p = presentation(self.target())?;
        let q = p.quadratic_of.as_ref().ok_or_else(|| Error::UnknownAlgebra(self.target().into()))?;
        Ok((p, q))
    }
}

impl FromStr for QuadraticVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sl2" => Ok(QuadraticVariant::Sl2),
            "poincare" => Ok(QuadraticVariant::Poincare),
            "h4" => Ok(QuadraticVariant::H4),
            _ => Err(Error::Parse(format!("unknown quadratic variant {s:?}"))),
        }
    }
}

fn failure(report: &RelationReport) -> Error {
    let f = report.failures().next().expect("a failed check");
    Error::RelationFailure(format!(
        "{}: {} does not close ({:?})",
        report.algebra, f.label, f.witness
    ))
}

/// Rewrites a realization of the source algebra in the quadratic basis and
/// verifies the quadratic relations.
pub fn quadratic_basis(real: &Realization, variant: QuadraticVariant) -> Result<Realization> {
    let (target, change) = variant.change()?;
    if real.algebra != change.source {
        return Err(Error::UnknownAlgebra(format!(
            "{} realization given, {} expected",
            real.algebra, change.source
        )));
    }
    let t = BosonTarget { real };
    let generators = change
        .basis
        .iter()
        .map(|(n, w)| Ok((n.clone(), evaluate(w, &t)?)))
        .collect::<Result<Vec<_>>>()?;
    let out = Realization {
        id: None,
        algebra: target.id.clone(),
        modes: real.modes,
        generators,
    };
    let report = check_realization(&out, target)?;
    if !report.passed() {
        return Err(failure(&report));
    }
    Ok(out)
}

/// Matrix version of [`quadratic_basis`].
pub fn quadratic_basis_rep(rep: &Representation, variant: QuadraticVariant) -> Result<Representation> {
    let (target, change) = variant.change()?;
    if rep.algebra != change.source {
        return Err(Error::UnknownAlgebra(format!(
            "{} representation given, {} expected",
            rep.algebra, change.source
        )));
    }
    let t = MatrixTarget::new(rep);
    let generators = change
        .basis
        .iter()
        .map(|(n, w)| Ok((n.clone(), evaluate(w, &t)?)))
        .collect::<Result<Vec<_>>>()?;
    let out = Representation {
        algebra: target.id.clone(),
        generators,
        ..rep.clone()
    };
    let report = check_relations(&out, target)?;
    if !report.passed() {
        return Err(failure(&report));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::{Params, RealizationId};
    use crate::rep::{fock_rep_for, quotient_rep, RepParams};
    use crate::scalar::{int, rat};

    #[test]
    fn quotient_satisfies_deformed_relations() {
        let r = quotient_rep("uzsl2", RepParams::beta(int(-2))).unwrap();
        let rep = check_relations(&r, presentation("uzsl2").unwrap()).unwrap();
        assert!(rep.passed(), "{:?}", rep);
    }

    #[test]
    fn perturbed_matrix_is_detected() {
        let mut r = quotient_rep("uzsl2", RepParams::beta(int(-1))).unwrap();
        let j3 = &mut r.generators[1].1.matrix;
        let v = j3.get(1, 0);
        j3.set(1, 0, v.neg());
        let rep = check_relations(&r, presentation("uzsl2").unwrap()).unwrap();
        assert!(!rep.passed());
        assert!(rep.checks[0].passed);
        assert!(rep.failures().all(|c| c.witness.is_some()));
    }

    #[test]
    fn casimir_of_the_two_dimensional_quotient() {
        let r = quotient_rep("uzsl2", RepParams::beta(int(-1))).unwrap();
        let v = casimir_value(&r, presentation("uzsl2").unwrap()).unwrap();
        assert_eq!(v, CasimirValue::Scalar(Scalar::from_rational(rat(3, 2))));
    }

    #[test]
    fn every_realization_closes_as_expressions() {
        let p = Params::rational(Some(rat(-3, 2)), Some(rat(2, 3)), Some(int(3)));
        for id in crate::realization::ALL_REALIZATIONS {
            let real = id.build(&p).unwrap();
            let rep = check_realization(&real, presentation(id.algebra()).unwrap()).unwrap();
            assert!(rep.passed(), "{id}: {:?}", rep);
        }
    }

    #[test]
    fn quadratic_bases_reproduce_the_quadratic_realizations() {
        let p = Params::rational(Some(rat(5, 2)), Some(rat(-1, 3)), Some(int(2)));
        for (v, src, dst) in [
            (QuadraticVariant::Sl2, RealizationId::GdQuantum, RealizationId::QuadraticSl2),
            (QuadraticVariant::Poincare, RealizationId::PoincareQuantum, RealizationId::QuadraticPoincare),
            (QuadraticVariant::H4, RealizationId::H4Quantum, RealizationId::QuadraticH4),
        ] {
            let q = quadratic_basis(&src.build(&p).unwrap(), v).unwrap();
            assert_eq!(q.generators, dst.build(&p).unwrap().generators, "{v:?}");
        }
    }

    #[test]
    fn quadratic_basis_on_matrices() {
        let r = fock_rep_for("uzh4", RepParams { beta: Some(rat(1, 2)), delta: Some(int(1)), alpha: None }, 4, 4).unwrap();
        let q = quadratic_basis_rep(&r, QuadraticVariant::H4).unwrap();
        assert_eq!(q.algebra, "uzh4-quadratic");
    }
}
