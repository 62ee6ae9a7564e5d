//! Coproducts, counits, antipodes, tensor representations and the universal
//! R-matrix evaluated on representations.
//!
//! Tensor index convention: `(i, j) -> i * dim2 + j`, first factor leftmost.
//! On `V (x) V (x) V`, `R12 = R (x) 1`, `R23 = 1 (x) R` and
//! `R13[(i,j,k),(i',j',k')] = R[(i,k),(i',k')] delta(j,j')`.

mod degree;

use rayon::prelude::*;
use serde_json::{json, Value};

pub use degree::{DegreeMatrix, DegreeTarget};

use crate::algebra::{presentation, CounitTarget, MatrixTarget, Witness};
use crate::error::{Error, Result};
use crate::matrix::linalg::inverse_scalar;
use crate::matrix::{CertMatrix, Leg, Matrix};
use crate::rep::{BasisKind, BasisSpec, Representation};
use crate::scalar::{EpsilonScalar, Scalar};
use crate::word::{evaluate, Factor, TensorWord, Word};

#[derive(Clone, Debug, PartialEq)]
pub struct HopfData {
    pub algebra: String,
    pub coproduct: Vec<(String, TensorWord)>,
    pub counit: Vec<(String, Scalar)>,
    pub antipode: Vec<(String, Word)>,
}

/// One factor `exp(coeff * left (x) right)` of a factorized R-matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RFactor {
    pub coeff: Scalar,
    pub left: String,
    pub right: String,
}

/// `R = prod_k exp(coeff_k * left_k (x) right_k)`, leftmost factor first.
#[derive(Clone, Debug, PartialEq)]
pub struct RSpec {
    pub algebra: String,
    pub factors: Vec<RFactor>,
}

impl RSpec {
    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.algebra,
            "factors": self.factors.iter().map(|f| json!({
                "coeff": f.coeff.to_string(),
                "left": f.left,
                "right": f.right,
            })).collect::<Vec<_>>(),
        })
    }
}

impl HopfData {
    /// Catalog Hopf data of `algebra`.
    pub fn of(algebra: &str) -> Result<&'static HopfData> {
        presentation(algebra)?.hopf()
    }

    pub fn coproduct_of(&self, name: &str) -> Result<&TensorWord> {
        self.coproduct
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
            .ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    pub fn antipode_of(&self, name: &str) -> Result<&Word> {
        self.antipode
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
            .ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    pub fn generators(&self) -> Vec<&str> {
        self.coproduct.iter().map(|(n, _)| n.as_str()).collect()
    }

    /// Antipode extended to words as an anti-homomorphism. `exp(c X)` maps to
    /// `exp(c s Y)` when `S(X) = s Y`.
    pub fn antipode_word(&self, w: &Word) -> Result<Word> {
        let mut out = Word::zero();
        for (seq, c) in w.terms() {
            let mut acc = Word::scalar(c.clone());
            for f in seq.iter().rev() {
                let img = match f {
                    Factor::Gen(g) => self.antipode_of(g)?.clone(),
                    Factor::Exp { coeff, gen } => {
                        let s = self.antipode_of(gen)?;
                        let mut it = s.terms();
                        let single = match (it.next(), it.next()) {
                            (Some((seq, k)), None) if seq.len() == 1 => match (&seq[0], k.as_scalar()) {
                                (Factor::Gen(y), Some(k)) => Some((y.clone(), k)),
                                _ => None,
                            },
                            _ => None,
                        };
                        let (y, k) = single.ok_or_else(|| {
                            Error::Unsupported(format!("antipode of {gen} is not a multiple of a generator"))
                        })?;
                        Word::exp(coeff.mul(&k), &y)
                    }
                };
                acc = acc.mul(&img);
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Counit extended to words as an algebra map.
    pub fn counit_word(&self, w: &Word) -> Result<EpsilonScalar> {
        evaluate(w, &CounitTarget { counit: &self.counit })
    }
}

/// Swapped tensor word `sigma(t)`.
pub fn opposite(t: &TensorWord) -> TensorWord {
    TensorWord {
        terms: t.terms.iter().map(|(l, r)| (r.clone(), l.clone())).collect(),
    }
}

/// `(rho1 (x) rho2)(t)`.
pub fn tensor_matrix(t: &TensorWord, rep1: &Representation, rep2: &Representation) -> Result<CertMatrix<Scalar>> {
    let (t1, t2) = (MatrixTarget::new(rep1), MatrixTarget::new(rep2));
    let mut legs = rep1.legs();
    legs.extend(rep2.legs());
    let mut acc = CertMatrix::zero(&legs);
    for (l, r) in &t.terms {
        acc = acc.add(&evaluate(l, &t1)?.kron(&evaluate(r, &t2)?));
    }
    Ok(acc)
}

fn same_algebra(rep1: &Representation, rep2: &Representation, algebra: &str) -> Result<()> {
    for r in [rep1, rep2] {
        if r.algebra != algebra {
            return Err(Error::DimensionMismatch(format!(
                "{} representation paired with {algebra} Hopf data",
                r.algebra
            )));
        }
    }
    Ok(())
}

/// Coproduct representation on `V1 (x) V2`.
pub fn coproduct_rep(rep1: &Representation, rep2: &Representation, hopf: &HopfData) -> Result<Representation> {
    same_algebra(rep1, rep2, &hopf.algebra)?;
    let generators = hopf
        .coproduct
        .par_iter()
        .map(|(n, t)| Ok((n.clone(), tensor_matrix(t, rep1, rep2)?)))
        .collect::<Result<Vec<_>>>()?;
    let truncated_cutoff = [rep1, rep2]
        .iter()
        .filter(|r| !r.is_finite())
        .map(|r| r.basis.cutoff)
        .min();
    Ok(Representation {
        algebra: hopf.algebra.clone(),
        params: rep1.params.clone(),
        basis: BasisSpec {
            kind: BasisKind::Tensor,
            modes: rep1.basis.modes + rep2.basis.modes,
            cutoff: truncated_cutoff.unwrap_or(rep1.dim() * rep2.dim()),
            margin: rep1.basis.margin.min(rep2.basis.margin),
        },
        generators,
        j_z: None,
        normalization: None,
    })
}

fn r_factors_finite(spec: &RSpec, rep1: &Representation, rep2: &Representation) -> Result<Vec<CertMatrix<Scalar>>> {
    spec.factors
        .iter()
        .map(|f| {
            let x = rep1.generator(&f.left)?.kron(rep2.generator(&f.right)?).scale(&f.coeff);
            x.exp()
        })
        .collect()
}

/// `R` on `V1 (x) V2` for finite representations.
pub fn evaluate_r(spec: &RSpec, rep1: &Representation, rep2: &Representation) -> Result<Matrix<Scalar>> {
    same_algebra(rep1, rep2, &spec.algebra)?;
    if rep1.is_finite() && rep2.is_finite() {
        let fs = r_factors_finite(spec, rep1, rep2)?;
        let r = fs.iter().skip(1).fold(fs[0].clone(), |acc, f| acc.mul(f));
        return Ok(r.matrix);
    }
    let r = r_degree(spec, rep1, rep2, false)?;
    let cutoff = rep1.basis.cutoff.min(rep2.basis.cutoff);
    let rows = r.block_rows(cutoff)?;
    Ok(r.matrix.select(&rows, &rows))
}

/// `R` (or `R^-1` when `inverse`) with the total-degree certificate.
fn r_degree(spec: &RSpec, rep1: &Representation, rep2: &Representation, inverse: bool) -> Result<DegreeMatrix> {
    let (t1, t2) = (DegreeTarget { rep: rep1 }, DegreeTarget { rep: rep2 });
    let mut fs = spec
        .factors
        .iter()
        .map(|f| {
            use crate::word::WordTarget;
            let c = if inverse { f.coeff.neg() } else { f.coeff.clone() };
            t1.generator(&f.left)?.kron(&t2.generator(&f.right)?).scale(&c).exp()
        })
        .collect::<Result<Vec<_>>>()?;
    if inverse {
        fs.reverse();
    }
    Ok(fs.iter().skip(1).fold(fs[0].clone(), |acc, f| acc.mul(f)))
}

/// `R12 R13 R23 = R23 R13 R12` on `V (x) V (x) V`; `false` when `R` is not `d^2 x d^2`.
pub fn check_qybe(r: &Matrix<Scalar>) -> bool {
    let n = r.rows();
    let d = (n as f64).sqrt().round() as usize;
    if d * d != n || !r.is_square() {
        return false;
    }
    let leg = Leg::finite(d);
    let big = CertMatrix {
        matrix: r.clone(),
        legs: vec![leg, leg],
    };
    let id = CertMatrix::<Scalar>::identity(&[leg]);
    let r12 = big.kron(&id);
    let r23 = id.kron(&big);
    // R (x) 1 on legs (1, 3, 2), reordered to (1, 2, 3).
    let r13 = r12.permute_legs(&[0, 2, 1]);
    let (lhs, rhs) = rayon::join(
        || r12.mul(&r13).mul(&r23),
        || r23.mul(&r13).mul(&r12),
    );
    lhs.matrix == rhs.matrix
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomCheck {
    pub axiom: String,
    pub generator: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HopfReport {
    pub algebra: String,
    pub checks: Vec<AxiomCheck>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.algebra,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| {
                let mut v = json!({"axiom": c.axiom, "generator": c.generator, "passed": c.passed});
                if let Some(w) = &c.witness {
                    v["witness"] = w.to_json();
                }
                v
            }).collect::<Vec<_>>(),
        })
    }
}

fn zero_check(axiom: &str, generator: &str, m: &Matrix<Scalar>) -> AxiomCheck {
    let witness = m.first_nonzero().map(|(row, col, value)| Witness::Entry { row, col, value });
    AxiomCheck {
        axiom: axiom.into(),
        generator: generator.into(),
        passed: witness.is_none(),
        witness,
    }
}

fn block_of(rep: &Representation, m: &CertMatrix<Scalar>) -> Result<Matrix<Scalar>> {
    m.certified_block(&rep.block_cutoffs())
}

/// `R Delta(X) R^-1 = sigma Delta(X)` for every generator.
pub fn check_intertwiner(
    r_spec: &RSpec,
    hopf: &HopfData,
    rep1: &Representation,
    rep2: &Representation,
) -> Result<HopfReport> {
    same_algebra(rep1, rep2, &hopf.algebra)?;
    let checks = if rep1.is_finite() && rep2.is_finite() {
        let r = evaluate_r(r_spec, rep1, rep2)?;
        let r_inv = inverse_scalar(&r)?;
        hopf.coproduct
            .par_iter()
            .map(|(n, t)| {
                let d = tensor_matrix(t, rep1, rep2)?.matrix;
                let op = tensor_matrix(&opposite(t), rep1, rep2)?.matrix;
                Ok(zero_check("intertwiner", n, &r.mul(&d).mul(&r_inv).sub(&op)))
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        // R Delta(X) = sigma Delta(X) R on the exact rows of the block.
        let r = r_degree(r_spec, rep1, rep2, false)?;
        let cutoff = rep1.basis.cutoff.min(rep2.basis.cutoff);
        let (t1, t2) = (DegreeTarget { rep: rep1 }, DegreeTarget { rep: rep2 });
        let degree_tensor = |t: &TensorWord| -> Result<DegreeMatrix> {
            let mut acc: Option<DegreeMatrix> = None;
            for (l, rw) in &t.terms {
                let k = evaluate(l, &t1)?.kron(&evaluate(rw, &t2)?);
                acc = Some(match acc {
                    None => k,
                    Some(a) => a.add(&k),
                });
            }
            acc.ok_or_else(|| Error::Unsupported("empty coproduct".into()))
        };
        hopf.coproduct
            .iter()
            .map(|(n, t)| {
                let lhs = r.mul(&degree_tensor(t)?);
                let rhs = degree_tensor(&opposite(t))?.mul(&r);
                let diff = DegreeMatrix {
                    matrix: lhs.matrix.sub(&rhs.matrix),
                    exact: lhs.exact.min(rhs.exact),
                    ..lhs
                };
                let rows = diff.block_rows(cutoff)?;
                let all: Vec<usize> = (0..diff.matrix.cols()).collect();
                Ok(zero_check("intertwiner", n, &diff.matrix.select(&rows, &all)))
            })
            .collect::<Result<Vec<_>>>()?
    };
    Ok(HopfReport {
        algebra: hopf.algebra.clone(),
        checks,
    })
}

/// Coassociativity, counit and antipode axioms on `rep`.
pub fn check_hopf_axioms(hopf: &HopfData, rep: &Representation) -> Result<HopfReport> {
    same_algebra(rep, rep, &hopf.algebra)?;
    let dv = coproduct_rep(rep, rep, hopf)?;
    let (left, right) = rayon::join(|| coproduct_rep(&dv, rep, hopf), || coproduct_rep(rep, &dv, hopf));
    let (left, right) = (left?, right?);
    let target = MatrixTarget::new(rep);
    let mut checks = Vec::new();
    for (n, t) in &hopf.coproduct {
        let diff = left.generator(n)?.sub(right.generator(n)?);
        checks.push(zero_check("coassociativity", n, &block_of(&left, &diff)?));

        let x = Word::gen(n);
        let mut eps_left = Word::zero();
        let mut eps_right = Word::zero();
        let mut anti_left = Word::zero();
        let mut anti_right = Word::zero();
        for (l, r) in &t.terms {
            eps_left = eps_left.add(&r.scale(&hopf.counit_word(l)?));
            eps_right = eps_right.add(&l.scale(&hopf.counit_word(r)?));
            anti_left = anti_left.add(&hopf.antipode_word(l)?.mul(r));
            anti_right = anti_right.add(&l.mul(&hopf.antipode_word(r)?));
        }
        let unit = Word::scalar(hopf.counit_word(&x)?);
        for (axiom, w) in [
            ("counit (eps (x) id)", eps_left.sub(&x)),
            ("counit (id (x) eps)", eps_right.sub(&x)),
            ("antipode (S (x) id)", anti_left.sub(&unit)),
            ("antipode (id (x) S)", anti_right.sub(&unit)),
        ] {
            let m = evaluate(&w, &target)?;
            checks.push(zero_check(axiom, n, &block_of(rep, &m)?));
        }
    }
    Ok(HopfReport {
        algebra: hopf.algebra.clone(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{spin_rep, RepParams};
    use crate::scalar::{int, rat};

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn four_by_four_r_matrix() {
        let v = spin_rep(&rat(1, 2)).unwrap();
        let spec = presentation("uzsl2").unwrap().r_spec().unwrap();
        let r = evaluate_r(spec, &v, &v).unwrap();
        let z = s("1 * z");
        let want = Matrix::from_rows(vec![
            vec![s("1"), s("0"), s("0"), s("0")],
            vec![z.neg(), s("1"), s("0"), s("0")],
            vec![z.clone(), s("0"), s("1"), s("0")],
            vec![s("1 * z^2"), z.neg(), z.clone(), s("1")],
        ]);
        assert_eq!(r, want);
        assert!(check_qybe(&r));
        let mut bad = r.clone();
        bad.set(1, 0, r.get(1, 0).add(&Scalar::one()));
        assert!(!check_qybe(&bad));
    }

    #[test]
    fn coproduct_of_raising_generator_is_primitive() {
        let v = spin_rep(&rat(1, 2)).unwrap();
        let h = HopfData::of("uzsl2").unwrap();
        let d = coproduct_rep(&v, &v, h).unwrap();
        let jp = v.generator("J+").unwrap();
        let id = CertMatrix::identity(&v.legs());
        assert_eq!(d.generator("J+").unwrap().matrix, id.kron(jp).add(&jp.kron(&id)).matrix);
        let rel = crate::algebra::check_relations(&d, presentation("uzsl2").unwrap()).unwrap();
        assert!(rel.passed());
    }

    #[test]
    fn axioms_and_intertwiner_for_spin_one() {
        let v = spin_rep(&int(1)).unwrap();
        let p = presentation("uzsl2").unwrap();
        let h = p.hopf().unwrap();
        assert!(check_hopf_axioms(h, &v).unwrap().passed());
        assert!(check_intertwiner(p.r_spec().unwrap(), h, &v, &v).unwrap().passed());
    }

    #[test]
    fn intertwiner_on_truncated_oscillator_blocks() {
        let p = presentation("uzh4").unwrap();
        let params = RepParams {
            beta: Some(rat(1, 2)),
            delta: Some(int(1)),
            alpha: None,
        };
        let v = crate::rep::fock_rep_for("uzh4", params, 4, 4).unwrap();
        let rep = check_intertwiner(p.r_spec().unwrap(), p.hopf().unwrap(), &v, &v).unwrap();
        assert!(rep.passed(), "{:?}", rep);
    }

    #[test]
    fn antipode_reverses_products() {
        let h = HopfData::of("uzsl2").unwrap();
        let p = presentation("uzsl2").unwrap();
        let w = p.parse("J+ J3").unwrap();
        assert_eq!(h.antipode_word(&w).unwrap(), p.parse("J3 exp(-2z J+) J+").unwrap());
        let e = p.parse("exp(2z J+)").unwrap();
        assert_eq!(h.antipode_word(&e).unwrap(), p.parse("exp(-2z J+)").unwrap());
    }
}
