//! Reduction of `U_z sl(2,R)` coproduct representations on finite tensor
//! products into irreducible components, and the deformed Clebsch-Gordan
//! change of basis.
//!
//! All linear algebra runs over `Q(z)`, so the factor representations must
//! have radical-free entries; the monomial representations on
//! `<1, x, ..., x^(2j)>` qualify. Coordinates on `V1 (x) V2` are the products
//! `x^i y^j` with index `i * dim2 + j`.

use num_traits::Signed;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hopf::{coproduct_rep, HopfData};
use crate::matrix::linalg::{char_poly, inverse, kernel, rank, rational_roots, solve};
use crate::matrix::Matrix;
use crate::rep::{monomial_rep, Representation};
use crate::scalar::{format_rational, int, rat, Field, RatFunc, Rational, Ring, Scalar};

/// One irreducible component: its label `j` and `2j + 1` basis vectors,
/// lowest `J3` weight first.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub label: Rational,
    pub vectors: Vec<Vec<RatFunc>>,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionResult {
    /// Dimensions of the two factors.
    pub factors: (usize, usize),
    pub components: Vec<Component>,
    /// Columns are all component vectors, component by component.
    pub change_of_basis: Matrix<RatFunc>,
    /// Labels of the components, largest first.
    pub classical_rules_tag: Vec<Rational>,
    /// The reference basis used for normalization, at `z = 0`.
    pub classical: Vec<Component>,
}

pub fn scalar_to_ratfunc(s: &Scalar) -> Result<RatFunc> {
    s.as_zpoly()
        .map(RatFunc::from_poly)
        .ok_or_else(|| Error::Unsupported(format!("entry {s} has a radical; decomposition needs entries in Q(z)")))
}

fn generator_matrix(rep: &Representation, name: &str) -> Result<Matrix<RatFunc>> {
    rep.generator(name)?.matrix.try_map(scalar_to_ratfunc)
}

/// `|j1 + j2|, ..., |j1 - j2|`.
pub fn classical_rules(j1: &Rational, j2: &Rational) -> Vec<Rational> {
    let lo = (j1 - j2).abs();
    let mut out = Vec::new();
    let mut j = j1 + j2;
    while j >= lo {
        out.push(j.clone());
        j -= int(1);
    }
    out
}

/// Monomial representation of spin `j`.
pub fn spin_monomial(j: &Rational) -> Result<Representation> {
    monomial_rep("uzsl2", &(j * int(2) + int(2)))
}

/// Coproduct representation `j1 (x) j2` on monomials in `x` and `y`.
pub fn spin_product(j1: &Rational, j2: &Rational) -> Result<Representation> {
    let hopf = HopfData::of("uzsl2")?;
    coproduct_rep(&spin_monomial(j1)?, &spin_monomial(j2)?, hopf)
}

fn factor_dims(rep: &Representation) -> Result<(usize, usize)> {
    let legs = rep.legs();
    match legs.as_slice() {
        [a, b] if !a.truncated && !b.truncated => Ok((a.dim, b.dim)),
        _ => Err(Error::Unsupported(
            "decomposition needs a coproduct representation on two finite factors".into(),
        )),
    }
}

fn mat_vec(m: &Matrix<RatFunc>, v: &[RatFunc]) -> Vec<RatFunc> {
    m.mul_vec(v)
}

fn axpy(a: &RatFunc, x: &[RatFunc], y: &[RatFunc]) -> Vec<RatFunc> {
    x.iter().zip(y).map(|(xi, yi)| a.mul(xi).add(yi)).collect()
}

fn scaled(a: &RatFunc, x: &[RatFunc]) -> Vec<RatFunc> {
    x.iter().map(|xi| a.mul(xi)).collect()
}

fn independent(vs: &[Vec<RatFunc>]) -> bool {
    vs.is_empty() || rank(&Matrix::from_columns(vs)) == vs.len()
}

/// Highest-weight vectors: eigenvectors of `Delta(J3)` on `ker Delta(J+)`,
/// grouped by eigenvalue in descending order.
fn kernel_eigenvectors(jp: &Matrix<RatFunc>, j3: &Matrix<RatFunc>) -> Result<Vec<(Rational, Vec<RatFunc>)>> {
    let k = kernel(jp);
    if k.is_empty() {
        return Err(Error::NotCompletelyReducible("Delta(J+) has trivial kernel".into()));
    }
    let basis = Matrix::from_columns(&k);
    let cols: Vec<Vec<RatFunc>> = k
        .iter()
        .map(|v| {
            solve(&basis, &mat_vec(j3, v))
                .ok_or_else(|| Error::NotCompletelyReducible("Delta(J3) does not preserve ker Delta(J+)".into()))
        })
        .collect::<Result<_>>()?;
    let restricted = Matrix::from_columns(&cols);
    let poly = char_poly(&restricted)
        .iter()
        .map(|c| {
            c.as_rational()
                .ok_or_else(|| Error::NonRationalEigenvalue(format!("characteristic coefficient {c} depends on z")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut roots = rational_roots(&poly).ok_or_else(|| Error::NonRationalEigenvalue("irrational root".into()))?;
    roots.dedup();
    roots.reverse();
    let mut out = Vec::new();
    for lambda in roots {
        let shifted = restricted.sub(&Matrix::identity(k.len()).scale(&RatFunc::from_rational(lambda.clone())));
        for c in kernel(&shifted) {
            out.push((lambda.clone(), basis.mul_vec(&c)));
        }
    }
    if out.len() != k.len() {
        return Err(Error::NotCompletelyReducible(
            "Delta(J3) is not diagonalizable on ker Delta(J+)".into(),
        ));
    }
    Ok(out)
}

/// `v, J- v, J-^2 v, ...` until the next vector is dependent.
fn raw_orbit(jm: &Matrix<RatFunc>, v0: Vec<RatFunc>) -> Vec<Vec<RatFunc>> {
    let mut orbit = vec![v0];
    loop {
        let next = mat_vec(jm, orbit.last().unwrap());
        let mut trial = orbit.clone();
        trial.push(next);
        if !independent(&trial) {
            return orbit;
        }
        orbit = trial;
    }
}

fn label_of(dim: usize) -> Rational {
    rat(dim as i64 - 1, 2)
}

fn check_cover(components: &[Component], n: usize) -> Result<()> {
    let total: usize = components.iter().map(Component::dim).sum();
    let all: Vec<Vec<RatFunc>> = components.iter().flat_map(|c| c.vectors.clone()).collect();
    if total != n || !independent(&all) {
        return Err(Error::NotCompletelyReducible(format!(
            "component spans have total dimension {total} and rank {} in a space of dimension {n}",
            if all.is_empty() { 0 } else { rank(&Matrix::from_columns(&all)) }
        )));
    }
    Ok(())
}

fn l1_normalize(v: &[RatFunc]) -> Result<Vec<RatFunc>> {
    let q: Vec<Rational> = v
        .iter()
        .map(|c| c.as_rational().ok_or_else(|| Error::Unsupported("classical vector depends on z".into())))
        .collect::<Result<_>>()?;
    let norm: Rational = q.iter().map(|c| c.abs()).sum();
    let first = q.iter().find(|c| **c != int(0)).cloned().unwrap_or_else(|| int(1));
    let s = if first < int(0) { -norm.recip() } else { norm.recip() };
    Ok(q.iter().map(|c| RatFunc::from_rational(c * &s)).collect())
}

/// Classical reduction of the `z = 0` representation, each vector scaled to
/// l1-norm 1 with its first nonzero coordinate positive.
pub fn classical_basis(delta_rep: &Representation) -> Result<Vec<Component>> {
    let rep = delta_rep.classical_limit()?;
    let n = rep.dim();
    let (jp, j3, jm) = (
        generator_matrix(&rep, "J+")?,
        generator_matrix(&rep, "J3")?,
        generator_matrix(&rep, "J-")?,
    );
    let mut comps = Vec::new();
    for (_, v0) in kernel_eigenvectors(&jp, &j3)? {
        let orbit = raw_orbit(&jm, v0);
        let vectors = orbit.iter().map(|v| l1_normalize(v)).collect::<Result<_>>()?;
        comps.push(Component {
            label: label_of(orbit.len()),
            vectors,
        });
    }
    check_cover(&comps, n)?;
    Ok(comps)
}

/// Reduction with the default classical reference basis.
pub fn decompose(delta_rep: &Representation) -> Result<DecompositionResult> {
    let classical = classical_basis(delta_rep)?;
    decompose_with(delta_rep, classical)
}

/// Reduction normalized against `classical`.
///
/// Each component is matched with the classical component of the same
/// label. Its generating vector is scaled so that its coordinate on the
/// classical analogue is 1; then `v_k = J- v_(k-1) - c v_(k-1)`, where `c`
/// is the coordinate of `J- v_(k-1)` on the analogue of `v_(k-1)`, rescaled
/// so that its own analogue coordinate is 1. Components without an analogue
/// keep the raw `J-` orbit.
pub fn decompose_with(delta_rep: &Representation, classical: Vec<Component>) -> Result<DecompositionResult> {
    let factors = factor_dims(delta_rep)?;
    let n = delta_rep.dim();
    let (jp, j3, jm) = (
        generator_matrix(delta_rep, "J+")?,
        generator_matrix(delta_rep, "J3")?,
        generator_matrix(delta_rep, "J-")?,
    );
    let reference: Vec<Vec<RatFunc>> = classical.iter().flat_map(|c| c.vectors.clone()).collect();
    if reference.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "reference basis has {} vectors for dimension {n}",
            reference.len()
        )));
    }
    let to_classical = inverse(&Matrix::from_columns(&reference))
        .ok_or_else(|| Error::DimensionMismatch("reference vectors are dependent".into()))?;
    let mut offsets = Vec::new();
    let mut off = 0;
    for c in &classical {
        offsets.push(off);
        off += c.dim();
    }
    let mut used = vec![false; classical.len()];
    let mut components = Vec::new();
    for (_, v0) in kernel_eigenvectors(&jp, &j3)? {
        let orbit = raw_orbit(&jm, v0);
        let label = label_of(orbit.len());
        let analogue = (0..classical.len()).find(|&i| !used[i] && classical[i].label == label);
        let vectors = match analogue {
            None => orbit,
            Some(i) => {
                used[i] = true;
                let coord = |v: &[RatFunc], k: usize| to_classical.mul_vec(v)[offsets[i] + k].clone();
                let unit = |v: Vec<RatFunc>, k: usize| -> Result<Vec<RatFunc>> {
                    let c = coord(&v, k);
                    let inv = c.inv().ok_or_else(|| {
                        Error::NotCompletelyReducible(format!(
                            "component {} has no coordinate on its classical analogue {k}",
                            format_rational(&label)
                        ))
                    })?;
                    Ok(scaled(&inv, &v))
                };
                let mut vs = vec![unit(orbit[0].clone(), 0)?];
                for k in 1..orbit.len() {
                    let prev = &vs[k - 1];
                    let w = mat_vec(&jm, prev);
                    let c = coord(&w, k - 1);
                    vs.push(unit(axpy(&c.neg(), prev, &w), k)?);
                }
                vs
            }
        };
        components.push(Component { label, vectors });
    }
    check_cover(&components, n)?;
    if let Some(i) = used.iter().position(|u| !u) {
        return Err(Error::DimensionMismatch(format!(
            "reference component {} has no deformed analogue",
            format_rational(&classical[i].label)
        )));
    }
    let all: Vec<Vec<RatFunc>> = components.iter().flat_map(|c| c.vectors.clone()).collect();
    let mut tag: Vec<Rational> = components.iter().map(|c| c.label.clone()).collect();
    tag.sort_by(|a, b| b.cmp(a));
    Ok(DecompositionResult {
        factors,
        change_of_basis: Matrix::from_columns(&all),
        components,
        classical_rules_tag: tag,
        classical,
    })
}

/// Columns are the component vectors in the product basis.
pub fn cg_matrix(result: &DecompositionResult) -> Matrix<RatFunc> {
    result.change_of_basis.clone()
}

/// Whether the labels are `|j1 + j2| (+) ... (+) |j1 - j2|`.
pub fn follows_classical_rules(result: &DecompositionResult) -> bool {
    let (d1, d2) = result.factors;
    classical_rules(&label_of(d1), &label_of(d2)) == result.classical_rules_tag
}

fn swap_factors(v: &[RatFunc], d1: usize, d2: usize) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::zero(); v.len()];
    for i in 0..d1 {
        for j in 0..d2 {
            out[j * d1 + i] = v[i * d2 + j].clone();
        }
    }
    out
}

/// Every component span is mapped to itself by the factor swap composed
/// with `z -> -z`.
pub fn check_flip_symmetry(result: &DecompositionResult) -> bool {
    let (d1, d2) = result.factors;
    if d1 != d2 {
        return false;
    }
    result.components.iter().all(|c| {
        c.vectors.iter().all(|v| {
            let flipped: Vec<RatFunc> = swap_factors(v, d1, d2).iter().map(RatFunc::flip_z).collect();
            crate::matrix::linalg::in_span(&c.vectors, &flipped)
        })
    })
}

/// `cg^-1 Delta(X) cg` for every generator; each must be block diagonal
/// along the components.
pub fn block_diagonalize(result: &DecompositionResult, delta_rep: &Representation) -> Result<Vec<(String, Matrix<RatFunc>)>> {
    let cg = &result.change_of_basis;
    let cg_inv = inverse(cg).ok_or_else(|| Error::NotCompletelyReducible("change of basis is singular".into()))?;
    let mut block_of = Vec::new();
    for (b, c) in result.components.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(b, c.dim()));
    }
    delta_rep
        .generators
        .iter()
        .map(|(name, _)| {
            let m = cg_inv.mul(&generator_matrix(delta_rep, name)?).mul(cg);
            if let Some((r, c, v)) = m.entries().find(|(r, c, _)| block_of[*r] != block_of[*c]) {
                return Err(Error::NotCompletelyReducible(format!(
                    "{name} has off-block entry ({r},{c}) = {v}"
                )));
            }
            Ok((name.clone(), m))
        })
        .collect()
}

/// Diagonal block of component `k` in the output of [`block_diagonalize`].
pub fn component_block(result: &DecompositionResult, conjugated: &Matrix<RatFunc>, k: usize) -> Matrix<RatFunc> {
    let start: usize = result.components[..k].iter().map(Component::dim).sum();
    let idx: Vec<usize> = (start..start + result.components[k].dim()).collect();
    conjugated.select(&idx, &idx)
}

/// Representation carried by component `k`, in its own basis.
pub fn component_rep(result: &DecompositionResult, delta_rep: &Representation, k: usize) -> Result<Representation> {
    let to_scalar = |c: &RatFunc| {
        c.as_poly()
            .map(Scalar::from_zpoly)
            .ok_or_else(|| Error::Unsupported(format!("block entry {c} is not polynomial in z")))
    };
    let generators = block_diagonalize(result, delta_rep)?
        .iter()
        .map(|(n, m)| {
            let b = component_block(result, m, k).try_map(to_scalar)?;
            Ok((n.clone(), crate::matrix::CertMatrix::finite(b)))
        })
        .collect::<Result<Vec<_>>>()?;
    let d = result.components[k].dim();
    Ok(Representation {
        algebra: delta_rep.algebra.clone(),
        params: Default::default(),
        basis: crate::rep::BasisSpec {
            kind: crate::rep::BasisKind::Tensor,
            modes: delta_rep.basis.modes,
            cutoff: d,
            margin: 0,
        },
        generators,
        j_z: Some(result.components[k].label.clone()),
        normalization: None,
    })
}

/// Coordinates of `v` in the reference basis.
pub fn classical_coordinates(result: &DecompositionResult, v: &[RatFunc]) -> Result<Vec<RatFunc>> {
    let reference: Vec<Vec<RatFunc>> = result.classical.iter().flat_map(|c| c.vectors.clone()).collect();
    solve(&Matrix::from_columns(&reference), v)
        .ok_or_else(|| Error::DimensionMismatch("vector outside the reference span".into()))
}

const NAMES: [&str; 8] = ["E", "U", "V", "W", "X", "Y", "F", "G"];

fn component_name(k: usize) -> String {
    NAMES.get(k).map(|s| s.to_string()).unwrap_or_else(|| format!("C{k}"))
}

fn monomial_name(i: usize, j: usize) -> String {
    let p = |v: &str, e: usize| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let s = format!("{}{}", p("x", i), p("y", j));
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

impl DecompositionResult {
    pub fn to_json(&self) -> Result<Value> {
        let (d1, d2) = self.factors;
        let basis: Vec<String> = (0..d1 * d2).map(|k| monomial_name(k / d2, k % d2)).collect();
        let vec_json = |v: &[RatFunc]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let mut comps = Vec::new();
        for (k, c) in self.components.iter().enumerate() {
            let mut vs = Vec::new();
            for (m, v) in c.vectors.iter().enumerate() {
                let coords = classical_coordinates(self, v)?;
                let expansion: Vec<Value> = self
                    .classical
                    .iter()
                    .enumerate()
                    .flat_map(|(ck, cc)| (0..cc.dim()).map(move |cm| (ck, cm)))
                    .zip(coords)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|((ck, cm), c)| json!({"classical": format!("{}{}", component_name(ck), -(cm as i64) - 1), "coeff": c.to_string()}))
                    .collect();
                vs.push(json!({
                    "name": format!("{}{}", component_name(k), -(m as i64) - 1),
                    "coordinates": vec_json(v),
                    "classical_expansion": expansion,
                }));
            }
            comps.push(json!({"label": format_rational(&c.label), "vectors": vs}));
        }
        let classical: Vec<Value> = self
            .classical
            .iter()
            .map(|c| json!({
                "label": format_rational(&c.label),
                "vectors": c.vectors.iter().map(|v| vec_json(v)).collect::<Vec<_>>(),
            }))
            .collect();
        Ok(json!({
            "factors": [format_rational(&label_of(d1)), format_rational(&label_of(d2))],
            "basis": basis,
            "labels": self.classical_rules_tag.iter().map(format_rational).collect::<Vec<_>>(),
            "classical_rules": follows_classical_rules(self),
            "components": comps,
            "classical": classical,
        }))
    }

    /// Deformed vectors expanded in the classical ones, one display line each.
    pub fn to_latex(&self) -> Result<String> {
        let mut out = String::from("\\begin{eqnarray}\n");
        let mut lines = Vec::new();
        for (k, c) in self.components.iter().enumerate() {
            for (m, v) in c.vectors.iter().enumerate() {
                let coords = classical_coordinates(self, v)?;
                let mut rhs = String::new();
                let mut idx = 0;
                for (ck, cc) in self.classical.iter().enumerate() {
                    for cm in 0..cc.dim() {
                        let coef = &coords[idx];
                        idx += 1;
                        if coef.is_zero() {
                            continue;
                        }
                        let term = format!("{{\\bf {}}}^{{clas}}_{{{}}}", component_name(ck), -(cm as i64) - 1);
                        rhs.push_str(&signed_coeff_latex(coef, rhs.is_empty()));
                        rhs.push_str(&term);
                    }
                }
                if rhs.is_empty() {
                    rhs.push('0');
                }
                lines.push(format!("{{\\bf {}}}_{{{}}} &=& {}", component_name(k), -(m as i64) - 1, rhs));
            }
        }
        out.push_str(&lines.join(" \\nonumber\\\\\n"));
        out.push_str(" \\nonumber\n\\end{eqnarray}\n");
        Ok(out)
    }
}

fn signed_coeff_latex(c: &RatFunc, first: bool) -> String {
    let body = match c.as_poly() {
        Some(p) => crate::rep::scalar_latex(&Scalar::from_zpoly(p)),
        None => format!("\\left({c}\\right)"),
    };
    let (neg, body) = match body.strip_prefix('-') {
        Some(b) => (true, b.trim().to_string()),
        None => (false, body),
    };
    let body = if body == "1" { String::new() } else { format!("{body}\\,") };
    match (first, neg) {
        (true, false) => body,
        (true, true) => format!("-{body}"),
        (false, false) => format!(" + {body}"),
        (false, true) => format!(" - {body}"),
    }
}

/// Outcome of one product in [`explore`].
#[derive(Clone, Debug, PartialEq)]
pub struct ExplorationEntry {
    pub j1: Rational,
    pub j2: Rational,
    pub outcome: std::result::Result<Vec<Rational>, String>,
    pub classical_rules: bool,
}

impl ExplorationEntry {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "j1": format_rational(&self.j1),
            "j2": format_rational(&self.j2),
            "classical_rules": self.classical_rules,
        });
        match &self.outcome {
            Ok(labels) => v["labels"] = json!(labels.iter().map(format_rational).collect::<Vec<_>>()),
            Err(e) => v["error"] = json!(e),
        }
        v
    }
}

/// Decomposes `j1 (x) j2` for all `j1, j2 <= max_j`; failures are recorded,
/// never dropped.
pub fn explore(max_j: &Rational) -> Vec<ExplorationEntry> {
    let mut spins = Vec::new();
    let mut j = int(0);
    while &j <= max_j {
        spins.push(j.clone());
        j += rat(1, 2);
    }
    let pairs: Vec<(Rational, Rational)> = spins
        .iter()
        .flat_map(|a| spins.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    pairs
        .into_par_iter()
        .map(|(j1, j2)| {
            let outcome = spin_product(&j1, &j2)
                .and_then(|rep| decompose(&rep))
                .map(|r| r.classical_rules_tag)
                .map_err(|e| e.to_string());
            let classical_rules = outcome.as_ref().is_ok_and(|l| *l == classical_rules(&j1, &j2));
            ExplorationEntry {
                j1,
                j2,
                outcome,
                classical_rules,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ZPoly;

    fn poly(c: &[(i64, i64, i32)]) -> RatFunc {
        let mut p = ZPoly::default();
        for &(n, d, k) in c {
            p = p.add(&ZPoly::monomial(rat(n, d), k));
        }
        RatFunc::from_poly(p)
    }

    #[test]
    fn rules_for_small_spins() {
        assert_eq!(classical_rules(&int(1), &rat(1, 2)), vec![rat(3, 2), rat(1, 2)]);
        assert_eq!(classical_rules(&int(0), &int(1)), vec![int(1)]);
    }

    #[test]
    fn half_times_half_is_triplet_plus_singlet() {
        let rep = spin_product(&rat(1, 2), &rat(1, 2)).unwrap();
        let r = decompose(&rep).unwrap();
        assert_eq!(r.classical_rules_tag, vec![int(1), int(0)]);
        assert!(follows_classical_rules(&r));
        assert!(check_flip_symmetry(&r));
        block_diagonalize(&r, &rep).unwrap();
        // E_{-1} = 1
        assert_eq!(r.components[0].vectors[0], vec![poly(&[(1, 1, 0)]), RatFunc::zero(), RatFunc::zero(), RatFunc::zero()]);
    }

    #[test]
    fn swapping_a_vector_breaks_flip_symmetry() {
        let rep = spin_product(&rat(1, 2), &rat(1, 2)).unwrap();
        let mut r = decompose(&rep).unwrap();
        r.components[1].vectors[0] = vec![RatFunc::zero(), RatFunc::one(), RatFunc::from_i64(2), RatFunc::zero()];
        assert!(!check_flip_symmetry(&r));
    }

    #[test]
    fn blocks_carry_the_spin_casimir() {
        let rep = spin_product(&int(1), &int(1)).unwrap();
        let r = decompose(&rep).unwrap();
        let pres = crate::algebra::presentation("uzsl2").unwrap();
        for (k, c) in r.components.iter().enumerate() {
            let b = component_rep(&r, &rep, k).unwrap();
            assert!(crate::algebra::check_relations(&b, pres).unwrap().passed());
            let want = &c.label * (&c.label + int(1)) * int(2);
            let got = crate::algebra::casimir_value(&b, pres).unwrap();
            assert_eq!(got.scalar(), Some(&Scalar::from_rational(want)));
        }
    }

    #[test]
    fn deformed_basis_reduces_to_the_reference_at_zero() {
        let rep = spin_product(&int(1), &rat(1, 2)).unwrap();
        let r = decompose(&rep).unwrap();
        let at0 = r.change_of_basis.map(|c| RatFunc::from_rational(c.eval(&int(0)).unwrap()));
        let reference: Vec<Vec<RatFunc>> = r.classical.iter().flat_map(|c| c.vectors.clone()).collect();
        assert_eq!(at0, Matrix::from_columns(&reference));
    }

    #[test]
    fn one_times_half_reduces() {
        let rep = spin_product(&int(1), &rat(1, 2)).unwrap();
        let r = decompose(&rep).unwrap();
        assert_eq!(r.classical_rules_tag, vec![rat(3, 2), rat(1, 2)]);
        assert_eq!(block_diagonalize(&r, &rep).unwrap().len(), 3);
    }
}
