//! Acceptance suite: one line per criterion, exact arithmetic throughout.
//!
//! Status is PASS, DEVIATION (every check passes except values the source
//! prints incorrectly; the printed values are shown to be wrong and the
//! computed ones to be right) or FAIL. The process exits non-zero on FAIL
//! or when a deviation differs from the frozen list.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use uzalg::algebra::{casimir_value, check_realization, check_relations, presentation};
use uzalg::contract::{contract_casimir, contract_hopf, contract_r, contract_realization, hopf_mismatches, scheme, Level};
use uzalg::decompose::{
    block_diagonalize, check_flip_symmetry, classical_coordinates, component_rep, decompose_with, explore,
    follows_classical_rules, spin_product, Component,
};
use uzalg::hopf::{check_hopf_axioms, check_intertwiner, check_qybe, coproduct_rep, evaluate_r, HopfData};
use uzalg::matrix::linalg::in_span;
use uzalg::matrix::Matrix;
use uzalg::realization::{Params, RealizationId, ALL_REALIZATIONS};
use uzalg::rep::{fock_rep, fock_rep_for, quotient_rep, RepParams, Representation};
use uzalg::scalar::{int, rat, RatFunc, Rational, Ring, Scalar, ZPoly};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    Pass,
    Deviation,
    Fail,
}

struct Outcome {
    status: Status,
    detail: String,
    /// Deviations found, compared against the frozen list.
    deviations: Vec<String>,
}

/// Collects checks for one criterion.
#[derive(Default)]
struct Tally {
    failures: Vec<String>,
    deviations: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn deviation(&mut self, what: impl Into<String>) {
        self.deviations.push(what.into());
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn finish(self) -> Outcome {
        let status = if !self.failures.is_empty() {
            Status::Fail
        } else if !self.deviations.is_empty() {
            Status::Deviation
        } else {
            Status::Pass
        };
        let mut parts = self.notes;
        if !self.deviations.is_empty() {
            parts.push(format!("misprints: {}", self.deviations.join("; ")));
        }
        if !self.failures.is_empty() {
            parts.push(format!("failed: {}", self.failures.join("; ")));
        }
        Outcome {
            status,
            detail: parts.join(". "),
            deviations: self.deviations,
        }
    }
}

fn guard(f: impl FnOnce(&mut Tally) -> uzalg::Result<()>) -> Outcome {
    let mut t = Tally::default();
    if let Err(e) = f(&mut t) {
        t.check(false, format!("error: {e}"));
    }
    t.finish()
}

/// Printed-style entry: `"."` is zero; `sqrt(a/b)` is allowed.
fn entry(s: &str) -> Scalar {
    if s == "." {
        return Scalar::zero();
    }
    let mut text = s.to_string();
    if let Some(start) = text.find("sqrt(") {
        let end = start + text[start..].find(')').unwrap();
        let inner = &text[start + 5..end];
        if let Some((a, b)) = inner.split_once('/') {
            let (a, b): (u64, u64) = (a.parse().unwrap(), b.parse().unwrap());
            text = format!("{}1/{b} * sqrt({}){}", &text[..start], a * b, &text[end + 1..]);
        }
    }
    text.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn matrix(rows: &[&[&str]]) -> Matrix<Scalar> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| entry(s)).collect()).collect())
}

fn beta(b: i64) -> RepParams {
    RepParams::beta(int(b))
}

fn bd(b: Rational, d: Rational) -> RepParams {
    RepParams {
        beta: Some(b),
        delta: Some(d),
        alpha: None,
    }
}

fn alpha(a: Rational) -> RepParams {
    RepParams {
        beta: None,
        delta: None,
        alpha: Some(a),
    }
}

fn spin(j2: i64) -> uzalg::Result<Representation> {
    quotient_rep("uzsl2", beta(-j2))
}

// ---------------------------------------------------------------- 1

fn criterion_1() -> Outcome {
    guard(|t| {
        let ek = [
            ("J+", matrix(&[&[".", "."], &["1", "."]])),
            ("J-", matrix(&[&[".", "1"], &["-1/4 * z^2", "z"]])),
            ("J3", matrix(&[&["-1", "."], &["-1 * z", "1"]])),
        ];
        let el = [
            ("J+", matrix(&[&[".", ".", "."], &["1", ".", "."], &[".", "sqrt(2)", "."]])),
            (
                "J-",
                matrix(&[
                    &[".", "2", "."],
                    &["-1 * z^2", "2 * z", "sqrt(2)"],
                    &["-1 * sqrt(2) * z^3", "sqrt(2) * z^2", "2 * z"],
                ]),
            ),
            (
                "J3",
                matrix(&[&["-2", ".", "."], &["-2 * z", ".", "."], &["-2 * sqrt(2) * z^2", ".", "2"]]),
            ),
        ];
        let em = [
            (
                "J+",
                matrix(&[
                    &[".", ".", ".", "."],
                    &["1", ".", ".", "."],
                    &[".", "sqrt(2)", ".", "."],
                    &[".", ".", "sqrt(3)", "."],
                ]),
            ),
            (
                "J3",
                matrix(&[
                    &["-3", ".", ".", "."],
                    &["-3 * z", "-1", ".", "."],
                    &["-2 * sqrt(2) * z^2", "-1 * sqrt(2) * z", "1", "."],
                    &["-2 * sqrt(6) * z^3", "-5 * sqrt(2/3) * z^2", "sqrt(3) * z", "3"],
                ]),
            ),
            (
                "J-",
                matrix(&[
                    &[".", "3", ".", "."],
                    &["-9/4 * z^2", "3 * z", "2 * sqrt(2)", "."],
                    &["-9/2 * sqrt(1/2) * z^3", "3/2 * sqrt(1/2) * z^2", "4 * z", "sqrt(3)"],
                    &["-3 * sqrt(3/2) * z^4", "-1/2 * sqrt(3/2) * z^3", "29/4 * sqrt(1/3) * z^2", "3 * z"],
                ]),
            ),
        ];
        let pres = presentation("uzsl2")?;
        for (b, printed) in [(1, &ek[..]), (2, &el[..]), (3, &em[..])] {
            let rep = quotient_rep("uzsl2", beta(-b))?;
            t.check(check_relations(&rep, pres)?.passed(), format!("beta=-{b} relations"));
            for (name, want) in printed {
                let got = rep.block(name)?;
                let mut bad = Vec::new();
                for r in 0..got.rows() {
                    for c in 0..got.cols() {
                        if got.get(r, c) != want.get(r, c) {
                            bad.push((r, c));
                        }
                    }
                }
                for (r, c) in bad {
                    // a printed entry counts as a misprint only when it breaks the relations
                    let mut wrong = rep.clone();
                    for (n, m) in wrong.generators.iter_mut() {
                        if n == name {
                            m.matrix.set(r, c, want.get(r, c));
                        }
                    }
                    let rejected = !check_relations(&wrong, pres)?.passed();
                    t.check(rejected, format!("beta=-{b} {name}[{r}][{c}] differs but the printed value also satisfies the relations"));
                    if rejected {
                        t.deviation(format!(
                            "beta=-{b} {name}[{r}][{c}] printed {} violates the relations, computed {}",
                            want.get(r, c),
                            got.get(r, c)
                        ));
                    }
                }
            }
        }
        t.note("2-, 3- and 4-dim quotient matrices compared entry-for-entry with symbolic z; all nine computed matrices satisfy the deformed relations");
        Ok(())
    })
}

// ---------------------------------------------------------------- 2

fn criterion_2() -> Outcome {
    guard(|t| {
        let pres = presentation("uzsl2")?;
        let r4 = matrix(&[
            &["1", ".", ".", "."],
            &["-1 * z", "1", ".", "."],
            &["z", ".", "1", "."],
            &["z^2", "-1 * z", "z", "1"],
        ]);
        let s = "2 * sqrt(2) * z^2";
        let r9 = matrix(&[
            &["1", ".", ".", ".", ".", ".", ".", ".", "."],
            &["-2 * z", "1", ".", ".", ".", ".", ".", ".", "."],
            &[s, "-2 * sqrt(2) * z", "1", ".", ".", ".", ".", ".", "."],
            &["2 * z", ".", ".", "1", ".", ".", ".", ".", "."],
            &[".", ".", ".", ".", "1", ".", ".", ".", "."],
            &[".", s, "-2 * z", ".", ".", "1", ".", ".", "."],
            &[s, ".", ".", "2 * sqrt(2) * z", ".", ".", "1", ".", "."],
            &[".", ".", ".", s, ".", ".", "2 * z", "1", "."],
            &[".", "-4 * z^3", s, "4 * z^3", ".", "-2 * sqrt(2) * z", s, "2 * sqrt(2) * z", "1"],
        ]);
        for (b, want) in [(1, r4), (2, r9)] {
            let v = spin(b)?;
            let r = evaluate_r(pres.r_spec()?, &v, &v)?;
            t.check(r == want, format!("R on beta=-{b} differs from the printed matrix"));
            t.check(check_qybe(&r), format!("QYBE on beta=-{b}"));
            let n = r.rows();
            let mut caught = 0;
            let mut mutants = 0;
            for (i, j) in [(1, 0), (n - 1, 0), (n - 1, 1), (2, 0), (n - 1, n - 2)] {
                let mut m = r.clone();
                m.set(i, j, r.get(i, j).add(&Scalar::z()));
                mutants += 1;
                if !check_qybe(&m) {
                    caught += 1;
                }
            }
            let mut m = r.clone();
            m.set(0, n - 1, Scalar::z());
            mutants += 1;
            if !check_qybe(&m) {
                caught += 1;
            }
            t.check(caught == mutants, format!("beta=-{b}: {caught}/{mutants} mutants rejected"));
        }
        t.note("4x4 and 9x9 R-matrices equal the printed ones exactly, satisfy QYBE, and 12/12 perturbation mutants fail QYBE");
        Ok(())
    })
}

// ---------------------------------------------------------------- 3

fn criterion_3() -> Outcome {
    guard(|t| {
        let q = presentation("uzsl2")?;
        for (b, want) in [(1, rat(3, 2)), (2, int(4)), (3, rat(15, 2))] {
            let v = casimir_value(&spin(b)?, q)?;
            t.check(
                v.scalar() == Some(&Scalar::from_rational(want.clone())),
                format!("C_z on beta=-{b}"),
            );
        }
        let cl = presentation("sl2")?;
        for b in 1..=6 {
            let bq = int(-b);
            let want = &bq * (&bq / int(2) - int(1));
            let v = casimir_value(&quotient_rep("sl2", beta(-b))?, cl)?;
            t.check(v.scalar() == Some(&Scalar::from_rational(want)), format!("classical C on beta=-{b}"));
        }
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..5 {
            let b = rat(rng.gen_range(-40..40), rng.gen_range(1..12));
            let d = rat(rng.gen_range(1..40), rng.gen_range(1..12));
            let want = Scalar::from_rational(&d * (&b * int(2) - int(1)));
            for alg in ["h4", "uzh4"] {
                let rep = fock_rep_for(alg, bd(b.clone(), d.clone()), 4, 4)?;
                let v = casimir_value(&rep, presentation(alg)?)?;
                t.check(v.scalar() == Some(&want), format!("{alg} Casimir at beta={b}, delta={d}"));
            }
        }
        t.note("3/2, 4, 15/2 for j=1/2,1,3/2; beta(beta/2-1) for beta=-1..-6; delta(2beta-1) for 5 seeded random (beta,delta) on h4 and U_z h4");
        Ok(())
    })
}

// ---------------------------------------------------------------- 4

fn params_for(id: RealizationId) -> RepParams {
    let p = id.parameters();
    RepParams {
        beta: p.contains(&"beta").then(|| rat(1, 3)),
        delta: p.contains(&"delta").then(|| rat(5, 2)),
        alpha: p.contains(&"alpha").then(|| rat(3, 2)),
    }
}

fn criterion_4() -> Outcome {
    guard(|t| {
        let jobs: Vec<(RealizationId, usize)> = ALL_REALIZATIONS
            .iter()
            .flat_map(|&id| [4, 6, 8].map(|c| (id, c)))
            .collect();
        let results: Vec<(RealizationId, usize, uzalg::Result<bool>)> = jobs
            .par_iter()
            .map(|&(id, cutoff)| {
                let p = params_for(id);
                let ok = id.build(&p.to_params()).and_then(|real| {
                    let rep = fock_rep(&real, p, cutoff, 4)?;
                    Ok(check_relations(&rep, presentation(id.algebra())?)?.passed())
                });
                (id, cutoff, ok)
            })
            .collect();
        for (id, cutoff, ok) in results {
            t.check(matches!(ok, Ok(true)), format!("{id} at cutoff {cutoff}: {ok:?}"));
        }
        t.note("13 realizations x cutoffs 4, 6, 8 (margin 4) satisfy their presentation relations on the certified block");
        Ok(())
    })
}

// ---------------------------------------------------------------- 5

fn poly(terms: &[(i64, i64, i32)]) -> RatFunc {
    let mut p = ZPoly::zero();
    for &(n, d, k) in terms {
        p = p.add(&ZPoly::monomial(rat(n, d), k));
    }
    RatFunc::from_poly(p)
}

fn qvec(xs: &[(i64, i64)]) -> Vec<RatFunc> {
    xs.iter().map(|&(n, d)| RatFunc::from_rational(rat(n, d))).collect()
}

/// Product-basis vector from coordinates on the reference vectors.
fn combine(reference: &[Vec<RatFunc>], coords: &[RatFunc]) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::zero(); reference[0].len()];
    for (v, c) in reference.iter().zip(coords) {
        for (o, x) in out.iter_mut().zip(v) {
            *o = o.add(&c.mul(x));
        }
    }
    out
}

fn criterion_5() -> Outcome {
    guard(|t| {
        let z0 = (0, 1, 0);
        // 1/2 (x) 1/2 on 1, y, x, xy
        let rep = spin_product(&rat(1, 2), &rat(1, 2))?;
        let reference = vec![
            Component {
                label: int(1),
                vectors: vec![qvec(&[(1, 1), (0, 1), (0, 1), (0, 1)]), qvec(&[(0, 1), (1, 2), (1, 2), (0, 1)]), qvec(&[(0, 1), (0, 1), (0, 1), (1, 1)])],
            },
            Component {
                label: int(0),
                vectors: vec![qvec(&[(0, 1), (-1, 2), (1, 2), (0, 1)])],
            },
        ];
        let res = decompose_with(&rep, reference)?;
        let cob: Vec<Vec<RatFunc>> = vec![
            vec![poly(&[(1, 1, 0)]), poly(&[z0]), poly(&[z0]), poly(&[z0])],
            vec![poly(&[z0]), poly(&[(1, 1, 0)]), poly(&[z0]), poly(&[z0])],
            vec![poly(&[(3, 4, 2)]), poly(&[z0]), poly(&[(1, 1, 0)]), poly(&[(1, 1, 1)])],
            vec![poly(&[(1, 2, 1)]), poly(&[z0]), poly(&[z0]), poly(&[(1, 1, 0)])],
        ];
        let got: Vec<Vec<RatFunc>> = res
            .components
            .iter()
            .flat_map(|c| c.vectors.iter())
            .map(|v| classical_coordinates(&res, v))
            .collect::<uzalg::Result<_>>()?;
        t.check(got == cob, "1/2 x 1/2 change of basis differs from the printed one");
        t.check(check_flip_symmetry(&res), "flip symmetry of 1/2 x 1/2");
        t.check(follows_classical_rules(&res), "1/2 x 1/2 = 1 + 0");
        blocks_ok(t, &res, &rep, "1/2 x 1/2")?;

        // 1 (x) 1/2 on 1, y, x, xy, x^2, x^2 y
        let rep = spin_product(&int(1), &rat(1, 2))?;
        let e = vec![
            qvec(&[(1, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)]),
            qvec(&[(0, 1), (1, 3), (2, 3), (0, 1), (0, 1), (0, 1)]),
            qvec(&[(0, 1), (0, 1), (0, 1), (2, 3), (1, 3), (0, 1)]),
            qvec(&[(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 1)]),
        ];
        let u = vec![
            qvec(&[(0, 1), (1, 2), (-1, 2), (0, 1), (0, 1), (0, 1)]),
            qvec(&[(0, 1), (0, 1), (0, 1), (1, 2), (-1, 2), (0, 1)]),
        ];
        let reference = vec![
            Component { label: rat(3, 2), vectors: e.clone() },
            Component { label: rat(1, 2), vectors: u.clone() },
        ];
        let all: Vec<Vec<RatFunc>> = e.iter().chain(&u).cloned().collect();
        let res = decompose_with(&rep, reference)?;
        t.check(follows_classical_rules(&res), "1 x 1/2 = 3/2 + 1/2");
        blocks_ok(t, &res, &rep, "1 x 1/2")?;
        let (h32, h12) = (&res.components[0].vectors, &res.components[1].vectors);
        let zero = || poly(&[z0]);
        let one = || poly(&[(1, 1, 0)]);
        // coordinates on E1..E4, U1, U2
        let printed: Vec<(&str, &Vec<Vec<RatFunc>>, Vec<RatFunc>)> = vec![
            ("E-1", h32, vec![one(), zero(), zero(), zero(), zero(), zero()]),
            ("E-2", h32, vec![zero(), one(), zero(), zero(), zero(), zero()]),
            ("E-3", h32, vec![poly(&[(3, 4, 2)]), zero(), one(), zero(), poly(&[(-2, 3, 1)]), zero()]),
            (
                "E-4",
                h32,
                vec![poly(&[(-9, 4, 3), (-1, 3, 2)]), poly(&[(9, 4, 2)]), zero(), one(), zero(), poly(&[(-2, 1, 1)])],
            ),
            ("U-1", h12, vec![zero(), poly(&[(-1, 2, 1)]), zero(), zero(), one(), zero()]),
            ("U-2", h12, vec![zero(), poly(&[(3, 8, 2)]), poly(&[(-3, 8, 1)]), zero(), zero(), one()]),
        ];
        for (name, span, coords) in &printed {
            if !in_span(span, &combine(&all, coords)) {
                t.deviation(format!("1 x 1/2 {name} is not in its invariant subspace"));
            }
        }
        // E-4 with its last term read as -z^2/3 U1
        let e4_alt = vec![poly(&[(-9, 4, 3)]), poly(&[(9, 4, 2)]), zero(), one(), poly(&[(-1, 3, 2)]), poly(&[(-2, 1, 1)])];
        t.check(in_span(h32, &combine(&all, &e4_alt)), "E-4 with -z^2/3 U1 lies in H_3/2");
        // frozen computed vectors
        let frozen = vec![
            vec![one(), zero(), zero(), zero(), zero(), zero()],
            vec![zero(), one(), zero(), zero(), zero(), zero()],
            vec![poly(&[(5, 8, 2)]), zero(), one(), zero(), poly(&[(-2, 3, 1)]), zero()],
            vec![poly(&[(-5, 4, 3)]), poly(&[(27, 8, 2)]), zero(), one(), poly(&[(-1, 3, 2)]), poly(&[(-2, 1, 1)])],
            vec![poly(&[(-3, 4, 1)]), zero(), zero(), zero(), one(), zero()],
            vec![poly(&[(3, 8, 2)]), poly(&[(-3, 4, 1)]), zero(), zero(), zero(), one()],
        ];
        let got: Vec<Vec<RatFunc>> = res
            .components
            .iter()
            .flat_map(|c| c.vectors.iter())
            .map(|v| classical_coordinates(&res, v))
            .collect::<uzalg::Result<_>>()?;
        t.check(got == frozen, "1 x 1/2 computed basis differs from the frozen one");
        t.note("1/2 x 1/2 reproduces the printed change of basis exactly with flip symmetry; 1 x 1/2 reduces as 3/2 + 1/2 with E-1, E-2, E-3 (printed E-3 lies in the computed H_3/2) and blocks equal to the spin-3/2 and spin-1/2 quotients; printed E-4 is invariant once its last term is read as -z^2/3 U1");
        Ok(())
    })
}

fn blocks_ok(t: &mut Tally, res: &uzalg::decompose::DecompositionResult, rep: &Representation, what: &str) -> uzalg::Result<()> {
    block_diagonalize(res, rep)?;
    let pres = presentation("uzsl2")?;
    for (k, c) in res.components.iter().enumerate() {
        let block = component_rep(res, rep, k)?;
        t.check(check_relations(&block, pres)?.passed(), format!("{what} block {k} relations"));
        let twice = &c.label * int(2);
        let want = if c.label == int(0) {
            Scalar::zero()
        } else {
            let quotient = quotient_rep("uzsl2", RepParams::beta(-twice))?;
            casimir_value(&quotient, pres)?.scalar().cloned().expect("scalar Casimir")
        };
        t.check(casimir_value(&block, pres)?.scalar() == Some(&want), format!("{what} block {k} Casimir"));
    }
    Ok(())
}

// ---------------------------------------------------------------- 6

fn criterion_6() -> Outcome {
    guard(|t| {
        let a = rat(3, 2);
        let (b, d) = (rat(1, 3), rat(5, 2));
        let expected: [(&str, Level, Params, Vec<(&str, String)>); 4] = [
            (
                "sl2-to-poincare",
                Level::Classical,
                Params::rational(None, None, Some(a.clone())),
                vec![("P+", "(1/1)*a+^1".into()), ("K", "(1/1)*a+^1*a-^1 + (-1/1)*b+^1*b-^1".into()), ("P-", "(3/2)*b+^1".into())],
            ),
            (
                "sl2-to-poincare",
                Level::Quantum,
                Params::rational(None, None, Some(a.clone())),
                vec![
                    ("P+", "(1/1)*a+^1".into()),
                    ("K", "(1/2 * z^-1)*E[2z,a+]*a-^1 + (-1/2 * z^-1)*a-^1 + (-1/1)*b+^1*b-^1".into()),
                    ("P-", "(3/2)*b+^1".into()),
                ],
            ),
            (
                "ext-to-h4",
                Level::Classical,
                Params::rational(Some(b.clone()), Some(d.clone()), None),
                vec![
                    ("N", "(1/1)*a+^1*a-^1 + (1/3)".into()),
                    ("A+", "(1/1)*a+^1".into()),
                    ("A-", "(5/2)*a-^1".into()),
                    ("M", "(5/2)".into()),
                ],
            ),
            (
                "ext-to-h4",
                Level::Quantum,
                Params::rational(Some(b.clone()), Some(d.clone()), None),
                vec![
                    ("A+", "(1/1)*a+^1".into()),
                    ("M", "(5/2)".into()),
                    ("A-", "(5/2)*E[2z,a+]*a-^1 + (5/6 * z^1)*E[2z,a+]".into()),
                    (
                        "N",
                        "(1/2 * z^-1)*E[2z,a+]*a-^1 + (-1/2 * z^-1)*a-^1 + (1/6)*E[2z,a+] + (1/6)".into(),
                    ),
                ],
            ),
        ];
        for (id, level, params, gens) in expected {
            let s = scheme(id)?;
            let real = contract_realization(s, level, &params)?;
            for (name, text) in gens {
                let want: uzalg::boson::BosonExpr = text.parse()?;
                t.check(real.get(name)? == &want, format!("{id} {level:?} {name} = {}", real.get(name)?));
            }
            let (src, dst) = s.algebras(level);
            let (src, dst) = (presentation(src)?, presentation(dst)?);
            t.check(check_realization(&real, dst)?.passed(), format!("{id} {level:?} commutators"));
            let hopf = contract_hopf(s, src.hopf()?, level)?;
            let bad = hopf_mismatches(dst, &hopf)?;
            t.check(bad.is_empty(), format!("{id} {level:?} Hopf data: {bad:?}"));
            let c = contract_casimir(s, src.casimir.as_ref().expect("casimir"))?;
            t.check(dst.words_equal(&c, dst.casimir.as_ref().expect("casimir")), format!("{id} {level:?} Casimir {c}"));
            if level == Level::Quantum {
                let r = contract_r(s, src.r_spec()?, level)?;
                t.check(r.to_json() == dst.r_spec()?.to_json(), format!("{id} R-matrix"));
            }
        }
        t.note("contracted realizations equal the printed two-boson Poincare (classical and deformed) and one-boson h4 (classical and deformed) expressions; contracted coproducts, counits, antipodes, commutators, Casimirs and R-matrices equal the target presentations");
        Ok(())
    })
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Outcome {
    guard(|t| {
        let mut reps: Vec<(&str, Representation)> = Vec::new();
        for b in 1..=3 {
            reps.push(("uzsl2", spin(b)?));
        }
        for b in 1..=3 {
            // beta - delta = -b
            reps.push(("uzsl2ext", quotient_rep("uzsl2ext", bd(rat(1, 2) - int(b), rat(1, 2)))?));
        }
        // band-1 coproduct terms: margin 1 certifies the cutoff-4 block
        reps.push(("uzpoincare", fock_rep_for("uzpoincare", alpha(rat(3, 2)), 4, 1)?));
        reps.push(("uzh4", fock_rep_for("uzh4", bd(rat(1, 3), rat(5, 2)), 4, 4)?));
        let axioms: Vec<(String, bool)> = reps
            .par_iter()
            .map(|(alg, rep)| {
                let ok = HopfData::of(alg).and_then(|h| check_hopf_axioms(h, rep)).map(|r| r.passed());
                (format!("{alg} dim {}", rep.dim()), matches!(ok, Ok(true)))
            })
            .collect();
        for (what, ok) in axioms {
            t.check(ok, format!("Hopf axioms on {what}"));
        }
        let sl2 = presentation("uzsl2")?;
        for (b1, b2) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let r = check_intertwiner(sl2.r_spec()?, sl2.hopf()?, &spin(b1)?, &spin(b2)?)?;
            t.check(r.passed(), format!("U_z sl2 intertwiner on beta=-{b1},-{b2}"));
        }
        let ext = presentation("uzsl2ext")?;
        for b in 1..=2 {
            let v = quotient_rep("uzsl2ext", bd(rat(1, 2) - int(b), rat(1, 2)))?;
            let r = check_intertwiner(ext.r_spec()?, ext.hopf()?, &v, &v)?;
            t.check(r.passed(), format!("extended intertwiner on dim {}", v.dim()));
        }
        let h4 = presentation("uzh4")?;
        let v = fock_rep_for("uzh4", bd(rat(1, 3), rat(5, 2)), 4, 4)?;
        t.check(check_intertwiner(h4.r_spec()?, h4.hopf()?, &v, &v)?.passed(), "U_z h4 intertwiner on the cutoff-4 block");
        t.note("coassociativity, counit and antipode hold for U_z sl2 and its extension (j <= 3/2), U_z P(1+1) and U_z h4 (cutoff-4 blocks); R Delta R^-1 = sigma Delta for U_z sl2 (j <= 1), the extended algebra including J- (j <= 1) and U_z h4");
        Ok(())
    })
}

// ---------------------------------------------------------------- 8

fn criterion_8() -> Outcome {
    guard(|t| {
        for (q, c) in [
            (RealizationId::GdQuantum, RealizationId::Gd),
            (RealizationId::TwoBosonQuantum, RealizationId::TwoBoson),
            (RealizationId::PoincareQuantum, RealizationId::Poincare),
            (RealizationId::ExtendedQuantum, RealizationId::Extended),
            (RealizationId::H4Quantum, RealizationId::H4),
        ] {
            let p = params_for(q).to_params();
            let lim = q.build(&p)?.classical_limit()?;
            t.check(lim.generators == c.build(&p)?.generators, format!("{q} at z=0"));
        }
        // printed classical matrices for beta = -1
        let cgc = [
            ("J+", matrix(&[&[".", "."], &["1", "."]])),
            ("J-", matrix(&[&[".", "1"], &[".", "."]])),
            ("J3", matrix(&[&["-1", "."], &[".", "1"]])),
        ];
        let lim = spin(1)?.classical_limit()?;
        for (n, m) in &cgc {
            t.check(&lim.block(n)? == m, format!("beta=-1 {n} at z=0"));
        }
        for b in 1..=4 {
            let lim = spin(b)?.classical_limit()?;
            let cl = quotient_rep("sl2", beta(-b))?;
            for n in ["J+", "J3", "J-"] {
                t.check(lim.block(n)? == cl.block(n)?, format!("beta=-{b} {n} at z=0"));
            }
        }
        // lower bounded series: J+ = sqrt(m+1), J3 = 2m + beta, J- = -sqrt(m)(m-1+beta)
        let bq = rat(1, 3);
        let lim = fock_rep_for("uzsl2", RepParams::beta(bq.clone()), 6, 4)?.classical_limit()?;
        let n = lim.block_dim();
        let mut jp = Matrix::zeros(n, n);
        let mut j3 = Matrix::zeros(n, n);
        let mut jm = Matrix::zeros(n, n);
        for m in 0..n {
            let mq = int(m as i64);
            j3.set(m, m, Scalar::from_rational(&mq * int(2) + &bq));
            if m + 1 < n {
                jp.set(m + 1, m, Scalar::sqrt_int(m as u64 + 1));
            }
            if m > 0 {
                let s = Scalar::sqrt_int(m as u64).scale(&(-(&mq - int(1) + &bq)));
                jm.set(m - 1, m, s);
            }
        }
        for (name, want) in [("J+", jp), ("J3", j3), ("J-", jm)] {
            t.check(lim.block(name)? == want, format!("lower bounded {name} at z=0"));
        }
        // coproducts
        let pairs: [(&str, &str, Representation, Representation); 4] = [
            ("uzsl2", "sl2", spin(2)?, quotient_rep("sl2", beta(-2))?),
            (
                "uzsl2ext",
                "sl2ext",
                quotient_rep("uzsl2ext", bd(rat(-3, 2), rat(1, 2)))?,
                quotient_rep("sl2ext", bd(rat(-3, 2), rat(1, 2)))?,
            ),
            (
                "uzpoincare",
                "poincare",
                fock_rep_for("uzpoincare", alpha(rat(3, 2)), 3, 4)?,
                fock_rep_for("poincare", alpha(rat(3, 2)), 3, 4)?,
            ),
            (
                "uzh4",
                "h4",
                fock_rep_for("uzh4", bd(rat(1, 3), rat(5, 2)), 3, 4)?,
                fock_rep_for("h4", bd(rat(1, 3), rat(5, 2)), 3, 4)?,
            ),
        ];
        for (q, c, vq, vc) in &pairs {
            let dq = coproduct_rep(vq, vq, HopfData::of(q)?)?.classical_limit()?;
            let dc = coproduct_rep(vc, vc, HopfData::of(c)?)?;
            for n in dc.names() {
                t.check(dq.block(n)? == dc.block(n)?, format!("{q} coproduct of {n} at z=0"));
            }
            let rq = presentation(q)?;
            if vq.is_finite() {
                let r = evaluate_r(rq.r_spec()?, vq, vq)?.try_map(|s| s.specialize(&int(0)))?;
                t.check(r == Matrix::identity(r.rows()), format!("{q} R at z=0"));
            }
        }
        // decomposition at z=0 is the classical basis
        let rep = spin_product(&rat(1, 2), &rat(1, 2))?;
        let res = decompose_with(
            &rep,
            vec![
                Component {
                    label: int(1),
                    vectors: vec![qvec(&[(1, 1), (0, 1), (0, 1), (0, 1)]), qvec(&[(0, 1), (1, 2), (1, 2), (0, 1)]), qvec(&[(0, 1), (0, 1), (0, 1), (1, 1)])],
                },
                Component { label: int(0), vectors: vec![qvec(&[(0, 1), (-1, 2), (1, 2), (0, 1)])] },
            ],
        )?;
        for (c, r) in res.components.iter().zip(&res.classical) {
            for (v, w) in c.vectors.iter().zip(&r.vectors) {
                let at0: Vec<Rational> = v.iter().map(|x| x.eval(&int(0))).collect::<uzalg::Result<_>>()?;
                let w: Vec<Rational> = w.iter().map(|x| x.as_rational().expect("rational")).collect();
                t.check(at0 == w, "1/2 x 1/2 basis at z=0");
            }
        }
        t.note("z=0 limits of the five deformed realizations, the quotient and lower bounded matrices, the four coproduct representations, the R-matrices and the 1/2 x 1/2 basis equal the independently built classical objects");
        Ok(())
    })
}

// ---------------------------------------------------------------- 9

fn criterion_9() -> Outcome {
    guard(|t| {
        let entries = explore(&rat(3, 2));
        let mut lines = Vec::new();
        for e in &entries {
            match &e.outcome {
                Ok(_) => t.check(e.classical_rules, format!("{} x {} labels differ from the classical rules", e.j1, e.j2)),
                Err(msg) => t.check(false, format!("{} x {}: {msg}", e.j1, e.j2)),
            }
            lines.push(e.to_json().to_string());
        }
        t.check(entries.len() == 16, format!("{} products explored", entries.len()));
        t.note(format!("{} products j x j' with j, j' <= 3/2 decompose by the classical rules, none NotCompletelyReducible", entries.len()));
        Ok(())
    })
}

/// Deviations expected from the printed sources.
const FROZEN: &[(usize, &[&str])] = &[
    (1, &["beta=-3 J3[2][0] printed -2/1 * sqrt(2) * z^2 violates the relations, computed -3/1 * sqrt(2) * z^2"]),
    (
        5,
        &[
            "1 x 1/2 E-4 is not in its invariant subspace",
            "1 x 1/2 U-1 is not in its invariant subspace",
            "1 x 1/2 U-2 is not in its invariant subspace",
        ],
    ),
];

fn main() {
    let criteria: [fn() -> Outcome; 9] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ];
    // optional criterion numbers on the command line restrict the run
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let selected: Vec<(usize, fn() -> Outcome)> = criteria
        .iter()
        .enumerate()
        .map(|(i, f)| (i + 1, *f))
        .filter(|(n, _)| only.is_empty() || only.contains(n))
        .collect();
    let outcomes: Vec<(usize, Outcome, f64)> = selected
        .par_iter()
        .map(|(n, f)| {
            let start = Instant::now();
            let o = f();
            (*n, o, start.elapsed().as_secs_f64())
        })
        .collect();
    let mut ok = true;
    for (n, o, secs) in &outcomes {
        let n = *n;
        let label = match o.status {
            Status::Pass => "PASS",
            Status::Deviation => "DEVIATION",
            Status::Fail => "FAIL",
        };
        println!("criterion {n}: {label} ({secs:.1}s) {}", o.detail);
        let frozen: Vec<String> = FROZEN
            .iter()
            .find(|(k, _)| *k == n)
            .map(|(_, v)| v.iter().map(|s| s.to_string()).collect())
            .unwrap_or_default();
        if o.status == Status::Fail || o.deviations != frozen {
            ok = false;
        }
    }
    if !ok {
        eprintln!("acceptance: unexpected outcome");
        std::process::exit(1);
    }
}
