use proptest::prelude::*;

use uzalg::algebra::{casimir_value, check_relations, presentation};
use uzalg::boson::BosonExpr;
use uzalg::decompose::{check_flip_symmetry, decompose, follows_classical_rules, spin_product};
use uzalg::hopf::{check_qybe, evaluate_r};
use uzalg::matrix::Matrix;
use uzalg::rep::{fock_rep_for, quotient_rep, RepParams};
use uzalg::scalar::{format_rational, int, parse_rational, rat, Rational, Scalar, ZPoly};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((rational(), prop::sample::select(vec![1u64, 2, 3, 6, 12]), -2i32..4), 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(Scalar::zero(), |acc, (c, r, k)| acc.add(&Scalar::with_radical(r, ZPoly::monomial(c, k))))
    })
}

/// Small normal-ordered boson expressions in one mode.
fn boson() -> impl Strategy<Value = BosonExpr> {
    prop::collection::vec((rational(), 0u32..3, 0u32..3, 0i32..2), 1..3).prop_map(|terms| {
        terms.into_iter().fold(BosonExpr::zero(), |acc, (c, p, q, k)| {
            let m = BosonExpr::exp_a(k).mul(&BosonExpr::a_plus().pow(p)).mul(&BosonExpr::a_minus().pow(q));
            acc.add(&m.scale_q(&c))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_text_round_trips(q in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn scalar_text_round_trips(s in scalar()) {
        let back: Scalar = s.to_string().parse().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn scalar_ring_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn specialization_is_a_homomorphism(a in scalar(), b in scalar(), z in (1i64..9, 1i64..5)) {
        let z = rat(z.0, z.1);
        let lhs = a.mul(&b).specialize(&z).unwrap();
        let rhs = a.specialize(&z).unwrap().mul(&b.specialize(&z).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn boson_products_associate(x in boson(), y in boson(), w in boson()) {
        prop_assert_eq!(x.mul(&y).mul(&w), x.mul(&y.mul(&w)));
    }

    #[test]
    fn boson_text_round_trips(x in boson()) {
        let back: BosonExpr = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn h4_casimir_is_delta_times_two_beta_minus_one(b in rational(), d in rational()) {
        let params = RepParams { beta: Some(b.clone()), delta: Some(d.clone()), alpha: None };
        let rep = fock_rep_for("uzh4", params, 3, 4).unwrap();
        let pres = presentation("uzh4").unwrap();
        prop_assert!(check_relations(&rep, pres).unwrap().passed());
        let want = Scalar::from_rational(&d * (&b * int(2) - int(1)));
        let value = casimir_value(&rep, pres).unwrap();
        prop_assert_eq!(value.scalar(), Some(&want));
    }

    #[test]
    fn gd_quantum_relations_hold_for_any_beta(b in rational()) {
        let rep = fock_rep_for("uzsl2", RepParams::beta(b), 4, 4).unwrap();
        prop_assert!(check_relations(&rep, presentation("uzsl2").unwrap()).unwrap().passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn quotient_casimir_is_two_j_j_plus_one(two_j in 1i64..6) {
        let rep = quotient_rep("uzsl2", RepParams::beta(int(-two_j))).unwrap();
        let j = rat(two_j, 2);
        let want = Scalar::from_rational(&j * (&j + int(1)) * int(2));
        let value = casimir_value(&rep, presentation("uzsl2").unwrap()).unwrap();
        prop_assert_eq!(value.scalar(), Some(&want));
    }

    #[test]
    fn r_matrix_solves_qybe_at_every_z(two_j in 1i64..3, z in (1i64..6, 1i64..4), neg in any::<bool>()) {
        let v = quotient_rep("uzsl2", RepParams::beta(int(-two_j))).unwrap();
        let r = evaluate_r(presentation("uzsl2").unwrap().r_spec().unwrap(), &v, &v).unwrap();
        let z = rat(if neg { -z.0 } else { z.0 }, z.1);
        let at = r.try_map(|s| s.specialize(&z)).unwrap();
        prop_assert!(check_qybe(&at));
        prop_assert_ne!(at.clone(), Matrix::identity(at.rows()));
    }

    #[test]
    fn products_follow_classical_rules(a in 0i64..3, b in 0i64..3) {
        let (j1, j2) = (rat(a, 2), rat(b, 2));
        let res = decompose(&spin_product(&j1, &j2).unwrap()).unwrap();
        prop_assert!(follows_classical_rules(&res));
        if a == b {
            prop_assert!(check_flip_symmetry(&res));
        }
    }
}
