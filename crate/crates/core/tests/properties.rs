use proptest::prelude::*;

use smt_core::combinat::{family_generators, is_standard_monomial, Family};
use smt_core::exactalg::{q, q_frac, RationalMatrix, SparsePoly, Universe, Q};
use smt_core::straighten::{residual, straighten_rewrite, straighten_solve, Catalog, StraightenContext};

const VARS: usize = 3;

fn poly() -> impl Strategy<Value = SparsePoly> {
    let term = (prop::collection::vec(0u32..3, VARS), -5i64..=5, 1i64..=3);
    prop::collection::vec(term, 0..5).prop_map(|ts| {
        let u = Universe::named(["x", "y", "z"]);
        SparsePoly::from_terms(&u, ts.into_iter().map(|(e, n, d)| (e, q_frac(n, d)))).unwrap()
    })
}

fn matrix() -> impl Strategy<Value = RationalMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, c), r)
            .prop_map(|rows| RationalMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(q).collect()).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn leibniz_rule(a in poly(), b in poly(), v in 0..VARS) {
        let lhs = (&a * &b).derivative(v);
        let rhs = &(&a.derivative(v) * &b) + &(&a * &b.derivative(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), pt in prop::collection::vec(-3i64..=3, VARS)) {
        let pt: Vec<Q> = pt.into_iter().map(q).collect();
        let ab = (&a * &b).eval(&pt).unwrap();
        prop_assert_eq!(ab, a.eval(&pt).unwrap() * b.eval(&pt).unwrap());
    }

    #[test]
    fn rank_matches_transpose(m in matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.rank() <= m.rows().min(m.cols()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn straightened_words_are_standard(picks in prop::collection::vec(0usize..100, 1..4)) {
        let ctx = StraightenContext::new(2, 3).unwrap();
        let gens = family_generators(3, 2, Family::S).unwrap();
        let w: Vec<_> = picks.iter().map(|i| gens[i % gens.len()].clone()).collect();
        let rel = straighten_solve(&ctx, &w).unwrap();
        prop_assert!(rel.rhs.iter().all(|t| is_standard_monomial(&t.w)));
        prop_assert!(residual(&ctx, &rel).unwrap().is_zero());
        let cat = Catalog::build(&ctx).unwrap();
        let (by_rewrite, _) = straighten_rewrite(&w, &cat).unwrap();
        prop_assert_eq!(rel.rhs_map(), by_rewrite.rhs_map());
    }
}
