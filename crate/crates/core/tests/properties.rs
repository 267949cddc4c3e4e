//! Property tests for the algebraic laws of Delta_S and the normal-form
//! engine.

use proptest::prelude::*;
use std::collections::BTreeMap;
use superalg::groebner::{Budget, NormalFormEngine};
use superalg::scalar::Rat;
use superalg::superpoly::{EvenVar, OddVar, Parity, SuperMonomial, SuperPolynomial};

fn monomial_strategy() -> impl Strategy<Value = SuperMonomial> {
    (
        proptest::collection::btree_map(0u32..3, 1u32..3, 0..3),
        proptest::collection::btree_set(0u32..4, 0..3),
    )
        .prop_map(|(even, odd)| {
            let even = even.into_iter().map(|(v, e)| (EvenVar(v), e)).collect();
            let odd = odd.into_iter().map(OddVar).collect();
            SuperMonomial::from_parts(even, odd)
        })
}

fn poly_strategy() -> impl Strategy<Value = SuperPolynomial> {
    proptest::collection::vec((monomial_strategy(), -4i64..=4), 0..5).prop_map(|terms| {
        let mut p = SuperPolynomial::zero();
        for (m, c) in terms {
            p.add_term(m, Rat::from_integer(c.into()));
        }
        p
    })
}

fn homogeneous_strategy(parity: Parity) -> impl Strategy<Value = SuperPolynomial> {
    poly_strategy().prop_map(move |p| {
        let mut out = SuperPolynomial::zero();
        for (m, c) in p.terms() {
            if m.parity() == parity {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    })
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(p in poly_strategy(), q in poly_strategy(), r in poly_strategy()) {
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
        prop_assert_eq!(p.sub(&p), SuperPolynomial::zero());
    }

    #[test]
    fn multiplication_is_associative_and_distributive(p in poly_strategy(), q in poly_strategy(), r in poly_strategy()) {
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
    }

    #[test]
    fn supercommutativity_on_homogeneous_pairs(
        p in homogeneous_strategy(Parity::Odd),
        q in homogeneous_strategy(Parity::Odd),
        u in homogeneous_strategy(Parity::Even),
    ) {
        // odd-odd pairs anticommute, even elements are central
        prop_assert_eq!(p.mul(&q), q.mul(&p).negate());
        prop_assert_eq!(u.mul(&p), p.mul(&u));
        prop_assert_eq!(u.mul(&q), q.mul(&u));
    }

    #[test]
    fn leibniz_rules(p in poly_strategy(), q in poly_strategy()) {
        let x = EvenVar(1);
        let lhs = p.mul(&q).partial_even(x);
        let rhs = p.partial_even(x).mul(&q).add(&p.mul(&q.partial_even(x)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn signed_leibniz_for_odd_partial(
        p in homogeneous_strategy(Parity::Odd),
        q in poly_strategy(),
    ) {
        // for odd homogeneous p: d(pq) = d(p) q - p d(q)
        let th = OddVar(2);
        let lhs = p.mul(&q).partial_odd(th);
        let rhs = p
            .partial_odd(th)
            .mul(&q)
            .sub(&p.mul(&q.partial_odd(th)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_homomorphism(p in poly_strategy(), q in poly_strategy()) {
        // x1 -> x2 + 1, th0 -> th3, th1 -> th0 th1 th2 (odd-homogeneous)
        let mut emap = BTreeMap::new();
        emap.insert(
            EvenVar(1),
            SuperPolynomial::even_var(EvenVar(2)).add(&SuperPolynomial::one()),
        );
        let mut omap = BTreeMap::new();
        omap.insert(OddVar(0), SuperPolynomial::odd_var(OddVar(3)));
        let triple = SuperPolynomial::odd_var(OddVar(0))
            .mul(&SuperPolynomial::odd_var(OddVar(1)))
            .mul(&SuperPolynomial::odd_var(OddVar(2)));
        omap.insert(OddVar(1), triple);
        let s = |f: &SuperPolynomial| f.substitute(&emap, &omap).unwrap();
        prop_assert_eq!(s(&p.add(&q)), s(&p).add(&s(&q)));
        prop_assert_eq!(s(&p.mul(&q)), s(&p).mul(&s(&q)));
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(p in poly_strategy(), q in poly_strategy()) {
        let gens = vec![
            superalg::expr::parse_poly("x1^2 - x1").unwrap(),
            superalg::expr::parse_poly("x2*th0 - th1").unwrap(),
        ];
        let layout: Vec<OddVar> = (0..4).map(OddVar).collect();
        let mut b = Budget::default();
        let e = NormalFormEngine::complete(&gens, &layout, &mut b).unwrap();
        let nf_p = e.reduce(&p, &mut b).unwrap();
        prop_assert_eq!(e.reduce(&nf_p, &mut b).unwrap(), nf_p.clone());
        // nf(p + q) = nf(nf(p) + nf(q))
        let nf_q = e.reduce(&q, &mut b).unwrap();
        let lhs = e.reduce(&p.add(&q), &mut b).unwrap();
        prop_assert_eq!(lhs, nf_p.add(&nf_q));
        // ideal membership of p - nf(p)
        prop_assert!(e.contains(&p.sub(&nf_p), &mut b).unwrap());
    }
}
