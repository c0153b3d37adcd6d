use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use schurhopf::hamiltonian::hamiltonian_generating_coefficients;
use schurhopf::kp::hirota_apply;
use schurhopf::laurent::{Exponents, LaurentPoly};
use schurhopf::poly::monomials_of_weight;
use schurhopf::{ExactScalar, Monomial, OpKey, Operator, Polynomial, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn scalar() -> impl Strategy<Value = ExactScalar> {
    prop::collection::vec((rational(), -3i32..=3, 0u32..=2), 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(ExactScalar::zero(), |acc, (c, b, a)| {
                acc + ExactScalar::monomial(c, b, a)
            })
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly<Rational>> {
    prop::collection::vec((rational(), prop::collection::vec(-2i64..=2, 0..3)), 0..4).prop_map(
        |terms| {
            terms
                .into_iter()
                .fold(LaurentPoly::zero(), |mut acc, (c, e)| {
                    acc.add_term(Exponents::new(e), c);
                    acc
                })
        },
    )
}

fn monomial(max_weight: u64) -> impl Strategy<Value = Monomial> {
    prop::collection::vec((1u32..=3, 1u32..=2), 0..3)
        .prop_map(Monomial::from_pairs)
        .prop_filter("weight bound", move |m| m.weight() <= max_weight)
}

fn polynomial(max_weight: u64) -> impl Strategy<Value = Polynomial<Rational>> {
    prop::collection::vec((monomial(max_weight), rational()), 0..5).prop_map(Polynomial::from_terms)
}

fn operator() -> impl Strategy<Value = Operator<Rational>> {
    let hbar = Rational::new(BigInt::from(1), BigInt::from(2));
    prop::collection::vec((monomial(3), monomial(3), rational()), 0..4).prop_map(move |terms| {
        Operator::from_terms(
            hbar.clone(),
            terms.into_iter().map(|(a, b, c)| (OpKey::new(a, b), c)),
        )
    })
}

proptest! {
    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        prop_assert_eq!(a.clone() * &(b.clone() + c.clone()), a.clone() * &b + a.clone() * &c);
        prop_assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn substitution_is_a_homomorphism(
        a in scalar(), b in scalar(), e in nonzero_rational(), u in rational()
    ) {
        let ev = |x: &ExactScalar| x.eval(&e, &u).unwrap();
        prop_assert_eq!(ev(&(a.clone() * &b)), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&(a.clone() + b.clone())), ev(&a) + ev(&b));
        prop_assert_eq!(a.subs_u0(&u).subs_eps(&e).unwrap(), a.subs_eps(&e).unwrap().subs_u0(&u));
    }

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        prop_assert_eq!(a.clone() * &(b.clone() + c.clone()), a.clone() * &b + a.clone() * &c);
    }

    #[test]
    fn compose_is_associative(a in operator(), b in operator(), c in operator()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn apply_respects_compose(a in operator(), b in operator(), f in polynomial(6)) {
        prop_assert_eq!(a.compose(&b).apply(&f), a.apply(&b.apply(&f)));
    }

    #[test]
    fn hirota_odd_monomials_vanish_on_square(d in monomial(4), f in polynomial(4)) {
        prop_assume!(d.degree() % 2 == 1);
        let p = Polynomial::term(d, Rational::from_integer(1.into()));
        prop_assert!(hirota_apply(&p, &f, &f, 6).is_zero());
    }

    #[test]
    fn hirota_is_bilinear(
        p in polynomial(4), q in polynomial(4),
        f in polynomial(4), g in polynomial(4), h in polynomial(4),
        c in rational()
    ) {
        let w = 6;
        let fg = f.clone() + g.scale(&c);
        prop_assert_eq!(
            hirota_apply(&p, &fg, &h, w),
            hirota_apply(&p, &f, &h, w) + hirota_apply(&p, &g, &h, w).scale(&c)
        );
        prop_assert_eq!(
            hirota_apply(&p, &h, &fg, w),
            hirota_apply(&p, &h, &f, w) + hirota_apply(&p, &h, &g, w).scale(&c)
        );
        prop_assert_eq!(
            hirota_apply(&(p.clone() + q.clone()), &f, &g, w),
            hirota_apply(&p, &f, &g, w) + hirota_apply(&q, &f, &g, w)
        );
    }
}

#[test]
fn generated_hamiltonians_are_symmetric_and_graded() {
    let w = 6;
    for (i, op) in hamiltonian_generating_coefficients(5, w)
        .unwrap()
        .iter()
        .enumerate()
    {
        assert!(op.is_symmetric(), "H{}", i as i32 - 1);
        assert!(op.is_weight_preserving(), "H{}", i as i32 - 1);
    }
}

#[test]
fn apply_respects_compose_on_hamiltonians() {
    let w = 8;
    let ops = hamiltonian_generating_coefficients(3, w).unwrap();
    let (a, b) = (&ops[3], &ops[4]);
    let ab = a.compose(b);
    for n in 0..=w {
        for m in monomials_of_weight(n) {
            let f = Polynomial::term(m, ExactScalar::constant(Rational::from_integer(1.into())));
            assert_eq!(ab.apply(&f), a.apply(&b.apply(&f)));
        }
    }
}

#[test]
fn partition_involutions() {
    for lambda in schurhopf::partitions_up_to(12) {
        assert_eq!(lambda.transpose().transpose(), lambda);
        let f = lambda.frobenius();
        assert_eq!(f.to_partition().unwrap(), lambda);
        let ft = lambda.transpose().frobenius();
        assert_eq!((ft.alpha, ft.beta), (f.beta, f.alpha));
    }
}
