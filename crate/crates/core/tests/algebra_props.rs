use fwkit::algebra::{parse, Letter, Monomial, OperatorExpr};
use fwkit::scalar::{c_real, gauss};
use fwkit::symbolic::{exp_series, log_series, SeriesOrder};
use fwkit::{BigRational, Expr};
use num_rational::Ratio;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Ratio::new(n.into(), d.into()))
}

fn monomial(mu: std::ops::RangeInclusive<i32>) -> impl Strategy<Value = Monomial> {
    (mu, any::<bool>(), prop::collection::vec(prop_oneof![Just(Letter::E), Just(Letter::O)], 0..4))
        .prop_map(|(mu, beta, word)| Monomial::new(mu, beta, word))
}

fn expr_in(mu: std::ops::RangeInclusive<i32>) -> impl Strategy<Value = Expr> {
    prop::collection::vec((monomial(mu), rational(), rational()), 0..5).prop_map(|terms| {
        terms.into_iter().fold(Expr::zero(), |acc, (m, re, im)| {
            acc.add(&OperatorExpr::monomial(m, gauss(re, im)))
        })
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    expr_in(-1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn render_parse_round_trip(x in expr()) {
        let back: Expr = parse::<BigRational>(&x.to_string()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn beta_conjugation_flips_odd_part(x in expr()) {
        let b = Expr::beta();
        let conj = b.multiply(&x).multiply(&b);
        prop_assert_eq!(conj, x.even_part().sub(&x.odd_part()));
        prop_assert_eq!(x.even_part().add(&x.odd_part()), x);
    }

    #[test]
    fn ring_axioms(a in expr(), b in expr(), c in expr()) {
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
        prop_assert_eq!(a.multiply(&b.add(&c)), a.multiply(&b).add(&a.multiply(&c)));
        prop_assert_eq!(a.add(&b).multiply(&c), a.multiply(&c).add(&b.multiply(&c)));
    }

    #[test]
    fn jacobi_identity(a in expr(), b in expr(), c in expr()) {
        let j = a.commutator(&b.commutator(&c))
            .add(&b.commutator(&c.commutator(&a)))
            .add(&c.commutator(&a.commutator(&b)));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn commutator_antisymmetry(a in expr(), b in expr()) {
        prop_assert!(a.commutator(&b).canonical_equals(&b.commutator(&a).scale(&c_real(-1, 1))));
    }

    #[test]
    fn product_grades_add(a in expr(), b in expr()) {
        let prod = a.multiply(&b);
        let degrees: std::collections::BTreeSet<i32> = a.terms()
            .flat_map(|(ma, _)| b.terms().map(move |(mb, _)| ma.mu + mb.mu))
            .collect();
        for (m, _) in prod.terms() {
            prop_assert!(degrees.contains(&m.mu));
        }
    }

    #[test]
    fn log_inverts_exp(a in expr_in(1..=3)) {
        let order = SeriesOrder(4);
        let back = log_series(&exp_series(&a, order).unwrap(), order).unwrap();
        prop_assert_eq!(back, a.truncate(4));
    }
}
