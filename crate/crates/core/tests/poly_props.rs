use omnilie::parse::parse_poly;
use omnilie::poly::{rat, Monomial, Patch, Poly, Rational};
use proptest::prelude::*;

const N: usize = 3;

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..3, N), -5i64..=5, 1i64..=4), 0..5).prop_map(|terms| {
        let mut p = Poly::zero(N);
        for (exps, num, den) in terms {
            p += &Poly::monomial(N, Monomial::from_exponents(exps), rat(num, den));
        }
        p
    })
}

fn arb_point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-6i64..=6, 1i64..=5).prop_map(|(n, d)| rat(n, d)), N)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Poly::one(N), p.clone());
        prop_assert!((&p * &Poly::zero(N)).is_zero());
    }

    #[test]
    fn partials_commute(p in arb_poly(), i in 0..N, j in 0..N) {
        prop_assert_eq!(p.diff(i).diff(j), p.diff(j).diff(i));
    }

    #[test]
    fn leibniz_rule(p in arb_poly(), q in arb_poly(), i in 0..N) {
        prop_assert_eq!((&p * &q).diff(i), &(&p.diff(i) * &q) + &(&p * &q.diff(i)));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in arb_poly(), q in arb_poly(), x in arb_point()) {
        let (ep, eq) = (p.evaluate(&x).unwrap(), q.evaluate(&x).unwrap());
        prop_assert_eq!((&p + &q).evaluate(&x).unwrap(), &ep + &eq);
        prop_assert_eq!((&p * &q).evaluate(&x).unwrap(), &ep * &eq);
    }

    #[test]
    fn printing_round_trips_through_the_parser(p in arb_poly()) {
        let patch = Patch::standard(N, 1).unwrap();
        let printed = p.to_string_with(patch.var_names());
        prop_assert_eq!(parse_poly(&printed, &patch).unwrap(), p.clone());
        prop_assert_eq!(p.to_string_with(patch.var_names()), printed);
    }
}

#[test]
fn evaluation_rejects_wrong_arity() {
    assert!(Poly::var(N, 0).evaluate(&[rat(1, 1)]).is_err());
}
