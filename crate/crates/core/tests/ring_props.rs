use num_bigint::BigInt;
use proptest::prelude::*;
use qfold::ring::{
    gaussian_binomial, quantum_factorial, series_expand, symmetric_round, TruncatedSeries,
};
use qfold::{F3Laurent, RationalFn, ZLaurent};

fn arb_laurent() -> impl Strategy<Value = ZLaurent> {
    prop::collection::vec((-6i32..=6, -20i64..=20), 0..6)
        .prop_map(|t| ZLaurent::from_terms(t.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

/// Denominators have a unit lowest coefficient, so the expansion exists over Z.
fn arb_rational() -> impl Strategy<Value = RationalFn> {
    (arb_laurent(), arb_laurent(), -3i32..=3, prop::bool::ANY).prop_filter_map(
        "nonzero",
        |(n, d, v, neg)| {
            let lead = ZLaurent::from_terms([(v, BigInt::from(if neg { -1 } else { 1 }))]);
            let tail = ZLaurent::from_terms(d.terms().iter().filter(|(e, _)| *e > v).cloned());
            RationalFn::new(n, &lead + &tail).ok()
        },
    )
}

proptest! {
    #[test]
    fn bar_is_an_involutive_ring_map(a in arb_laurent(), b in arb_laurent()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
    }

    #[test]
    fn series_truncation_is_consistent(r in arb_rational(), n in 1i32..12, k in 1i32..12) {
        let long = series_expand(&r, n + k).unwrap();
        let short = series_expand(&r, n).unwrap();
        prop_assert_eq!(long.truncate(n), short);
    }

    #[test]
    fn symmetric_round_is_bar_invariant_and_absorbs_the_principal_part(p in arb_laurent(), order in 1i32..8) {
        let s = TruncatedSeries::from_laurent(&p, order);
        let c = symmetric_round(&s).unwrap();
        prop_assert!(c.is_bar_invariant());
        let rest = s.sub(&TruncatedSeries::from_laurent(&c, order));
        for e in rest.valuation().min(0)..=0 {
            prop_assert!(rest.coeff(e).unwrap() == BigInt::from(0));
        }
    }

    #[test]
    fn reduction_mod_three_is_a_ring_map(a in arb_laurent(), b in arb_laurent()) {
        let ra: F3Laurent = a.mod_ell::<3>().unwrap();
        let rb: F3Laurent = b.mod_ell::<3>().unwrap();
        prop_assert_eq!((&a * &b).mod_ell::<3>().unwrap(), &ra * &rb);
        prop_assert_eq!((&a + &b).mod_ell::<3>().unwrap(), &ra + &rb);
    }
}

#[test]
fn factorial_times_binomial() {
    for d in 1..=3 {
        for m in 0..=6i64 {
            for n in 0..=6i64 {
                let lhs =
                    &quantum_factorial(m, d).unwrap() * &gaussian_binomial(m + n, m, d).unwrap();
                let rhs = quantum_factorial(m + n, d)
                    .unwrap()
                    .div_exact(&quantum_factorial(n, d).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "m = {m}, n = {n}, d = {d}");
            }
        }
    }
}
