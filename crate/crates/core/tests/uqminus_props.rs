use num_bigint::BigInt;
use proptest::prelude::*;
use qfold::cartan::{
    catalog, fold_datum, stable_weights, validate_datum, CartanDatum, DiagramAutomorphism,
};
use qfold::ring::{quantum_factorial, RationalFn};
use qfold::uqminus::{expand_in_basis, gram_matrix, pair, pair_tensor, Algebra, FreeElement, Word};
use qfold::ZLaurent;

const DATA: [&str; 4] = ["a3", "b2-datum", "g2-datum", "d4-rot"];

fn coeff() -> impl Strategy<Value = RationalFn> {
    prop::collection::vec((-3i32..=3, -4i64..=4), 1..3).prop_map(|t| {
        RationalFn::from_laurent(ZLaurent::from_terms(
            t.into_iter().map(|(e, c)| (e, BigInt::from(c))),
        ))
    })
}

/// A datum index and a homogeneous element: rearrangements of one random word.
fn element(max_len: usize) -> impl Strategy<Value = (usize, FreeElement)> {
    (0..DATA.len(), prop::collection::vec(0usize..4, 0..=max_len)).prop_flat_map(|(k, letters)| {
        let rank = datum(k).rank();
        let letters: Vec<usize> = letters.into_iter().map(|i| i % rank).collect();
        let perms = prop::collection::vec((Just(letters.clone()).prop_shuffle(), coeff()), 1..4);
        (
            Just(k),
            perms.prop_map(move |ts| {
                FreeElement::from_terms(
                    rank,
                    ts.into_iter().map(|(w, c)| (Word::from_indices(&w), c)),
                )
                .unwrap()
            }),
        )
    })
}

fn datum(k: usize) -> CartanDatum {
    catalog(DATA[k]).unwrap().datum
}

fn sigma(k: usize) -> DiagramAutomorphism {
    catalog(DATA[k]).unwrap().sigma
}

fn qpow(e: i64) -> RationalFn {
    RationalFn::from_laurent(ZLaurent::q_pow(e as i32))
}

/// Zero elements compare equal whatever weight they were built at.
fn same(a: &FreeElement, b: &FreeElement) -> bool {
    (a.is_zero() && b.is_zero()) || a == b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn e_prime_commutation((k, x) in element(5), i in 0usize..4, j in 0usize..4) {
        let d = datum(k);
        let n = d.rank();
        let (i, j) = (i % n, j % n);
        let fj = FreeElement::generator(n, j);
        let lhs = fj.multiply(&x).e_prime(&d, i);
        let mut rhs = fj.multiply(&x.e_prime(&d, i)).scale(&qpow(-d.pair(i, j)));
        if i == j {
            rhs = rhs.add(&x);
        }
        prop_assert!(same(&lhs, &rhs), "{:?} != {:?}", lhs, rhs);
    }

    #[test]
    fn form_is_symmetric((k, x) in element(5), (_, y) in element(5)) {
        let d = datum(k);
        prop_assume!(y.weight().rank() == d.rank());
        prop_assert_eq!(pair(&d, &x, &y), pair(&d, &y, &x));
    }

    #[test]
    fn hopf_compatibility((k, x) in element(4), split in 0usize..5, (_, y) in element(4)) {
        let d = datum(k);
        prop_assume!(y.weight().rank() == d.rank() && !y.is_zero());
        // The first word of y, cut into a left and right factor.
        let (w0, _) = y.terms().next().unwrap();
        let cut = split.min(w0.len());
        let y1 = FreeElement::word(d.rank(), Word::new(w0.letters()[..cut].to_vec()), RationalFn::one());
        let y2 = FreeElement::word(d.rank(), Word::new(w0.letters()[cut..].to_vec()), RationalFn::one());
        prop_assert_eq!(pair(&d, &x, &y1.multiply(&y2)), pair_tensor(&d, &x.coproduct_r(&d), &y1, &y2));
    }

    #[test]
    fn involutions_and_sigma((k, x) in element(5), (_, y) in element(5)) {
        let d = datum(k);
        let s = sigma(k);
        prop_assert!(same(&x.bar().bar(), &x));
        prop_assert!(same(&x.star().star(), &x));
        let mut z = x.clone();
        for _ in 0..s.order() {
            z = z.sigma(&s);
        }
        prop_assert!(same(&z, &x));
        if y.weight().rank() == d.rank() {
            prop_assert_eq!(pair(&d, &x.sigma(&s), &y.sigma(&s)), pair(&d, &x, &y));
        }
    }
}

#[test]
fn divided_power_law() {
    for name in ["a2", "b2-datum", "g2-datum"] {
        let d = catalog(name).unwrap().datum;
        let alg = Algebra::new(d.clone());
        for i in 0..d.rank() {
            for n in 1..=4u32 {
                let fact = RationalFn::from_laurent(quantum_factorial(n as i64, d.d(i)).unwrap());
                let lhs = FreeElement::divided_power(&d, i, n).scale(&fact);
                let mut rhs = FreeElement::one(d.rank());
                for _ in 0..n {
                    rhs = rhs.multiply(&FreeElement::generator(d.rank(), i));
                }
                let g = gram_matrix(&alg, lhs.weight());
                assert_eq!(
                    expand_in_basis(&alg, &lhs, &g).unwrap(),
                    expand_in_basis(&alg, &rhs, &g).unwrap()
                );
            }
        }
    }
}

#[test]
fn folding_yields_valid_data() {
    for name in ["a3-flip", "a5-flip", "d4-rot", "d5-flip"] {
        let l = catalog(name).unwrap();
        let f = fold_datum(&l.datum, &l.sigma);
        let r = validate_datum(f.labels(), f.form());
        assert!(r.valid, "{name}: {:?}", r.violations);
        let id = DiagramAutomorphism::identity(l.datum.rank());
        assert_eq!(fold_datum(&l.datum, &id).form(), l.datum.form());
    }
}

#[test]
fn stable_heights_match_orbit_sizes() {
    for name in ["a3-flip", "a5-flip", "d4-rot", "d5-flip"] {
        let s = catalog(name).unwrap().sigma;
        for sw in stable_weights(&s, 8) {
            let h: u32 = s
                .orbits()
                .iter()
                .enumerate()
                .map(|(j, o)| o.len() as u32 * sw.folded.get(j))
                .sum();
            assert_eq!(h, sw.weight.height(), "{name} {}", sw.weight.key());
        }
    }
}
