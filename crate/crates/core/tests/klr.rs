use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qfold::cartan::{catalog, catalog_names, DiagramAutomorphism};
use qfold::klr::{
    apply_overrides, build_lj, default_params, degree, graded_dim_r_alpha_j, klr_check, mat_mul,
    sigma_on_generators, word_degree, BiPoly, Gen,
};
use qfold::ZLaurent;

fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn poly(terms: &[(u32, u32, i64)]) -> BiPoly {
    terms.iter().map(|&(a, b, c)| ((a, b), r(c))).collect()
}

#[test]
fn default_parameter_examples() {
    let a2 = catalog("a2").unwrap();
    let p = default_params(&a2.datum, &a2.sigma, false, 0).unwrap();
    assert_eq!(p.get(0, 1), &poly(&[(1, 0, 1), (0, 1, 1)]));
    assert!(p.get(0, 0).is_empty());

    let a3 = catalog("a3-flip").unwrap();
    let p = default_params(&a3.datum, &a3.sigma, false, 0).unwrap();
    assert_eq!(p.get(0, 2), &poly(&[(0, 0, 1)]));
    assert_eq!(p.get(0, 1), p.get(2, 1));

    let b2 = catalog("b2-datum").unwrap();
    let p = default_params(&b2.datum, &b2.sigma, false, 0).unwrap();
    // (α1,α1) = 4, (α2,α2) = 2, (α1,α2) = −2: a12 = −1, a21 = −2.
    assert_eq!(p.get(0, 1), &poly(&[(1, 0, 1), (0, 2, 1)]));

    let sym = default_params(&a2.datum, &a2.sigma, true, 0).unwrap();
    assert_eq!(sym.get(0, 1), &poly(&[(1, 0, 1), (0, 1, -1)]));
    assert_eq!(sym.get(1, 0), &poly(&[(0, 1, 1), (1, 0, -1)]));
}

#[test]
fn broken_overrides_are_flagged() {
    let a3 = catalog("a3-flip").unwrap();
    let p = default_params(&a3.datum, &a3.sigma, false, 0).unwrap();
    let bad = serde_json::json!({"Q": {"1,2": [[1, 0, "2"], [0, 1, "1"]]}});
    assert!(apply_overrides(p.clone(), &bad, &a3.sigma).is_err());
    let mut broken = p.clone();
    broken.q.insert((0, 1), poly(&[(1, 0, 2), (0, 1, 1)]));
    broken.q.insert((1, 0), poly(&[(0, 1, 2), (1, 0, 1)]));
    assert!(!sigma_on_generators(&broken, &a3.sigma).consistent);
    assert!(sigma_on_generators(&p, &a3.sigma).consistent);
    let id = DiagramAutomorphism::identity(3);
    assert!(sigma_on_generators(&p, &id).consistent);
    let homog = serde_json::json!({"Q": {"1,2": [[2, 0, "1"], [0, 1, "1"]]}});
    assert!(apply_overrides(p, &homog, &a3.sigma).is_err());
}

#[test]
fn degree_examples() {
    let a2 = catalog("a2").unwrap().datum;
    assert_eq!(degree(&a2, &Gen::X(1), &[0, 1]).unwrap(), 2);
    assert_eq!(degree(&a2, &Gen::T(1), &[0, 1]).unwrap(), 1);
    let a3 = catalog("a3").unwrap().datum;
    assert_eq!(degree(&a3, &Gen::T(1), &[0, 2]).unwrap(), 0);
    assert!(degree(&a3, &Gen::T(2), &[0, 2]).is_err());
}

#[test]
fn orbit_models() {
    let a3 = catalog("a3-flip").unwrap();
    let p = default_params(&a3.datum, &a3.sigma, false, 0).unwrap();
    let m = build_lj(&p, &[0, 2], &a3.sigma).unwrap();
    assert_eq!(m.dim(), 2);
    assert_eq!(
        mat_mul(&m.tau[0], &m.tau[0]),
        vec![vec![r(1), r(0)], vec![r(0), r(1)]]
    );

    let d4 = catalog("d4-rot").unwrap();
    let p = default_params(&d4.datum, &d4.sigma, false, 0).unwrap();
    let outer = d4
        .sigma
        .orbits()
        .iter()
        .find(|o| o.len() == 3)
        .unwrap()
        .clone();
    let m = build_lj(&p, &outer, &d4.sigma).unwrap();
    assert_eq!(m.dim(), 6);
    let r = qfold::klr::verify_relations(&p, &m, &d4.sigma);
    assert!(r.passed, "{r:?}");
    assert_eq!(r.phi_order, 3);

    let single = build_lj(&p, &[1], &d4.sigma).unwrap();
    assert_eq!(single.dim(), 1);
}

#[test]
fn every_catalog_datum_passes_both_modes() {
    for name in catalog_names() {
        let l = catalog(name).unwrap();
        for symmetric in [false, true] {
            let rep = klr_check(&l, symmetric).unwrap();
            assert!(rep.passed, "{name} symmetric={symmetric}: {:?}", rep.orbits);
            for o in &rep.orbits {
                assert_eq!(
                    o.phi_order, o.t,
                    "{name}: φ has order {} on an orbit of size {}",
                    o.phi_order, o.t
                );
            }
        }
    }
}

#[test]
fn graded_dimension_examples() {
    let a3 = catalog("a3-flip").unwrap().datum;
    let g = graded_dim_r_alpha_j(&a3, &[1], &[1], &[1]).unwrap();
    assert_eq!((g.num.clone(), g.den.clone()), (ZLaurent::one(), vec![2]));
    let g = graded_dim_r_alpha_j(&a3, &[0, 2], &[0, 2], &[0, 2]).unwrap();
    assert_eq!(
        (g.num.clone(), g.den.clone()),
        (ZLaurent::one(), vec![2, 2])
    );
    let g = graded_dim_r_alpha_j(&a3, &[0, 2], &[0, 2], &[2, 0]).unwrap();
    assert_eq!(g.num, ZLaurent::one());
    // 1/(1-q^2)^2 = 1 + 2q^2 + 3q^4 + ...
    let s = g.series(6);
    assert_eq!(s.coeff(4).unwrap(), BigInt::from(3));
    assert!(graded_dim_r_alpha_j(&a3, &[0, 2], &[0, 1], &[0, 2]).is_err());
}

fn arb_word() -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec(
        prop_oneof![(1usize..=3).prop_map(Gen::X), (1usize..=2).prop_map(Gen::T)],
        0..=6,
    )
}

proptest! {
    #[test]
    fn degree_is_additive(w1 in arb_word(), w2 in arb_word(), perm in 0usize..6) {
        let d = catalog("a3").unwrap().datum;
        let bases = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let nu = bases[perm].to_vec();
        let d2 = word_degree(&d, &w2, &nu).unwrap().unwrap();
        let mut mid = nu.clone();
        for g in w2.iter().rev() {
            if let Gen::T(k) = g { mid.swap(k - 1, *k); }
        }
        let d1 = word_degree(&d, &w1, &mid).unwrap().unwrap();
        let mut w = w1.clone();
        w.extend(w2.clone());
        prop_assert_eq!(word_degree(&d, &w, &nu).unwrap().unwrap(), d1 + d2);
    }
}
