use std::collections::BTreeMap;

use num_bigint::BigInt;
use qfold::canon::{structure_constants, BuildConfig};
use qfold::cartan::{catalog, Weight};
use qfold::fold::{
    fold_report, orbit_sum, orbit_sum_free, sign_table, stable_basis, FoldContext, FoldError,
};
use qfold::uqminus::FreeElement;
use qfold::ZLaurent;

fn ctx(name: &str, ell: u64, bound: u32) -> Result<FoldContext, FoldError> {
    let l = catalog(name).unwrap();
    FoldContext::new(l.datum, l.sigma, ell, bound, BuildConfig::default())
}

#[test]
fn wrong_ell_is_rejected() {
    assert!(matches!(
        ctx("a3-flip", 3, 2),
        Err(FoldError::NotPrimePower { .. })
    ));
    assert!(matches!(
        ctx("d4-rot", 2, 2),
        Err(FoldError::NotPrimePower { .. })
    ));
}

#[test]
fn orbit_sums() {
    let c = ctx("a3-flip", 2, 2).unwrap();
    let alg = c.unfolded_alg();
    let (f1, f2, f3) = (alg.f_power(0, 1), alg.f_power(1, 1), alg.f_power(2, 1));
    assert_eq!(orbit_sum(alg, &c.sigma, &f1), vec![f3.clone(), f1.clone()]);
    assert_eq!(orbit_sum(alg, &c.sigma, &f2), vec![f2.clone()]);
    // f1 f3 = f3 f1 is fixed; f1 f2 f3 has a 2-orbit.
    let f13 = alg.product(&f1, &f3);
    assert_eq!(orbit_sum(alg, &c.sigma, &f13), vec![f13.clone()]);
    let f123 = alg.product(&f1, &alg.product(&f2, &f3));
    let f321 = alg.product(&f3, &alg.product(&f2, &f1));
    assert_eq!(orbit_sum(alg, &c.sigma, &f123), vec![f123.add(&f321)]);

    let c = ctx("d4-rot", 3, 1).unwrap();
    let parts = orbit_sum_free(&c.sigma, &FreeElement::generator(4, 0));
    let mut letters: Vec<usize> = parts.iter().flat_map(|p| p.weight().letters()).collect();
    letters.sort();
    assert_eq!(letters, vec![0, 2, 3]);
}

#[test]
fn a3_flip_report() {
    let c = ctx("a3-flip", 2, 6).unwrap();
    let r = fold_report(&c, true).unwrap();
    for e in &r.phi {
        assert!(e.passed, "{e:?}");
    }
    for e in &r.serre {
        assert!(e.vanishes, "{e:?}");
    }
    for e in &r.dual_compat {
        assert!(e.passed, "{e:?}");
    }
    assert!(r.passed);
    assert_eq!(
        stable_basis(&c, &Weight::new(vec![0, 1, 0])).unwrap(),
        vec![0]
    );
}

#[test]
fn d4_rot_report() {
    let c = ctx("d4-rot", 3, 6).unwrap();
    let r = fold_report(&c, true).unwrap();
    for e in &r.phi {
        assert!(e.passed, "{e:?}");
    }
    for e in &r.serre {
        assert!(e.vanishes, "{e:?}");
    }
    for e in &r.dual_compat {
        assert!(e.passed, "{e:?}");
    }
    assert!(r.passed);
    assert_eq!(r.phi.len(), 12);
    assert_eq!(r.serre.len(), 2);
    assert!(r.phi.iter().any(|e| e.fixed_count > 2));
}

#[test]
fn quotient_examples() {
    use qfold::fold::{fold_reduce, g_monomial, sign_table, tilde_f_apply, QuotientElement};
    let c = ctx("a3-flip", 2, 4).unwrap();
    let alg = c.unfolded_alg();
    // Orbits are ordered by their smallest node: j0 = {1,3}, j1 = {2}.
    assert_eq!(c.sigma.orbits(), &[vec![0, 2], vec![1]]);
    let g = g_monomial(&c, 0, 1);
    let (f1, f3) = (alg.f_power(0, 1), alg.f_power(2, 1));
    assert_eq!(g, alg.product(&f3, &f1));
    let g2 = g_monomial(&c, 0, 2);
    assert_eq!(g2, alg.product(&alg.f_power(0, 2), &alg.f_power(2, 2)));

    // Fixed canonical element maps to a unit coordinate.
    let w = Weight::new(vec![0, 1, 0]);
    let v = fold_reduce::<2>(&c, &alg.f_power(1, 1)).unwrap();
    assert_eq!(v, QuotientElement::<2>::unit(&c, &w, 0).unwrap());
    let signs = sign_table::<2>(&c, &w).unwrap().unwrap();
    assert_eq!((signs[0].sign, signs[0].folded_element), (1, 0));
    assert_eq!(
        sign_table::<2>(&c, &Weight::new(vec![0, 0, 0]))
            .unwrap()
            .unwrap()[0]
            .sign,
        1
    );

    // g_{j0} · π(f2) lands at weight α1+α2+α3.
    let x = tilde_f_apply::<2>(&c, 0, 1, &v).unwrap();
    assert_eq!(x.weight, Weight::new(vec![1, 1, 1]));
    assert!(!x.is_zero());

    // A non-invariant input is rejected.
    let f123 = alg.product(&f1, &alg.product(&alg.f_power(1, 1), &f3));
    assert!(matches!(
        fold_reduce::<2>(&c, &f123),
        Err(FoldError::NotInvariant(_))
    ));
    // A non-stable weight is rejected.
    assert!(matches!(
        fold_reduce::<2>(&c, &f1),
        Err(FoldError::NotStable(_))
    ));
}

/// Fixed elements multiply like their folded partners up to the tabulated signs, modulo ℓ:
/// `c_{b1 b2}^b ≡ ε(b1) ε(b2) ε(b) c̃_{b̃1 b̃2}^{b̃}`.
fn signs_are_multiplicative<const P: u64>(name: &str, bound: u32) {
    let c = ctx(name, P, bound).unwrap();
    let table = |w: &Weight| -> BTreeMap<usize, (i64, usize)> {
        let t = sign_table::<P>(&c, w).unwrap().expect("signed permutation");
        t.into_iter()
            .map(|e| (e.element, (e.sign as i64, e.folded_element)))
            .collect()
    };
    let ws: Vec<_> = c
        .stable_weights()
        .into_iter()
        .filter(|s| !s.weight.is_zero())
        .collect();
    let mut checked = 0;
    for a in &ws {
        for b in ws
            .iter()
            .filter(|b| a.weight.height() + b.weight.height() <= bound)
        {
            let w = a.weight.add(&b.weight);
            let (ta, tb, tw) = (table(&a.weight), table(&b.weight), table(&w));
            let fw = c.stable_data(&w).unwrap().folded.clone();
            for (&s1, &(e1, f1)) in &ta {
                for (&s2, &(e2, f2)) in &tb {
                    let up: BTreeMap<usize, ZLaurent> =
                        structure_constants(&c.unfolded, (&a.weight, s1), (&b.weight, s2))
                            .unwrap()
                            .coefficients
                            .into_iter()
                            .collect();
                    let down: BTreeMap<usize, ZLaurent> =
                        structure_constants(&c.folded, (&a.folded, f1), (&b.folded, f2))
                            .unwrap()
                            .coefficients
                            .into_iter()
                            .collect();
                    for (&s, &(e, f)) in &tw {
                        let lhs = up.get(&s).cloned().unwrap_or_default();
                        let rhs = down
                            .get(&f)
                            .cloned()
                            .unwrap_or_default()
                            .scale(&BigInt::from(e1 * e2 * e));
                        assert_eq!(
                            lhs.mod_ell::<P>().unwrap(),
                            rhs.mod_ell::<P>().unwrap(),
                            "{name}: ({}, {s1}) · ({}, {s2}) at ({}, {s}) / folded {}",
                            a.weight.key(),
                            b.weight.key(),
                            w.key(),
                            fw.key()
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn sign_table_is_multiplicative() {
    signs_are_multiplicative::<2>("a3-flip", 6);
    signs_are_multiplicative::<3>("d4-rot", 6);
}
