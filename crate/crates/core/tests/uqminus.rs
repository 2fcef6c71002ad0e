use num_bigint::BigInt;
use qfold::cartan::{catalog, CartanDatum, Weight};
use qfold::ring::RationalFn;
use qfold::uqminus::{
    divided_power_monomials, enumerate_monomials, epsilon, epsilon_rank, expand_in_basis,
    gram_matrix, pair, pair_tensor, pair_words, serre_element, Algebra, FreeElement, Monomial,
    MonomialExpr, Word,
};
use qfold::ZLaurent;

fn z(terms: &[(i32, i64)]) -> ZLaurent {
    ZLaurent::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
}

fn rf(num: &[(i32, i64)], den: &[(i32, i64)]) -> RationalFn {
    RationalFn::new(z(num), z(den)).unwrap()
}

fn a2() -> CartanDatum {
    catalog("a2").unwrap().datum
}

fn w(letters: &[usize]) -> Word {
    Word::from_indices(letters)
}

fn word_el(rank: usize, letters: &[usize]) -> FreeElement {
    FreeElement::word(rank, w(letters), RationalFn::one())
}

#[test]
fn e_prime_examples() {
    let d = a2();
    let f12 = word_el(2, &[0, 1]);
    assert_eq!(f12.e_prime(&d, 0), word_el(2, &[1]));
    let f21 = word_el(2, &[1, 0]);
    let expect = FreeElement::word(2, w(&[1]), RationalFn::from_laurent(z(&[(1, 1)])));
    assert_eq!(f21.e_prime(&d, 0), expect);
    assert!(word_el(2, &[1]).e_prime(&d, 0).is_zero());
}

#[test]
fn form_examples() {
    let d = a2();
    let f1 = word_el(2, &[0]);
    let f2 = word_el(2, &[1]);
    assert_eq!(pair(&d, &f1, &f1), rf(&[(0, 1)], &[(0, 1), (2, -1)]));
    assert!(pair(&d, &f1, &f2).is_zero());
    let v = pair(&d, &word_el(2, &[0, 1]), &word_el(2, &[1, 0]));
    assert_eq!(v, rf(&[(1, 1)], &[(0, 1), (2, -2), (4, 1)]));
    let b2 = catalog("b2-datum").unwrap().datum;
    let g1 = word_el(2, &[0]);
    assert_eq!(pair(&b2, &g1, &g1), rf(&[(0, 1)], &[(0, 1), (4, -1)]));
}

#[test]
fn coproduct_of_two_letters() {
    let d = a2();
    let r = word_el(2, &[0, 1]).coproduct_r(&d);
    assert_eq!(r.len(), 4);
    assert_eq!(r.coeff(&w(&[0, 1]), &w(&[])), RationalFn::one());
    assert_eq!(r.coeff(&w(&[0]), &w(&[1])), RationalFn::one());
    assert_eq!(
        r.coeff(&w(&[1]), &w(&[0])),
        RationalFn::from_laurent(z(&[(1, 1)]))
    );
    assert_eq!(r.coeff(&w(&[]), &w(&[0, 1])), RationalFn::one());
    let r1 = word_el(2, &[0]).coproduct_r(&d);
    assert_eq!(r1.len(), 2);
    assert_eq!(
        FreeElement::one(2).coproduct_r(&d).coeff(&w(&[]), &w(&[])),
        RationalFn::one()
    );
}

#[test]
fn hopf_compatibility_small() {
    let d = a2();
    let x = word_el(2, &[0, 1, 0]);
    let y1 = word_el(2, &[1, 0]);
    let y2 = word_el(2, &[0]);
    let lhs = pair(&d, &x, &y1.multiply(&y2));
    let rhs = pair_tensor(&d, &x.coproduct_r(&d), &y1, &y2);
    assert_eq!(lhs, rhs);
}

#[test]
fn engine_form_matches_recursive_form() {
    let d = catalog("a3").unwrap().datum;
    let alg = Algebra::new(d.clone());
    let b = Weight::new(vec![1, 2, 1]);
    let sp = alg.space(&b);
    for u in sp.words() {
        let x = alg.word_element(u);
        for v in sp.words() {
            let (_, wv) = alg
                .from_free(&FreeElement::word(3, v.clone(), RationalFn::one()))
                .unwrap();
            assert_eq!(
                alg.pair(&x, &wv).to_rational(),
                pair_words(&d, u, v),
                "{u:?} {v:?}"
            );
        }
    }
}

#[test]
fn engine_divided_powers_match_free_model() {
    let d = catalog("g2-datum").unwrap().datum;
    let alg = Algebra::new(d.clone());
    for m in enumerate_monomials(&Weight::new(vec![2, 2])) {
        let (psi, words) = alg.from_free(&FreeElement::from_monomial(&d, &m)).unwrap();
        assert_eq!(psi, *alg.monomial(&m));
        assert_eq!(
            words,
            alg.expr_words(&Weight::new(vec![2, 2]), &MonomialExpr::monomial(m.clone()))
        );
    }
}

#[test]
fn serre_elements_vanish() {
    for name in ["a2", "b2-datum", "g2-datum"] {
        let d = catalog(name).unwrap().datum;
        let alg = Algebra::new(d.clone());
        for i in 0..2 {
            let s = serre_element(&d, i, 1 - i);
            let (psi, _) = alg.from_free(&s).unwrap();
            assert!(psi.is_zero(), "{name} {i}");
        }
    }
}

#[test]
fn gram_examples() {
    let d = a2();
    let alg = Algebra::new(d.clone());
    let g = gram_matrix(&alg, &Weight::new(vec![1, 1]));
    assert_eq!(g.rank, 2);
    let n = rf(&[(0, 1)], &[(0, 1), (2, -2), (4, 1)]);
    let c = rf(&[(1, 1)], &[(0, 1), (2, -2), (4, 1)]);
    assert_eq!(g.rational(0, 0), n);
    assert_eq!(g.rational(1, 1), n);
    assert_eq!(g.rational(0, 1), c);
    assert_eq!(g.rational(1, 0), c);
    assert_eq!(gram_matrix(&alg, &Weight::new(vec![1, 0])).rank, 1);
    let g = gram_matrix(&alg, &Weight::new(vec![2, 1]));
    assert_eq!(g.rank, 2);
    assert_eq!(g.monomials.len(), 3);
    let sel: Vec<_> = g.selected.iter().map(|&k| g.monomials[k].clone()).collect();
    assert_eq!(
        sel,
        vec![
            Monomial::from_blocks(&d, &[(0, 2), (1, 1)]).0,
            Monomial::from_blocks(&d, &[(1, 1), (0, 2)]).0
        ]
    );
}

#[test]
fn expansion_examples() {
    let d = a2();
    let alg = Algebra::new(d.clone());
    let b = Weight::new(vec![2, 1]);
    let g = gram_matrix(&alg, &b);
    let c = expand_in_basis(&alg, &word_el(2, &[0, 1, 0]), &g).unwrap();
    assert_eq!(c, vec![RationalFn::one(), RationalFn::one()]);
    let c = expand_in_basis(&alg, &serre_element(&d, 0, 1), &g).unwrap();
    assert!(c.iter().all(|x| x.is_zero()));
    let mons = divided_power_monomials(&d, &b);
    let c = expand_in_basis(&alg, &mons[g.selected[1]], &g).unwrap();
    assert_eq!(c, vec![RationalFn::zero(), RationalFn::one()]);
}

#[test]
fn epsilon_examples() {
    let d = a2();
    let alg = Algebra::new(d.clone());
    let f1_3 = alg.f_power(0, 3);
    assert_eq!(epsilon(&alg, 0, &f1_3), 3);
    assert_eq!(epsilon_rank(&alg, 0, &f1_3), 3);
    let x = alg.product(&alg.f_power(1, 1), &alg.f_power(0, 2));
    assert_eq!(epsilon(&alg, 0, &x), 1);
    assert_eq!(epsilon_rank(&alg, 0, &x), 1);
    let s = alg
        .product(&alg.f_power(0, 1), &alg.f_power(1, 1))
        .add(&alg.product(&alg.f_power(1, 1), &alg.f_power(0, 1)));
    assert_eq!(epsilon(&alg, 0, &s), 0);
    assert_eq!(epsilon_rank(&alg, 0, &s), 0);
}
