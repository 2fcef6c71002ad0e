use std::sync::Arc;

use qfold::canon::{BasisFamily, BuildConfig, DualActions};
use qfold::cartan::{catalog, Weight};
use qfold::uqminus::Algebra;

fn family(name: &str, bound: u32) -> BasisFamily {
    let alg = Arc::new(Algebra::new(catalog(name).unwrap().datum));
    BasisFamily::up_to_height(alg, bound, BuildConfig::default()).unwrap()
}

fn check_axioms(name: &str, bound: u32) {
    let fam = family(name, bound);
    let act = DualActions::new(&fam);
    for b in fam.weights().into_iter().filter(|b| b.height() < bound) {
        let r = act.verify_upper_axioms(&b).unwrap();
        assert!(r.passed, "{name} {}: {:?}", r.weight, r.failures);
        assert!(r.unchecked_raise.is_empty());
        let e = act.epsilon_duality_check(&b).unwrap();
        assert!(e.passed, "{name} {}: {:?}", e.weight, e.mismatches);
    }
}

#[test]
fn upper_axioms_a2() {
    check_axioms("a2", 5);
}

#[test]
fn upper_axioms_b2_g2() {
    check_axioms("b2-datum", 5);
    check_axioms("g2-datum", 5);
}

#[test]
fn rank_one_dual() {
    let fam = family("a2", 2);
    let act = DualActions::new(&fam);
    let b = Weight::new(vec![1, 0]);
    let r = act.verify_upper_axioms(&b).unwrap();
    assert!(r.passed);
    assert_eq!(act.dual_epsilon(&b, 0, 0).unwrap(), 1);
    // ẽ lands on 1*.
    let l = act.lowering(&b, 0).unwrap();
    assert!(l[0][0].is_one());
    let d = act.dual_basis(&Weight::new(vec![2, 0])).unwrap();
    assert_eq!(d.eps, vec![vec![2, 0]]);
}

#[test]
fn a2_crystal_edge_count() {
    // Every element has exactly one f̃_i successor per node.
    let fam = family("a2", 4);
    let act = DualActions::new(&fam);
    for b in fam.weights().into_iter().filter(|b| b.height() < 4) {
        let r = act.verify_upper_axioms(&b).unwrap();
        assert_eq!(r.edges.len(), 2 * r.dim);
    }
}

#[test]
fn raising_adds_one_to_the_string_length() {
    for name in ["a3", "b2-datum", "g2-datum"] {
        let fam = family(name, 5);
        let act = DualActions::new(&fam);
        for b in fam.weights().into_iter().filter(|b| b.height() < 5) {
            let here = act.dual_eps_table(&b).unwrap();
            for e in act.verify_upper_axioms(&b).unwrap().edges {
                let there = act.dual_eps_table(&b.add_simple(e.node, 1)).unwrap();
                assert_eq!(
                    there[e.to][e.node],
                    here[e.from][e.node] + 1,
                    "{name} {}: {e:?}",
                    b.key()
                );
            }
        }
    }
}
