use std::sync::Arc;

use qfold::cache::Cache;
use qfold::canon::{BasisFamily, BuildConfig};
use qfold::cartan::catalog;
use qfold::uqminus::Algebra;

fn alg(name: &str) -> Arc<Algebra> {
    Arc::new(Algebra::new(catalog(name).unwrap().datum))
}

#[test]
fn fresh_cache_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let c = Cache::open(dir.path()).unwrap();
    assert!(c.list().unwrap().is_empty());
}

#[test]
fn one_entry_per_weight_and_identical_reload() {
    let dir = tempfile::tempdir().unwrap();
    let c = Arc::new(Cache::open(dir.path()).unwrap());
    let a = alg("a2");
    let f1 = BasisFamily::new(a.clone(), BuildConfig::default()).with_cache(c.clone());
    let mut f1 = f1;
    f1.extend_to_height(4).unwrap();
    // Height 0 through 4 in rank 2: 1 + 2 + 3 + 4 + 5 weights.
    assert_eq!(c.list().unwrap().len(), 15);
    let mut f2 = BasisFamily::new(a, BuildConfig::default()).with_cache(c.clone());
    f2.extend_to_height(4).unwrap();
    for w in f1.weights() {
        let (r1, r2) = (f1.get(&w).unwrap(), f2.get(&w).unwrap());
        assert_eq!(r1.dim(), r2.dim());
        for (x, y) in r1.elements.iter().zip(&r2.elements) {
            assert_eq!(x.psi, y.psi);
            assert_eq!(x.provenance, y.provenance);
        }
    }
    assert_eq!(c.clear().unwrap(), 15);
    assert!(c.list().unwrap().is_empty());
}

#[test]
fn stale_version_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let c = Arc::new(Cache::open(dir.path()).unwrap());
    let a = alg("a2");
    let mut f = BasisFamily::new(a.clone(), BuildConfig::default()).with_cache(c.clone());
    f.extend_to_height(2).unwrap();
    // Rewrite every entry with a different version number.
    for e in c.list().unwrap() {
        let p = dir.path().join(&e.file);
        let mut v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
        v["version"] = serde_json::json!(0);
        std::fs::write(&p, v.to_string()).unwrap();
    }
    assert!(c.list().unwrap().iter().all(|e| e.stale));
    let w = qfold::cartan::Weight::new(vec![1, 1]);
    assert!(c.load(&a, &w, 8).is_none());
    let mut g = BasisFamily::new(a, BuildConfig::default()).with_cache(c.clone());
    g.extend_to_height(2).unwrap();
    assert_eq!(g.get(&w).unwrap().dim(), 2);
    assert!(c.list().unwrap().iter().all(|e| !e.stale));
}
