use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use super::{
    canonical_basis, certify_basis, BasisRecord, BuildConfig, CanonError, Certification,
    CertifyConfig,
};
use crate::cache::Cache;
use crate::cartan::{weights_up_to, Weight};
use crate::uqminus::Algebra;

/// Canonical bases of a downward-closed set of weights.
#[derive(Debug)]
pub struct BasisFamily {
    alg: Arc<Algebra>,
    cfg: BuildConfig,
    records: HashMap<Weight, Arc<BasisRecord>>,
    cache: Option<Arc<Cache>>,
}

fn below(b: &Weight) -> Vec<Weight> {
    let mut out = vec![Weight::zero(b.rank())];
    for (i, &m) in b.mults().iter().enumerate() {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..=m).map(move |k| {
                    let mut v = w.mults().to_vec();
                    v[i] = k;
                    Weight::new(v)
                })
            })
            .collect();
    }
    out
}

impl BasisFamily {
    pub fn new(alg: Arc<Algebra>, cfg: BuildConfig) -> Self {
        BasisFamily {
            alg,
            cfg,
            records: HashMap::new(),
            cache: None,
        }
    }

    /// Records are read from and published to `cache` as they are built.
    pub fn with_cache(mut self, cache: Arc<Cache>) -> Self {
        self.cache = Some(cache);
        self
    }

    /// Every weight of height at most `bound`.
    pub fn up_to_height(
        alg: Arc<Algebra>,
        bound: u32,
        cfg: BuildConfig,
    ) -> Result<Self, CanonError> {
        let mut fam = BasisFamily::new(alg, cfg);
        fam.extend_to_height(bound)?;
        Ok(fam)
    }

    pub fn extend_to_height(&mut self, bound: u32) -> Result<(), CanonError> {
        self.build(weights_up_to(self.alg.rank(), bound))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn config(&self) -> &BuildConfig {
        &self.cfg
    }

    /// Builds `b` together with every weight below it.
    pub fn ensure(&mut self, b: &Weight) -> Result<Arc<BasisRecord>, CanonError> {
        if !self.records.contains_key(b) {
            self.build(below(b))?;
        }
        Ok(self.records[b].clone())
    }

    /// Builds missing weights level by level; weights of one height are independent.
    fn build(&mut self, ws: Vec<Weight>) -> Result<(), CanonError> {
        let mut by_height: BTreeMap<u32, BTreeSet<Weight>> = BTreeMap::new();
        for w in ws {
            if !self.records.contains_key(&w) {
                by_height.entry(w.height()).or_default().insert(w);
            }
        }
        for (_, level) in by_height {
            let level: Vec<Weight> = level.into_iter().collect();
            let built: Vec<Result<BasisRecord, CanonError>> =
                level.par_iter().map(|b| self.build_one(b)).collect();
            for (b, r) in level.into_iter().zip(built) {
                self.records.insert(b, Arc::new(r?));
            }
        }
        Ok(())
    }

    fn build_one(&self, b: &Weight) -> Result<BasisRecord, CanonError> {
        let trunc = self.cfg.trunc;
        if let Some(c) = &self.cache {
            if let Some(r) = c.load(&self.alg, b, trunc) {
                return Ok(r);
            }
        }
        let r = canonical_basis(&self.alg, b, &self.records, &self.cfg)?;
        if let Some(c) = &self.cache {
            c.store(&self.alg, &r, trunc)
                .map_err(|e| CanonError::Io(e.to_string()))?;
        }
        Ok(r)
    }

    pub fn get(&self, b: &Weight) -> Option<&Arc<BasisRecord>> {
        self.records.get(b)
    }

    pub fn contains(&self, b: &Weight) -> bool {
        self.records.contains_key(b)
    }

    /// Weights in (height, lex) order.
    pub fn weights(&self) -> Vec<Weight> {
        let mut ws: Vec<Weight> = self.records.keys().cloned().collect();
        ws.sort();
        ws
    }

    pub fn records(&self) -> &HashMap<Weight, Arc<BasisRecord>> {
        &self.records
    }

    pub fn insert(&mut self, rec: BasisRecord) {
        self.records.insert(rec.weight.clone(), Arc::new(rec));
    }

    pub fn certify_all(&self, cfg: &CertifyConfig) -> Vec<Certification> {
        let ws = self.weights();
        ws.par_iter()
            .map(|b| certify_basis(&self.alg, &self.records[b], cfg))
            .collect()
    }
}
