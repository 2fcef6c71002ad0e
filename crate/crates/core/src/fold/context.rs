use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::FoldError;
use crate::cache::Cache;
use crate::canon::{sigma_permutation, BasisFamily, BuildConfig};
use crate::cartan::{
    fold_datum, stable_weights, CartanDatum, DiagramAutomorphism, StableWeight, Weight,
};
use crate::ring::prime_power;
use crate::uqminus::Algebra;

/// How σ acts on the canonical basis of one stable weight.
#[derive(Clone, Debug)]
pub struct StableData {
    pub folded: Weight,
    /// `perm[s] = t` when `σ(b_s) = b_t`.
    pub perm: Vec<usize>,
    /// Indices of the σ-fixed elements, ascending.
    pub fixed: Vec<usize>,
}

/// An unfolded datum with σ, a prime ℓ with `ord σ = ℓ^e`, and both basis families.
#[derive(Debug)]
pub struct FoldContext {
    pub sigma: DiagramAutomorphism,
    pub ell: u64,
    pub bound: u32,
    pub unfolded: BasisFamily,
    pub folded: BasisFamily,
    stable: BTreeMap<Weight, StableData>,
}

/// Weights of the folded q-Serre elements `(1 - a_jk) α_j + α_k`, unfolded.
pub(crate) fn serre_weights(
    sigma: &DiagramAutomorphism,
    folded: &CartanDatum,
) -> Vec<(usize, usize, Weight)> {
    let mut out = Vec::new();
    for j in 0..folded.rank() {
        for k in 0..folded.rank() {
            if j == k {
                continue;
            }
            let mut m = vec![0u32; folded.rank()];
            m[j] = (1 - folded.cartan(j, k)) as u32;
            m[k] = 1;
            out.push((j, k, sigma.unfold_weight(&Weight::new(m))));
        }
    }
    out
}

impl FoldContext {
    /// Builds both families up to unfolded height `bound`, plus the weights of the folded
    /// q-Serre elements so that well-definedness can be checked even above the bound.
    pub fn new(
        datum: CartanDatum,
        sigma: DiagramAutomorphism,
        ell: u64,
        bound: u32,
        cfg: BuildConfig,
    ) -> Result<Self, FoldError> {
        Self::with_cache(datum, sigma, ell, bound, cfg, None)
    }

    /// As [`FoldContext::new`], reading and publishing both families through `cache`.
    pub fn with_cache(
        datum: CartanDatum,
        sigma: DiagramAutomorphism,
        ell: u64,
        bound: u32,
        cfg: BuildConfig,
        cache: Option<Arc<Cache>>,
    ) -> Result<Self, FoldError> {
        let order = sigma.order();
        let ok = order == 1 || prime_power(order as u64).is_some_and(|(p, _)| p == ell);
        if !ok {
            return Err(FoldError::NotPrimePower { order, ell });
        }
        if ![2, 3, 5, 7].contains(&ell) {
            return Err(FoldError::UnsupportedPrime(ell));
        }
        let folded_datum = fold_datum(&datum, &sigma);
        let alg = Arc::new(Algebra::new(datum));
        let attach = |f: BasisFamily| match &cache {
            Some(c) => f.with_cache(c.clone()),
            None => f,
        };
        let mut unfolded = attach(BasisFamily::new(alg, cfg.clone()));
        unfolded.extend_to_height(bound)?;
        for (_, _, w) in serre_weights(&sigma, &folded_datum) {
            unfolded.ensure(&w)?;
        }
        let mut folded = attach(BasisFamily::new(Arc::new(Algebra::new(folded_datum)), cfg));
        folded.extend_to_height(bound)?;

        let candidates: Vec<Weight> = unfolded
            .weights()
            .into_iter()
            .filter(|w| sigma.is_stable(w))
            .collect();
        let data: Vec<Result<(Weight, StableData), FoldError>> = candidates
            .par_iter()
            .map(|w| {
                let perm = sigma_permutation(&unfolded, &sigma, w)
                    .ok_or_else(|| FoldError::NotPermuted(w.key()))?;
                let fixed = (0..perm.len()).filter(|&s| perm[s] == s).collect();
                let folded = sigma.fold_weight(w).expect("stable");
                Ok((
                    w.clone(),
                    StableData {
                        folded,
                        perm,
                        fixed,
                    },
                ))
            })
            .collect();
        let stable = data.into_iter().collect::<Result<BTreeMap<_, _>, _>>()?;
        Ok(FoldContext {
            sigma,
            ell,
            bound,
            unfolded,
            folded,
            stable,
        })
    }

    pub fn unfolded_alg(&self) -> &Arc<Algebra> {
        self.unfolded.algebra()
    }

    pub fn folded_alg(&self) -> &Arc<Algebra> {
        self.folded.algebra()
    }

    pub fn stable_data(&self, w: &Weight) -> Result<&StableData, FoldError> {
        if !self.sigma.is_stable(w) {
            return Err(FoldError::NotStable(w.key()));
        }
        self.stable
            .get(w)
            .ok_or_else(|| FoldError::OutOfRange(w.key()))
    }

    /// Stable weights of unfolded height at most the bound, in weight order.
    pub fn stable_weights(&self) -> Vec<StableWeight> {
        stable_weights(&self.sigma, self.bound)
    }
}
