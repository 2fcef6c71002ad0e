use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    apply_overrides, build_lj, default_params, graded_dim_r_alpha_j, sigma_on_generators,
    verify_relations, GradedDim, KLRParams, KlrError, RelationReport, SigmaReport,
};
use crate::cartan::LoadedDatum;

#[derive(Clone, Debug, Serialize)]
pub struct GradedEntry {
    pub orbit: Vec<usize>,
    pub nu: Vec<usize>,
    pub nu_prime: Vec<usize>,
    pub dim: GradedDim,
    pub nonnegative: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KlrReport {
    pub datum: String,
    pub params: KLRParams,
    pub sigma: SigmaReport,
    pub orbits: Vec<RelationReport>,
    pub graded: Vec<GradedEntry>,
    /// For each orbit and `ν`, the `τ_w` terms summed over `ν'` number `t!`.
    pub basis_count_ok: bool,
    pub passed: bool,
}

fn factorial(t: usize) -> i64 {
    (1..=t as i64).product()
}

/// Parameters, σ-consistency, relations on every orbit model, and graded dimensions.
pub fn klr_check(loaded: &LoadedDatum, symmetric: bool) -> Result<KlrReport, KlrError> {
    let d = &loaded.datum;
    let s = &loaded.sigma;
    let mut params = default_params(d, s, symmetric, 0)?;
    if let Some(o) = &loaded.klr_params {
        params = apply_overrides(params, o, s)?;
    }
    let sigma = sigma_on_generators(&params, s);
    let orbits: Vec<RelationReport> = s
        .orbits()
        .par_iter()
        .map(|o| build_lj(&params, o, s).map(|m| verify_relations(&params, &m, s)))
        .collect::<Result<_, _>>()?;

    let mut graded = Vec::new();
    let mut basis_count_ok = true;
    for o in s.orbits() {
        let m = build_lj(&params, o, s)?;
        for nu in &m.basis {
            let mut count = BigInt::from(0);
            for nu2 in &m.basis {
                let dim = graded_dim_r_alpha_j(d, o, nu, nu2)?;
                count += dim
                    .num
                    .terms()
                    .iter()
                    .map(|(_, c)| c.clone())
                    .sum::<BigInt>();
                let nonnegative = dim.nonnegative_to(32);
                graded.push(GradedEntry {
                    orbit: o.clone(),
                    nu: nu.clone(),
                    nu_prime: nu2.clone(),
                    dim,
                    nonnegative,
                });
            }
            basis_count_ok &= count == BigInt::from(factorial(o.len()));
        }
    }
    let passed = sigma.consistent
        && orbits.iter().all(|r| r.passed)
        && graded.iter().all(|g| g.nonnegative)
        && basis_count_ok;
    Ok(KlrReport {
        datum: d.name().to_string(),
        params,
        sigma,
        orbits,
        graded,
        basis_count_ok,
        passed,
    })
}
