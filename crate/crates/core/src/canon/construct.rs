//! Inductive construction: candidates `f_i^{(n)} y` with `ε_i(y) = 0`, corrected by
//! symmetric rounding against finalized elements of larger `ε_i`.

use std::collections::HashMap;
use std::sync::Arc;

use super::record::{BasisElement, BasisRecord, Provenance};
use super::CanonError;
use crate::cartan::Weight;
use crate::ring::symmetric_round;
use crate::uqminus::{epsilon, Algebra, Monomial, MonomialExpr};
use crate::ZLaurent;

/// Knobs for the constructor.
#[derive(Clone, Debug)]
pub struct BuildConfig {
    /// Bound on correction passes per candidate.
    pub max_passes: u32,
    /// Extra precision added to every series expansion.
    pub trunc: i32,
    /// Order in which nodes are interleaved at equal `n`; `None` means ascending.
    pub node_order: Option<Vec<usize>>,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            max_passes: 32,
            trunc: 8,
            node_order: None,
        }
    }
}

/// The basis of weight zero: `{1}`.
pub fn unit_record(alg: &Algebra) -> BasisRecord {
    let b = Weight::zero(alg.rank());
    let expr = MonomialExpr::monomial(Monomial::one());
    let words = alg.expr_words(&b, &expr);
    BasisRecord::new(
        b,
        vec![BasisElement {
            expr,
            psi: alg.one(),
            words,
            eps: vec![0; alg.rank()],
            adapted: Monomial::one(),
            provenance: None,
        }],
    )
}

/// Builds the canonical basis of `b` from the records of all lower weights.
pub fn canonical_basis(
    alg: &Algebra,
    b: &Weight,
    lower: &HashMap<Weight, Arc<BasisRecord>>,
    cfg: &BuildConfig,
) -> Result<BasisRecord, CanonError> {
    if b.is_zero() {
        return Ok(unit_record(alg));
    }
    let rank = alg.rank();
    let datum = alg.datum();
    let nodes: Vec<usize> = cfg
        .node_order
        .clone()
        .unwrap_or_else(|| (0..rank).collect());
    let top = b.mults().iter().copied().max().unwrap_or(0);
    let mut done: Vec<BasisElement> = Vec::new();

    for n in (1..=top).rev() {
        for &i in &nodes {
            let Some(rest) = b.sub_simple(i, n) else {
                continue;
            };
            let parents = lower
                .get(&rest)
                .ok_or_else(|| CanonError::MissingLower(rest.key()))?;
            let fpow = alg.f_power(i, n);
            for (pidx, y) in parents.elements.iter().enumerate() {
                if y.eps[i] != 0 {
                    continue;
                }
                let mut psi = alg.product(&fpow, &y.psi);
                let mut expr = y.expr.left_power(datum, i, n);
                let mut words = alg.expr_words(b, &expr);
                let mut corrections: Vec<(usize, ZLaurent)> = Vec::new();
                let mut zs: Vec<usize> = (0..done.len()).filter(|&k| done[k].eps[i] > n).collect();
                zs.sort_by(|&a, &c| done[c].eps[i].cmp(&done[a].eps[i]).then(a.cmp(&c)));
                let mut passes = 0;
                loop {
                    let mut changed = false;
                    for &k in &zs {
                        let z = &done[k];
                        let v = alg.pair(&psi, &z.words);
                        if v.in_q_power_series() {
                            continue;
                        }
                        let reach = -v.num.min_exp().unwrap_or(0);
                        let order = reach.max(0) + cfg.trunc;
                        let zz = alg.pair(&z.psi, &z.words).series(order + reach.max(0));
                        let s = v.series(order).div(&zz)?;
                        let c = symmetric_round(&s)?;
                        if c.is_zero() {
                            continue;
                        }
                        psi.add_scaled(&z.psi, &-&c);
                        expr.add_scaled(&z.expr, &-&c);
                        words = alg.expr_words(b, &expr);
                        corrections.push((k, c));
                        changed = true;
                    }
                    passes += 1;
                    if !changed {
                        break;
                    }
                    if passes >= cfg.max_passes {
                        return Err(CanonError::Diverged {
                            weight: b.key(),
                            node: i,
                            n,
                            passes,
                        });
                    }
                }
                if done.iter().any(|d| d.psi == psi) {
                    continue;
                }
                if !alg.pair(&psi, &words).in_one_plus_q() {
                    return Err(CanonError::CandidateNotNormalized {
                        weight: b.key(),
                        node: i,
                        n,
                        parent: pidx,
                    });
                }
                let eps = (0..rank)
                    .map(|j| {
                        if b.get(j) == 0 {
                            0
                        } else {
                            epsilon(alg, j, &psi)
                        }
                    })
                    .collect();
                done.push(BasisElement {
                    expr,
                    psi,
                    words,
                    eps,
                    adapted: Monomial::power(i, n).concat(datum, &y.adapted).0,
                    provenance: Some(Provenance {
                        node: i,
                        n,
                        parent: pidx,
                        corrections,
                        passes,
                    }),
                });
            }
        }
    }
    Ok(BasisRecord::new(b.clone(), done))
}
