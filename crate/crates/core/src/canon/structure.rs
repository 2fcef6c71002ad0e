use rayon::prelude::*;
use serde::Serialize;

use super::{BasisFamily, CanonError};
use crate::cartan::{DiagramAutomorphism, Weight};
use crate::ZLaurent;

/// `b1 · b2 = Σ c_b b` in the canonical basis of the product weight.
#[derive(Clone, Debug, Serialize)]
pub struct StructureConstants {
    pub left: (String, usize),
    pub right: (String, usize),
    pub product_weight: String,
    /// Nonzero coefficients, by element index.
    pub coefficients: Vec<(usize, ZLaurent)>,
    /// Indices whose coefficient has a negative integer somewhere.
    pub negative: Vec<usize>,
}

pub fn structure_constants(
    fam: &BasisFamily,
    (w1, s1): (&Weight, usize),
    (w2, s2): (&Weight, usize),
) -> Result<StructureConstants, CanonError> {
    let alg = fam.algebra();
    let r1 = fam
        .get(w1)
        .ok_or_else(|| CanonError::MissingLower(w1.key()))?;
    let r2 = fam
        .get(w2)
        .ok_or_else(|| CanonError::MissingLower(w2.key()))?;
    let w = w1.add(w2);
    let r = fam
        .get(&w)
        .ok_or_else(|| CanonError::MissingLower(w.key()))?;
    let x = alg.product(&r1.elements[s1].psi, &r2.elements[s2].psi);
    let c = r.expand(alg, &x)?;
    let coefficients: Vec<(usize, ZLaurent)> = c
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .collect();
    let negative = coefficients
        .iter()
        .filter(|(_, v)| !v.is_nonnegative())
        .map(|(k, _)| *k)
        .collect();
    Ok(StructureConstants {
        left: (w1.key(), s1),
        right: (w2.key(), s2),
        product_weight: w.key(),
        coefficients,
        negative,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureSweep {
    pub products: usize,
    /// Products whose expansion was not Laurent; any entry falsifies integrality.
    pub non_laurent: Vec<String>,
    /// Products with a negative coefficient; recorded only.
    pub positivity_violations: Vec<StructureConstants>,
    pub passed: bool,
}

/// Expands every product of two nonzero-weight basis elements whose total height is at most `bound`.
pub fn structure_sweep(fam: &BasisFamily, bound: u32) -> StructureSweep {
    let ws: Vec<Weight> = fam.weights().into_iter().filter(|w| !w.is_zero()).collect();
    let mut jobs = Vec::new();
    for w1 in &ws {
        for w2 in &ws {
            if w1.height() + w2.height() > bound {
                continue;
            }
            for s1 in 0..fam.get(w1).unwrap().dim() {
                for s2 in 0..fam.get(w2).unwrap().dim() {
                    jobs.push((w1, s1, w2, s2));
                }
            }
        }
    }
    let results: Vec<Result<StructureConstants, String>> = jobs
        .par_iter()
        .map(|&(w1, s1, w2, s2)| {
            structure_constants(fam, (w1, s1), (w2, s2))
                .map_err(|e| format!("{}#{s1} * {}#{s2}: {e}", w1.key(), w2.key()))
        })
        .collect();
    let mut non_laurent = Vec::new();
    let mut positivity_violations = Vec::new();
    for r in results {
        match r {
            Ok(sc) if !sc.negative.is_empty() => positivity_violations.push(sc),
            Ok(_) => {}
            Err(e) => non_laurent.push(e),
        }
    }
    let passed = non_laurent.is_empty();
    StructureSweep {
        products: jobs.len(),
        non_laurent,
        positivity_violations,
        passed,
    }
}

/// `perm[s] = t` when `σ(b_s) = b_t`; `None` if some `σ(b_s)` is not in the basis.
pub fn sigma_permutation(
    fam: &BasisFamily,
    s: &DiagramAutomorphism,
    b: &Weight,
) -> Option<Vec<usize>> {
    let rec = fam.get(b)?;
    if !s.is_stable(b) {
        return None;
    }
    let alg = fam.algebra();
    rec.elements
        .iter()
        .map(|e| rec.find(&alg.sigma(s, &e.psi)))
        .collect()
}
