use serde::Serialize;

use super::model::Gen;
use super::KlrError;
use crate::cartan::CartanDatum;
use crate::ring::TruncatedSeries;
use crate::ZLaurent;

/// `deg(g e(ν))`: `0` for `e`, `(α_{ν_k}, α_{ν_k})` for `x_k`, `−(α_{ν_k}, α_{ν_{k+1}})` for `τ_k`.
pub fn degree(d: &CartanDatum, g: &Gen, nu: &[usize]) -> Result<i64, KlrError> {
    match g {
        Gen::E(_) => Ok(0),
        Gen::X(k) if (1..=nu.len()).contains(k) => Ok(d.pair(nu[k - 1], nu[k - 1])),
        Gen::T(k) if (1..nu.len()).contains(k) => Ok(-d.pair(nu[k - 1], nu[*k])),
        _ => Err(KlrError::OutOfRange),
    }
}

/// Degree of the word `g_1 ⋯ g_m e(ν)`; each `τ_k` moves the idempotent to `s_k ν`.
/// Returns `None` when an `e(ν')` in the word does not match the current idempotent.
pub fn word_degree(d: &CartanDatum, word: &[Gen], nu: &[usize]) -> Result<Option<i64>, KlrError> {
    let mut cur = nu.to_vec();
    let mut total = 0;
    for g in word.iter().rev() {
        total += degree(d, g, &cur)?;
        match g {
            Gen::T(k) => cur.swap(k - 1, *k),
            Gen::E(m) if *m != cur => return Ok(None),
            _ => {}
        }
    }
    Ok(Some(total))
}

/// `num / Π (1 − q^{e_k})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDim {
    pub num: ZLaurent,
    pub den: Vec<u32>,
}

impl GradedDim {
    pub fn series(&self, order: i32) -> TruncatedSeries<num_bigint::BigInt> {
        let mut s = TruncatedSeries::from_laurent(&self.num, order);
        for &e in &self.den {
            s = s.div_one_minus_q_pow(e);
        }
        s
    }

    /// Coefficients up to `order` are all nonnegative.
    pub fn nonnegative_to(&self, order: i32) -> bool {
        let s = self.series(order);
        (s.valuation().min(0)..order).all(|e| s.coeff(e).map(|c| c >= 0.into()).unwrap_or(true))
    }
}

/// Graded dimension of `e(ν') R(α_j) e(ν)` from the basis `{x^a τ_w e(ν)}`.
pub fn graded_dim_r_alpha_j(
    d: &CartanDatum,
    orbit: &[usize],
    nu: &[usize],
    nu2: &[usize],
) -> Result<GradedDim, KlrError> {
    let is_arrangement = |v: &[usize]| {
        let mut a = v.to_vec();
        let mut b = orbit.to_vec();
        a.sort();
        b.sort();
        a == b
    };
    if !is_arrangement(nu) || !is_arrangement(nu2) {
        return Err(KlrError::WrongWeight);
    }
    // Letters are distinct, so exactly one w has wν = ν'; its degree sums −(α, α') over inversions.
    let mut deg = 0i64;
    for a in 0..nu.len() {
        for b in a + 1..nu.len() {
            let (pa, pb) = (
                nu2.iter().position(|&x| x == nu[a]).unwrap(),
                nu2.iter().position(|&x| x == nu[b]).unwrap(),
            );
            if pa > pb {
                deg -= d.pair(nu[a], nu[b]);
            }
        }
    }
    let den = nu.iter().map(|&i| d.pair(i, i) as u32).collect();
    Ok(GradedDim {
        num: ZLaurent::q_pow(deg as i32),
        den,
    })
}
