use std::sync::Mutex;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::CanonError;
use crate::cartan::Weight;
use crate::ring::TruncatedSeries;
use crate::uqminus::{Algebra, Element, FormValue, Monomial, MonomialExpr, ScaledWords};
use crate::ZLaurent;

/// How an element was produced: `f_node^{(n)} · parent`, then corrected.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Provenance {
    pub node: usize,
    pub n: u32,
    /// Index of the parent in the basis of `β - nα_node`.
    pub parent: usize,
    /// `(index in this basis, coefficient)` subtracted during correction.
    pub corrections: Vec<(usize, ZLaurent)>,
    pub passes: u32,
}

/// One canonical basis element with its three coordinate systems.
#[derive(Clone, Debug)]
pub struct BasisElement {
    pub expr: MonomialExpr,
    pub psi: Element,
    pub words: ScaledWords,
    pub eps: Vec<u32>,
    /// `f_{i_1}^{(n_1)} f_{i_2}^{(n_2)} ⋯` read off the provenance chain.
    pub adapted: Monomial,
    pub provenance: Option<Provenance>,
}

/// The canonical basis of one weight space.
#[derive(Debug)]
pub struct BasisRecord {
    pub weight: Weight,
    pub elements: Vec<BasisElement>,
    gram_inverse: Mutex<Option<(i32, Vec<Vec<TruncatedSeries<BigInt>>>)>>,
}

impl Clone for BasisRecord {
    fn clone(&self) -> Self {
        BasisRecord::new(self.weight.clone(), self.elements.clone())
    }
}

/// Largest precision tried before an expansion is declared non-Laurent.
pub const MAX_EXPANSION_ORDER: i32 = 1 << 10;

impl BasisRecord {
    pub fn new(weight: Weight, elements: Vec<BasisElement>) -> Self {
        BasisRecord {
            weight,
            elements,
            gram_inverse: Mutex::new(None),
        }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn gram(&self, alg: &Algebra, s: usize, t: usize) -> FormValue {
        alg.pair(&self.elements[s].psi, &self.elements[t].words)
    }

    /// Index of the element with these `Ψ`-coordinates.
    pub fn find(&self, x: &Element) -> Option<usize> {
        self.elements.iter().position(|b| b.psi == *x)
    }

    fn inverse_at(
        &self,
        alg: &Algebra,
        order: i32,
    ) -> Result<Vec<Vec<TruncatedSeries<BigInt>>>, CanonError> {
        let mut guard = self.gram_inverse.lock().unwrap();
        if let Some((o, m)) = guard.as_ref() {
            if *o >= order {
                return Ok(m
                    .iter()
                    .map(|r| r.iter().map(|s| s.truncate(order)).collect())
                    .collect());
            }
        }
        let n = self.dim();
        let g: Vec<Vec<TruncatedSeries<BigInt>>> = (0..n)
            .map(|s| (0..n).map(|t| self.gram(alg, s, t).series(order)).collect())
            .collect();
        let inv = invert_series_matrix(g, order)?;
        *guard = Some((order, inv.clone()));
        Ok(inv)
    }

    /// Exact Laurent coordinates of `x` in this basis.
    ///
    /// Solves `G c = p` in `Z((q))`, reads off a Laurent candidate and accepts it only if
    /// `Ψ(x) = Σ c_b Ψ(b)` holds exactly.
    pub fn expand(&self, alg: &Algebra, x: &Element) -> Result<Vec<ZLaurent>, CanonError> {
        if x.weight() != &self.weight {
            return Err(CanonError::WeightMismatch);
        }
        if x.is_zero() {
            return Ok(vec![ZLaurent::zero(); self.dim()]);
        }
        let pairs: Vec<FormValue> = self
            .elements
            .iter()
            .map(|b| alg.pair(x, &b.words))
            .collect();
        let low = pairs
            .iter()
            .filter_map(|p| p.num.min_exp())
            .min()
            .unwrap_or(0)
            .min(0);
        let mut order = 2 * x.max_abs_exp().max(self.max_abs_exp()) + 8;
        while order <= MAX_EXPANSION_ORDER {
            let inv = self.inverse_at(alg, order - low)?;
            let ps: Vec<_> = pairs.iter().map(|p| p.series(order)).collect();
            let coeffs: Vec<ZLaurent> = inv
                .iter()
                .map(|row| {
                    let mut acc = TruncatedSeries::zero(order);
                    for (g, p) in row.iter().zip(&ps) {
                        acc = acc.add(&g.mul(p));
                    }
                    acc.truncate(order).to_laurent()
                })
                .collect();
            let mut recon = alg.zero(&self.weight);
            for (b, c) in self.elements.iter().zip(&coeffs) {
                if !c.is_zero() {
                    recon.add_scaled(&b.psi, c);
                }
            }
            if recon == *x {
                return Ok(coeffs);
            }
            order *= 2;
        }
        Err(CanonError::NoLaurentExpansion {
            weight: self.weight.key(),
            order: MAX_EXPANSION_ORDER,
        })
    }

    pub fn max_abs_exp(&self) -> i32 {
        self.elements
            .iter()
            .map(|b| b.psi.max_abs_exp())
            .max()
            .unwrap_or(0)
    }
}

/// Gauss-Jordan inverse of a series matrix whose diagonal entries are units.
pub fn invert_series_matrix(
    mut a: Vec<Vec<TruncatedSeries<BigInt>>>,
    order: i32,
) -> Result<Vec<Vec<TruncatedSeries<BigInt>>>, CanonError> {
    let n = a.len();
    let one = TruncatedSeries::from_laurent(&ZLaurent::one(), order);
    let zero = TruncatedSeries::zero(order);
    let mut inv: Vec<Vec<TruncatedSeries<BigInt>>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { one.clone() } else { zero.clone() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = a[col][col]
            .inverse()
            .map_err(|_| CanonError::NotAlmostOrthonormal)?;
        for k in 0..n {
            a[col][k] = a[col][k].mul(&p);
            inv[col][k] = inv[col][k].mul(&p);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero_to_precision() {
                continue;
            }
            let f = a[r][col].clone();
            for k in 0..n {
                let t = f.mul(&a[col][k]);
                a[r][k] = a[r][k].sub(&t);
                let t = f.mul(&inv[col][k]);
                inv[r][k] = inv[r][k].sub(&t);
            }
        }
    }
    Ok(inv)
}
