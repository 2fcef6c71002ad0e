use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::{FoldContext, FoldError};
use crate::cartan::{DiagramAutomorphism, Weight};
use crate::ring::{Fp, LaurentPoly};
use crate::uqminus::{Algebra, Element, FreeElement, Monomial, MonomialExpr};
use crate::ZLaurent;

/// An element of the mod-ℓ quotient, in coordinates on the σ-fixed canonical basis elements.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct QuotientElement<const P: u64> {
    pub weight: Weight,
    /// Indices (into the unfolded basis of `weight`) of the σ-fixed elements.
    pub fixed: Vec<usize>,
    pub coords: Vec<LaurentPoly<Fp<P>>>,
}

impl<const P: u64> QuotientElement<P> {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn unit(ctx: &FoldContext, weight: &Weight, k: usize) -> Result<Self, FoldError> {
        let data = ctx.stable_data(weight)?;
        let coords = (0..data.fixed.len())
            .map(|t| {
                if t == k {
                    LaurentPoly::one()
                } else {
                    LaurentPoly::zero()
                }
            })
            .collect();
        Ok(QuotientElement {
            weight: weight.clone(),
            fixed: data.fixed.clone(),
            coords,
        })
    }
}

/// `O(x) = Σ_{0≤i<k} σ^i(x)`, `k` minimal with `σ^k(x) = x`, as homogeneous components in
/// weight order. A σ-stable weight gives a single component.
pub fn orbit_sum(alg: &Algebra, s: &DiagramAutomorphism, x: &Element) -> Vec<Element> {
    let mut parts: BTreeMap<Weight, Element> = BTreeMap::new();
    let mut y = x.clone();
    loop {
        match parts.get_mut(y.weight()) {
            Some(p) => *p = p.add(&y),
            None => {
                parts.insert(y.weight().clone(), y.clone());
            }
        }
        y = alg.sigma(s, &y);
        if y == *x {
            break;
        }
    }
    parts.into_values().collect()
}

/// Orbit sum in the free algebra, as homogeneous components in weight order.
pub fn orbit_sum_free(s: &DiagramAutomorphism, x: &FreeElement) -> Vec<FreeElement> {
    let mut parts: BTreeMap<Weight, FreeElement> = BTreeMap::new();
    let mut y = x.clone();
    loop {
        let w = y.weight().clone();
        let acc = parts.remove(&w).map_or_else(|| y.clone(), |p| p.add(&y));
        parts.insert(w, acc);
        y = y.sigma(s);
        if y == *x {
            break;
        }
    }
    parts.into_values().collect()
}

/// Indices of the σ-fixed canonical basis elements of a stable weight.
pub fn stable_basis(ctx: &FoldContext, b: &Weight) -> Result<Vec<usize>, FoldError> {
    Ok(ctx.stable_data(b)?.fixed.clone())
}

/// Expands `x` in the canonical basis, reduces mod ℓ, checks orbit constancy and keeps
/// the σ-fixed coordinates; non-fixed orbits span the image of the ideal being factored out.
pub fn fold_reduce<const P: u64>(
    ctx: &FoldContext,
    x: &Element,
) -> Result<QuotientElement<P>, FoldError> {
    let b = x.weight();
    let data = ctx.stable_data(b)?;
    let rec = ctx
        .unfolded
        .get(b)
        .ok_or_else(|| FoldError::OutOfRange(b.key()))?;
    let coeffs = rec.expand(ctx.unfolded_alg(), x)?;
    let reduced: Vec<LaurentPoly<Fp<P>>> = coeffs
        .iter()
        .map(|c| c.map_coeffs(Fp::<P>::from_bigint))
        .collect();
    if (0..reduced.len()).any(|s| reduced[data.perm[s]] != reduced[s]) {
        return Err(FoldError::NotInvariant(b.key()));
    }
    Ok(QuotientElement {
        weight: b.clone(),
        fixed: data.fixed.clone(),
        coords: data.fixed.iter().map(|&s| reduced[s].clone()).collect(),
    })
}

/// `f̃_j^{(a)} = Π_{i∈j} f_i^{(a)}`; the factors commute because orbits carry no edges.
pub fn g_monomial(ctx: &FoldContext, j: usize, a: u32) -> Element {
    let alg = ctx.unfolded_alg();
    let orbit = &ctx.sigma.orbits()[j];
    let mut m = Monomial::one();
    for &i in orbit {
        m = m.concat(alg.datum(), &Monomial::power(i, a)).0;
    }
    (*alg.monomial(&m)).clone()
}

/// Image of a folded monomial `g_{j_1}^{(a_1)} ⋯` as an unfolded element.
pub fn lift_monomial(ctx: &FoldContext, m: &Monomial) -> Element {
    let alg = ctx.unfolded_alg();
    let mut acc = alg.one();
    for (j, a) in m.blocks() {
        acc = alg.product(&acc, &g_monomial(ctx, j, a));
    }
    acc
}

/// Image of a folded monomial expression.
pub fn lift_expr(ctx: &FoldContext, folded_weight: &Weight, e: &MonomialExpr) -> Element {
    let alg = ctx.unfolded_alg();
    let mut acc = alg.zero(&ctx.sigma.unfold_weight(folded_weight));
    for (m, c) in e.terms() {
        acc.add_scaled(&lift_monomial(ctx, m), c);
    }
    acc
}

fn lift_coeff<const P: u64>(c: &LaurentPoly<Fp<P>>) -> ZLaurent {
    ZLaurent::from_terms(c.terms().iter().map(|(e, v)| (*e, BigInt::from(v.value()))))
}

/// A σ-invariant integral lift of `v`.
pub fn lift<const P: u64>(ctx: &FoldContext, v: &QuotientElement<P>) -> Result<Element, FoldError> {
    let rec = ctx
        .unfolded
        .get(&v.weight)
        .ok_or_else(|| FoldError::OutOfRange(v.weight.key()))?;
    let mut acc = ctx.unfolded_alg().zero(&v.weight);
    for (&s, c) in v.fixed.iter().zip(&v.coords) {
        if !c.is_zero() {
            acc.add_scaled(&rec.elements[s].psi, &lift_coeff(c));
        }
    }
    Ok(acc)
}

/// `g_j^{(a)} · v` in the quotient.
pub fn tilde_f_apply<const P: u64>(
    ctx: &FoldContext,
    j: usize,
    a: u32,
    v: &QuotientElement<P>,
) -> Result<QuotientElement<P>, FoldError> {
    let x = ctx
        .unfolded_alg()
        .product(&g_monomial(ctx, j, a), &lift(ctx, v)?);
    fold_reduce(ctx, &x)
}
