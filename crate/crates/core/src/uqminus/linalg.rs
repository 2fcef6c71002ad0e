//! Exact linear algebra over `Z[q, q^-1]` and `Q(q)`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::engine::{Algebra, Element, FormValue};
use super::monomial::enumerate_monomials;
use super::{FreeElement, Monomial, UqError};
use crate::cartan::Weight;
use crate::ring::poly::{self, DensePoly};
use crate::ring::RationalFn;
use crate::ZLaurent;

/// Incremental fraction-free row echelon form; rows are primitive over `Z[q]`.
#[derive(Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<DensePoly>)>,
}

fn to_polys(row: &[ZLaurent]) -> Vec<DensePoly> {
    let low = row.iter().filter_map(|c| c.min_exp()).min().unwrap_or(0);
    row.iter()
        .map(|c| {
            let mut p: DensePoly = Vec::new();
            for (e, v) in c.terms() {
                let k = (e - low) as usize;
                if p.len() <= k {
                    p.resize(k + 1, BigInt::zero());
                }
                p[k] = v.clone();
            }
            p
        })
        .collect()
}

fn is_zero_poly(p: &DensePoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn make_primitive(row: &mut [DensePoly]) {
    let mut g: DensePoly = Vec::new();
    for p in row.iter() {
        if !is_zero_poly(p) {
            g = poly::gcd(&g, p);
        }
    }
    if g.len() == 1 && (g[0] == BigInt::from(1) || g[0] == BigInt::from(-1)) || g.is_empty() {
        return;
    }
    for p in row.iter_mut() {
        if !is_zero_poly(p) {
            *p = poly::div_exact(p, &g).expect("gcd divides");
        }
    }
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, row: &[ZLaurent]) -> Vec<DensePoly> {
        let mut r = to_polys(row);
        for (c, p) in &self.rows {
            if is_zero_poly(&r[*c]) {
                continue;
            }
            let a = p[*c].clone();
            let b = r[*c].clone();
            for k in 0..r.len() {
                let lhs = poly::mul(&a, &r[k]);
                let rhs = poly::mul(&b, &p[k]);
                let mut d = poly::sub(&lhs, &rhs);
                poly::trim(&mut d);
                r[k] = d;
            }
            make_primitive(&mut r);
        }
        r
    }

    /// True iff `row` lies in the `Q(q)`-span of the rows inserted so far.
    pub fn contains(&self, row: &[ZLaurent]) -> bool {
        self.reduce(row).iter().all(is_zero_poly)
    }

    /// Inserts `row`; returns false (and leaves the form unchanged) if it is dependent.
    pub fn insert(&mut self, row: &[ZLaurent]) -> bool {
        let r = self.reduce(row);
        let Some(c) = r.iter().position(|p| !is_zero_poly(p)) else {
            return false;
        };
        let at = self
            .rows
            .iter()
            .position(|(pc, _)| *pc > c)
            .unwrap_or(self.rows.len());
        self.rows.insert(at, (c, r));
        true
    }
}

/// Rank over `Q(q)` of Laurent rows.
pub fn laurent_rank(rows: &[Vec<ZLaurent>]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Solves a square nonsingular system over `Q(q)`; `None` if singular.
pub fn solve_rational(
    mut a: Vec<Vec<RationalFn>>,
    mut b: Vec<RationalFn>,
) -> Option<Vec<RationalFn>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].inverse().ok()?;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&inv);
            for k in col..n {
                let t = f.mul(&a[col][k]);
                a[r][k] = a[r][k].sub(&t);
            }
            let t = f.mul(&b[col]);
            b[r] = b[r].sub(&t);
        }
    }
    Some(
        (0..n)
            .map(|k| b[k].div(&a[k][k]).expect("nonzero pivot"))
            .collect(),
    )
}

/// Gram matrix of the divided-power monomials of one weight.
#[derive(Clone, Debug, Serialize)]
pub struct GramMatrix {
    pub weight: Weight,
    pub monomials: Vec<Monomial>,
    pub entries: Vec<Vec<FormValue>>,
    /// Greedily selected monomials spanning the weight space.
    pub selected: Vec<usize>,
    pub rank: usize,
}

impl GramMatrix {
    pub fn rational(&self, a: usize, b: usize) -> RationalFn {
        self.entries[a][b].to_rational()
    }
}

/// Gram matrix under the form, with greedy full-rank selection in monomial order.
pub fn gram_matrix(alg: &Algebra, b: &Weight) -> GramMatrix {
    let monomials = enumerate_monomials(b);
    let elems: Vec<_> = monomials.iter().map(|m| alg.monomial(m)).collect();
    let words: Vec<_> = monomials
        .iter()
        .map(|m| alg.expr_words(b, &super::MonomialExpr::monomial(m.clone())))
        .collect();
    let entries: Vec<Vec<FormValue>> = elems
        .iter()
        .map(|x| words.iter().map(|w| alg.pair(x, w)).collect())
        .collect();
    let mut ech = Echelon::new();
    let mut selected = Vec::new();
    for (k, row) in entries.iter().enumerate() {
        let nums: Vec<ZLaurent> = row.iter().map(|v| v.num.clone()).collect();
        if ech.insert(&nums) {
            selected.push(k);
        }
    }
    let rank = selected.len();
    GramMatrix {
        weight: b.clone(),
        monomials,
        entries,
        selected,
        rank,
    }
}

/// `(x, m)` for a free element `x` and an engine element `m`, as `Σ_v x_v Ψ(m)(v) / D_β`.
pub fn pair_free(alg: &Algebra, x: &FreeElement, m: &Element) -> RationalFn {
    if x.weight() != m.weight() {
        return RationalFn::zero();
    }
    let sp = alg.space(m.weight());
    let mut acc = RationalFn::zero();
    for (w, c) in x.terms() {
        let p = &m.psi()[sp.index_of(w).expect("same weight")];
        if !p.is_zero() {
            acc = acc.add(&c.mul_laurent(p));
        }
    }
    let mut den = ZLaurent::one();
    for (i, &n) in m.weight().mults().iter().enumerate() {
        let f = ZLaurent::from_terms([(0, 1.into()), (2 * alg.datum().d(i) as i32, (-1).into())]);
        den = &den * &f.pow(n);
    }
    acc.div(&RationalFn::from_laurent(den)).expect("nonzero")
}

/// Coordinates of `x` in the selected monomials; errors if `x` is outside their span.
pub fn expand_in_basis(
    alg: &Algebra,
    x: &FreeElement,
    g: &GramMatrix,
) -> Result<Vec<RationalFn>, UqError> {
    let b = &g.weight;
    if x.weight() != b && !x.is_zero() {
        return Err(UqError::WeightMismatch);
    }
    let sel = &g.selected;
    let pairs: Vec<RationalFn> = g
        .monomials
        .iter()
        .map(|m| pair_free(alg, x, &alg.monomial(m)))
        .collect();
    let a: Vec<Vec<RationalFn>> = sel
        .iter()
        .map(|&r| sel.iter().map(|&c| g.rational(c, r)).collect())
        .collect();
    let rhs: Vec<RationalFn> = sel.iter().map(|&r| pairs[r].clone()).collect();
    let c = solve_rational(a, rhs).ok_or(UqError::SingularGram)?;
    for (k, p) in pairs.iter().enumerate() {
        let mut acc = RationalFn::zero();
        for (s, cs) in sel.iter().zip(&c) {
            acc = acc.add(&cs.mul(&g.rational(*s, k)));
        }
        if acc != *p {
            return Err(UqError::NotInSpan);
        }
    }
    Ok(c)
}

/// Exact determinant of a square Laurent matrix by fraction-free elimination.
pub fn laurent_det(m: &[Vec<ZLaurent>]) -> ZLaurent {
    let n = m.len();
    if n == 0 {
        return ZLaurent::one();
    }
    let mut shift = 0i32;
    let mut a: Vec<Vec<DensePoly>> = m
        .iter()
        .map(|row| {
            shift += row.iter().filter_map(|c| c.min_exp()).min().unwrap_or(0);
            to_polys(row)
        })
        .collect();
    let mut sign = 1i64;
    let mut prev: DensePoly = vec![BigInt::from(1)];
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !is_zero_poly(&a[r][k])) else {
            return ZLaurent::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = poly::mul(&a[i][j], &a[k][k]);
                let rhs = poly::mul(&a[i][k], &a[k][j]);
                let mut d = poly::sub(&lhs, &rhs);
                poly::trim(&mut d);
                a[i][j] = if is_zero_poly(&d) {
                    Vec::new()
                } else {
                    poly::div_exact(&d, &prev).expect("Bareiss division")
                };
            }
            a[i][k] = Vec::new();
        }
        prev = a[k][k].clone();
    }
    let det = ZLaurent::from_dense(shift, prev);
    if sign < 0 {
        -det
    } else {
        det
    }
}
