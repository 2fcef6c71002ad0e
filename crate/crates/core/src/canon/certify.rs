//! Independent certification: bar-invariance, almost orthonormality, two-sided integrality.

use serde::Serialize;

use super::record::BasisRecord;
use crate::uqminus::{enumerate_monomials, gram_matrix, laurent_det, Algebra, FormValue};
use crate::ZLaurent;

#[derive(Clone, Debug, Serialize)]
pub struct CertFailure {
    pub check: String,
    pub elements: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certification {
    pub weight: String,
    pub dim: usize,
    pub orders: [i32; 2],
    pub bar_invariant: bool,
    pub consistent: bool,
    pub almost_orthonormal: bool,
    pub stable_under_doubling: bool,
    pub monomials_checked: usize,
    pub monomials_integral: bool,
    /// Exact determinant of the adapted-monomial transition matrix.
    pub transition_det: String,
    pub transition_unit: bool,
    /// Exact Gram rank, when the monomial count is small enough to compute it.
    pub gram_rank: Option<usize>,
    pub failures: Vec<CertFailure>,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct CertifyConfig {
    /// Extra precision on top of twice the largest Gram exponent.
    pub trunc: i32,
    /// Exact Gram rank is computed when there are at most this many monomials.
    pub gram_rank_limit: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            trunc: 8,
            gram_rank_limit: 12,
        }
    }
}

fn orthonormality_verdicts(
    gram: &[Vec<FormValue>],
    order: i32,
) -> Vec<(usize, usize, bool, String)> {
    let mut out = Vec::new();
    for (s, row) in gram.iter().enumerate() {
        for (t, v) in row.iter().enumerate() {
            let ser = v.series(order);
            let ok = if s == t {
                ser.valuation() >= 0 && ser.coeff(0).map(|c| c == 1.into()).unwrap_or(false)
            } else {
                ser.valuation() >= 1
            };
            out.push((s, t, ok, ser.prefix(4).to_string()));
        }
    }
    out
}

fn is_unit(c: &ZLaurent) -> bool {
    c.as_monomial()
        .is_some_and(|(_, v)| v.magnitude() == &1u32.into())
}

/// Re-verifies a basis record from its stored expressions.
pub fn certify_basis(alg: &Algebra, rec: &BasisRecord, cfg: &CertifyConfig) -> Certification {
    let b = &rec.weight;
    let n = rec.dim();
    let mut failures = Vec::new();

    let mut bar_invariant = true;
    let mut consistent = true;
    for (k, e) in rec.elements.iter().enumerate() {
        if !e.expr.has_symmetric_coefficients() || !alg.is_bar_invariant(b, &e.words) {
            bar_invariant = false;
            failures.push(CertFailure {
                check: "bar_invariance".into(),
                elements: vec![k],
                detail: String::new(),
            });
        }
        if alg.expr_element(b, &e.expr) != e.psi || alg.expr_words(b, &e.expr) != e.words {
            consistent = false;
            failures.push(CertFailure {
                check: "consistency".into(),
                elements: vec![k],
                detail: String::new(),
            });
        }
    }

    let gram: Vec<Vec<FormValue>> = (0..n)
        .map(|s| (0..n).map(|t| rec.gram(alg, s, t)).collect())
        .collect();
    let max_exp = gram
        .iter()
        .flatten()
        .map(|v| v.num.max_abs_exp())
        .max()
        .unwrap_or(0);
    let t1 = 2 * max_exp + cfg.trunc;
    let v1 = orthonormality_verdicts(&gram, t1);
    let v2 = orthonormality_verdicts(&gram, 2 * t1);
    let stable = v1.iter().zip(&v2).all(|(a, c)| a.2 == c.2);
    let mut almost_orthonormal = true;
    for (s, t, ok, prefix) in &v2 {
        if !ok {
            almost_orthonormal = false;
            failures.push(CertFailure {
                check: "almost_orthonormality".into(),
                elements: vec![*s, *t],
                detail: format!("{prefix} + O(q^4)"),
            });
        }
    }
    if !stable {
        failures.push(CertFailure {
            check: "order_doubling".into(),
            elements: vec![],
            detail: String::new(),
        });
    }

    // Every monomial must expand with Laurent coefficients; together with independence this
    // makes the record an A-basis of the integral weight space.
    let monomials = enumerate_monomials(b);
    let mut monomials_integral = almost_orthonormal;
    if almost_orthonormal {
        for m in &monomials {
            if let Err(e) = rec.expand(alg, &alg.monomial(m)) {
                monomials_integral = false;
                failures.push(CertFailure {
                    check: "integrality".into(),
                    elements: vec![],
                    detail: e.to_string(),
                });
            }
        }
    }

    let mut transition_det = String::from("n/a");
    let mut transition_unit = false;
    if monomials_integral {
        let rows: Result<Vec<Vec<ZLaurent>>, _> = rec
            .elements
            .iter()
            .map(|e| rec.expand(alg, &alg.monomial(&e.adapted)))
            .collect();
        match rows {
            Ok(rows) => {
                let det = laurent_det(&rows);
                transition_unit = is_unit(&det);
                transition_det = det.to_string();
            }
            Err(e) => transition_det = e.to_string(),
        }
        if !transition_unit {
            failures.push(CertFailure {
                check: "transition_determinant".into(),
                elements: vec![],
                detail: transition_det.clone(),
            });
        }
    }

    let gram_rank = (monomials.len() <= cfg.gram_rank_limit).then(|| gram_matrix(alg, b).rank);
    if let Some(r) = gram_rank {
        if r != n {
            failures.push(CertFailure {
                check: "dimension".into(),
                elements: vec![],
                detail: format!("gram rank {r}, basis size {n}"),
            });
        }
    }

    let passed = failures.is_empty();
    Certification {
        weight: b.key(),
        dim: n,
        orders: [t1, 2 * t1],
        bar_invariant,
        consistent,
        almost_orthonormal,
        stable_under_doubling: stable,
        monomials_checked: monomials.len(),
        monomials_integral,
        transition_det,
        transition_unit,
        gram_rank,
        failures,
        passed,
    }
}
