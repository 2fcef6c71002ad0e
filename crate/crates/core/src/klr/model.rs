//! The `t!`-dimensional module `L_j` of `R(α_j)` for an orbit `j = {i_1, …, i_t}`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::params::{BiPoly, KLRParams};
use super::KlrError;
use crate::cartan::DiagramAutomorphism;

pub type Mat = Vec<Vec<BigRational>>;

/// Generators of `R(α_j)`; `x_k` and `τ_k` are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gen {
    E(Vec<usize>),
    X(usize),
    T(usize),
}

/// A linear combination of generator words; a word is a product read left to right.
pub type Expr = Vec<(BigRational, Vec<Gen>)>;

/// ψ: the anti-involution fixing every generator reverses each word.
pub fn psi(e: &Expr) -> Expr {
    e.iter()
        .map(|(c, w)| (c.clone(), w.iter().rev().cloned().collect()))
        .collect()
}

#[derive(Clone, Debug)]
pub struct LjModel {
    pub orbit: Vec<usize>,
    /// Basis `[w]` indexed by `wν ∈ I^{α_j}`, in lex order of the sequences.
    pub basis: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
    pub e: BTreeMap<Vec<usize>, Mat>,
    pub x: Vec<Mat>,
    pub tau: Vec<Mat>,
    /// `φ_j[w] = [σ(w)]`.
    pub phi: Mat,
}

fn zeros(n: usize) -> Mat {
    vec![vec![BigRational::zero(); n]; n]
}

fn identity(n: usize) -> Mat {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

fn mat_add_scaled(acc: &mut Mat, m: &Mat, c: &BigRational) {
    for (r, s) in acc.iter_mut().zip(m) {
        for (a, b) in r.iter_mut().zip(s) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (k, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

/// Constant term of a parameter polynomial.
fn constant(p: &BiPoly) -> BigRational {
    p.get(&(0, 0)).cloned().unwrap_or_else(BigRational::zero)
}

/// Largest supported orbit size (matrices are `t! × t!`).
pub const MAX_ORBIT: usize = 5;

/// Builds `L_j`: `x_k = 0`, `e(ν')[w] = δ_{ν', wν}[w]`, and `τ_k[w] = [s_k w]` when `s_k`
/// lengthens `w`, `Q_{ν'_k, ν'_{k+1}}(0,0)[s_k w]` otherwise, so that `τ_k² = Q`.
pub fn build_lj(
    params: &KLRParams,
    orbit: &[usize],
    s: &DiagramAutomorphism,
) -> Result<LjModel, KlrError> {
    let t = orbit.len();
    if t == 0 || t > MAX_ORBIT {
        return Err(KlrError::OrbitSize(t));
    }
    let mut basis = permutations(orbit);
    basis.sort();
    let index: BTreeMap<Vec<usize>, usize> = basis
        .iter()
        .enumerate()
        .map(|(k, w)| (w.clone(), k))
        .collect();
    let n = basis.len();
    let pos = |i: usize| orbit.iter().position(|&x| x == i).expect("letter in orbit");

    let mut e = BTreeMap::new();
    for (k, w) in basis.iter().enumerate() {
        let mut m = zeros(n);
        m[k][k] = BigRational::one();
        e.insert(w.clone(), m);
    }
    let x = vec![zeros(n); t];
    let mut tau = Vec::new();
    for k in 0..t.saturating_sub(1) {
        let mut m = zeros(n);
        for (col, w) in basis.iter().enumerate() {
            let mut sw = w.clone();
            sw.swap(k, k + 1);
            let lengthens = pos(w[k]) < pos(w[k + 1]);
            let c = if lengthens {
                BigRational::one()
            } else {
                constant(params.get(w[k], w[k + 1]))
            };
            m[index[&sw]][col] = c;
        }
        tau.push(m);
    }
    let mut phi = zeros(n);
    for (col, w) in basis.iter().enumerate() {
        let sw: Vec<usize> = w.iter().map(|&i| s.apply(i)).collect();
        let row = *index.get(&sw).ok_or(KlrError::NotAnOrbit)?;
        phi[row][col] = BigRational::one();
    }
    Ok(LjModel {
        orbit: orbit.to_vec(),
        basis,
        index,
        e,
        x,
        tau,
        phi,
    })
}

impl LjModel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn t(&self) -> usize {
        self.orbit.len()
    }

    fn gen(&self, g: &Gen) -> Mat {
        match g {
            Gen::E(nu) => self.e.get(nu).cloned().unwrap_or_else(|| zeros(self.dim())),
            Gen::X(k) => self.x[k - 1].clone(),
            Gen::T(k) => self.tau[k - 1].clone(),
        }
    }

    pub fn eval(&self, e: &Expr) -> Mat {
        let n = self.dim();
        let mut acc = zeros(n);
        for (c, w) in e {
            let m = w.iter().fold(identity(n), |m, g| mat_mul(&m, &self.gen(g)));
            mat_add_scaled(&mut acc, &m, c);
        }
        acc
    }

    pub fn index_of(&self, nu: &[usize]) -> Option<usize> {
        self.index.get(nu).copied()
    }
}

fn one() -> BigRational {
    BigRational::one()
}

fn term(w: Vec<Gen>) -> Expr {
    vec![(one(), w)]
}

fn neg(e: Expr) -> Expr {
    e.into_iter().map(|(c, w)| (-c, w)).collect()
}

fn sum(mut a: Expr, b: Expr) -> Expr {
    a.extend(b);
    a
}

fn right(e: Expr, g: Gen) -> Expr {
    e.into_iter()
        .map(|(c, mut w)| {
            w.push(g.clone());
            (c, w)
        })
        .collect()
}

/// `Q(x_a, x_b)` as an expression.
fn poly_at(p: &BiPoly, a: usize, b: usize) -> Expr {
    p.iter()
        .map(|(&(i, j), c)| {
            let mut w = vec![Gen::X(a); i as usize];
            w.extend(vec![Gen::X(b); j as usize]);
            (c.clone(), w)
        })
        .collect()
}

/// `(Q(x_a, x_b) − Q(x_c, x_b)) / (x_a − x_c)`.
fn divided_difference(p: &BiPoly, a: usize, b: usize, c: usize) -> Expr {
    let mut out = Expr::new();
    for (&(i, j), coef) in p {
        for r in 0..i {
            let mut w = vec![Gen::X(a); r as usize];
            w.extend(vec![Gen::X(c); (i - 1 - r) as usize]);
            w.extend(vec![Gen::X(b); j as usize]);
            out.push((coef.clone(), w));
        }
    }
    out
}

/// One defining relation `lhs = rhs` instantiated at an idempotent.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub nu: Vec<usize>,
    pub lhs: Expr,
    pub rhs: Expr,
}

/// The defining relations of the KLR algebra, specialized to `R(α_j)`.
pub fn relations(params: &KLRParams, m: &LjModel) -> Vec<Relation> {
    let t = m.t();
    let mut out = Vec::new();
    let mut push = |name: &str, nu: &[usize], lhs: Expr, rhs: Expr| {
        out.push(Relation {
            name: name.into(),
            nu: nu.to_vec(),
            lhs,
            rhs,
        });
    };
    let all_e: Expr = m
        .basis
        .iter()
        .map(|nu| (one(), vec![Gen::E(nu.clone())]))
        .collect();
    push("1:sum", &[], all_e, term(vec![]));
    for nu in &m.basis {
        let e = Gen::E(nu.clone());
        for nu2 in &m.basis {
            let rhs = if nu == nu2 {
                term(vec![e.clone()])
            } else {
                Expr::new()
            };
            push(
                "1:orthogonal",
                nu,
                term(vec![e.clone(), Gen::E(nu2.clone())]),
                rhs,
            );
        }
        for k in 1..=t {
            push(
                "2:x-e",
                nu,
                term(vec![Gen::X(k), e.clone()]),
                term(vec![e.clone(), Gen::X(k)]),
            );
            for l in 1..=t {
                push(
                    "2:x-x",
                    nu,
                    term(vec![Gen::X(k), Gen::X(l), e.clone()]),
                    term(vec![Gen::X(l), Gen::X(k), e.clone()]),
                );
            }
        }
        for k in 1..t {
            let mut snu = nu.clone();
            snu.swap(k - 1, k);
            push(
                "3:tau-e",
                nu,
                term(vec![Gen::T(k), e.clone()]),
                term(vec![Gen::E(snu), Gen::T(k)]),
            );
            for l in 1..t {
                if k.abs_diff(l) > 1 {
                    push(
                        "3:far",
                        nu,
                        term(vec![Gen::T(k), Gen::T(l), e.clone()]),
                        term(vec![Gen::T(l), Gen::T(k), e.clone()]),
                    );
                }
            }
            let q = params.get(nu[k - 1], nu[k]);
            push(
                "4:square",
                nu,
                term(vec![Gen::T(k), Gen::T(k), e.clone()]),
                right(poly_at(q, k, k + 1), e.clone()),
            );
            for l in 1..=t {
                let skl = if l == k {
                    k + 1
                } else if l == k + 1 {
                    k
                } else {
                    l
                };
                let lhs = sum(
                    term(vec![Gen::T(k), Gen::X(l), e.clone()]),
                    neg(term(vec![Gen::X(skl), Gen::T(k), e.clone()])),
                );
                let equal = nu[k - 1] == nu[k];
                let rhs = if equal && l == k {
                    neg(term(vec![e.clone()]))
                } else if equal && l == k + 1 {
                    term(vec![e.clone()])
                } else {
                    Expr::new()
                };
                push("5:tau-x", nu, lhs, rhs);
            }
            if k + 1 < t {
                let lhs = sum(
                    term(vec![Gen::T(k + 1), Gen::T(k), Gen::T(k + 1), e.clone()]),
                    neg(term(vec![Gen::T(k), Gen::T(k + 1), Gen::T(k), e.clone()])),
                );
                let rhs = if nu[k - 1] == nu[k + 1] {
                    right(
                        divided_difference(params.get(nu[k - 1], nu[k]), k, k + 1, k + 2),
                        e.clone(),
                    )
                } else {
                    Expr::new()
                };
                push("6:braid", nu, lhs, rhs);
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationFailure {
    pub relation: String,
    pub nu: Vec<usize>,
    pub reversed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub orbit: Vec<usize>,
    pub t: usize,
    pub dim: usize,
    pub relations_checked: usize,
    pub phi_order: usize,
    pub sigma_order: u32,
    pub phi_intertwines: bool,
    pub periodicity: bool,
    pub failures: Vec<RelationFailure>,
    pub passed: bool,
}

fn mats_equal(params: &KLRParams, a: &Mat, b: &Mat) -> bool {
    a.iter()
        .zip(b)
        .all(|(r, s)| r.iter().zip(s).all(|(x, y)| params.field_eq(x, y)))
}

/// Checks every relation and its ψ-image in `L_j`, and the σ-structure `φ_j`.
pub fn verify_relations(
    params: &KLRParams,
    m: &LjModel,
    s: &DiagramAutomorphism,
) -> RelationReport {
    let rels = relations(params, m);
    let mut failures = Vec::new();
    for r in &rels {
        for reversed in [false, true] {
            let (l, rr) = if reversed {
                (psi(&r.lhs), psi(&r.rhs))
            } else {
                (r.lhs.clone(), r.rhs.clone())
            };
            if !mats_equal(params, &m.eval(&l), &m.eval(&rr)) {
                failures.push(RelationFailure {
                    relation: r.name.clone(),
                    nu: r.nu.clone(),
                    reversed,
                });
            }
        }
    }
    // φ(g·v) = σ(g)·φ(v) with σ(e(ν)) = e(σν), σ(x_k) = x_k, σ(τ_k) = τ_k.
    let mut phi_intertwines = true;
    for (nu, e) in &m.e {
        let snu: Vec<usize> = nu.iter().map(|&i| s.apply(i)).collect();
        phi_intertwines &= mats_equal(params, &mat_mul(&m.phi, e), &mat_mul(&m.e[&snu], &m.phi));
    }
    for g in m.x.iter().chain(&m.tau) {
        phi_intertwines &= mats_equal(params, &mat_mul(&m.phi, g), &mat_mul(g, &m.phi));
    }
    // σ* leaves the underlying space alone, so φ ∘ σ*φ ∘ ⋯ is the n-th power of φ.
    let n = m.dim();
    let id = identity(n);
    let mut pw = m.phi.clone();
    let mut phi_order = 1;
    while !mats_equal(params, &pw, &id) && phi_order <= 720 {
        pw = mat_mul(&pw, &m.phi);
        phi_order += 1;
    }
    let sigma_order = s.order();
    let periodicity = (sigma_order as usize) % phi_order == 0;
    let orbit_order = m.t();
    let passed = failures.is_empty() && phi_intertwines && periodicity && phi_order == orbit_order;
    RelationReport {
        orbit: m.orbit.clone(),
        t: m.t(),
        dim: n,
        relations_checked: rels.len(),
        phi_order,
        sigma_order,
        phi_intertwines,
        periodicity,
        failures,
        passed,
    }
}
