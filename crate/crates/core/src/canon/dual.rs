//! Upper global basis: the dual of the canonical basis under the graded-dual pairing
//! `⟨b*, b'⟩ = δ`, with `e_i'` and `f_i` acting as transposes of `f_i·` and `e_i'`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::{BasisFamily, CanonError};
use crate::cartan::Weight;
use crate::ring::quantum_int;
use crate::uqminus::{enumerate_monomials, Monomial};
use crate::ZLaurent;

type Matrix = Vec<Vec<ZLaurent>>;

/// Dual elements of one weight, as values on divided-power monomials.
#[derive(Clone, Debug, Serialize)]
pub struct DualBasisRecord {
    pub weight: String,
    pub monomials: Vec<String>,
    /// `coords[s][m] = b_s*(m)`: the coefficient of `b_s` in the expansion of monomial `m`.
    pub coords: Vec<Vec<ZLaurent>>,
    /// `eps[s][i] = max{k : (e_i')^k b_s* ≠ 0}`.
    pub eps: Vec<Vec<u32>>,
}

/// `f̃_node` sends element `from` of `weight` to element `to` of `weight + α_node`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CrystalEdge {
    pub node: usize,
    pub weight: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub node: usize,
    pub element: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct UpperAxiomReport {
    pub weight: String,
    pub dim: usize,
    pub edges: Vec<CrystalEdge>,
    /// Nodes whose `f_i` action could not be checked because `β + α_i` is not in the family.
    pub unchecked_raise: Vec<usize>,
    pub failures: Vec<AxiomFailure>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EpsilonDualityReport {
    pub weight: String,
    pub primal: Vec<Vec<u32>>,
    pub dual: Vec<Vec<u32>>,
    pub mismatches: Vec<(usize, usize)>,
    pub passed: bool,
}

/// Transpose actions of `f_i` and `e_i'`, cached per `(weight, node)`.
pub struct DualActions<'a> {
    fam: &'a BasisFamily,
    lower: Mutex<HashMap<(Weight, usize), Arc<Matrix>>>,
    raise: Mutex<HashMap<(Weight, usize), Arc<Matrix>>>,
}

fn in_span_from(c: &ZLaurent, low: i32) -> bool {
    c.min_exp().is_none_or(|e| e >= low)
}

impl<'a> DualActions<'a> {
    pub fn new(fam: &'a BasisFamily) -> Self {
        DualActions {
            fam,
            lower: Mutex::new(HashMap::new()),
            raise: Mutex::new(HashMap::new()),
        }
    }

    fn record(&self, b: &Weight) -> Result<&Arc<super::BasisRecord>, CanonError> {
        self.fam
            .get(b)
            .ok_or_else(|| CanonError::MissingLower(b.key()))
    }

    /// `L[s][t]` = coefficient of `b_s ∈ B_β` in `f_i · b_t`, `b_t ∈ B_{β−α_i}`.
    /// Row `s` is `e_i' b_s*` in dual coordinates.
    pub fn lowering(&self, b: &Weight, i: usize) -> Result<Arc<Matrix>, CanonError> {
        let key = (b.clone(), i);
        if let Some(m) = self.lower.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let rec = self.record(b)?;
        let m = match b.sub_simple(i, 1) {
            None => vec![Vec::new(); rec.dim()],
            Some(below) => {
                let low = self.record(&below)?;
                let alg = self.fam.algebra();
                let fi = alg.f_power(i, 1);
                let cols: Vec<Vec<ZLaurent>> = low
                    .elements
                    .iter()
                    .map(|y| rec.expand(alg, &alg.product(&fi, &y.psi)))
                    .collect::<Result<_, _>>()?;
                (0..rec.dim())
                    .map(|s| cols.iter().map(|c| c[s].clone()).collect())
                    .collect()
            }
        };
        let m = Arc::new(m);
        self.lower.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }

    /// `R[s][u]` = coefficient of `b_s ∈ B_β` in `e_i' b_u`, `b_u ∈ B_{β+α_i}`.
    /// Row `s` is `f_i b_s*` in dual coordinates.
    pub fn raising(&self, b: &Weight, i: usize) -> Result<Arc<Matrix>, CanonError> {
        let key = (b.clone(), i);
        if let Some(m) = self.raise.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let rec = self.record(b)?;
        let above = self.record(&b.add_simple(i, 1))?;
        let alg = self.fam.algebra();
        let cols: Vec<Vec<ZLaurent>> = above
            .elements
            .iter()
            .map(|u| match alg.e_prime(i, &u.psi) {
                Some(x) => rec.expand(alg, &x),
                None => Ok(vec![ZLaurent::zero(); rec.dim()]),
            })
            .collect::<Result<_, _>>()?;
        let m: Matrix = (0..rec.dim())
            .map(|s| cols.iter().map(|c| c[s].clone()).collect())
            .collect();
        let m = Arc::new(m);
        self.raise.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }

    /// Largest `k` with `(e_i')^k b_s* ≠ 0`.
    pub fn dual_epsilon(&self, b: &Weight, i: usize, s: usize) -> Result<u32, CanonError> {
        let mut v: Vec<ZLaurent> = (0..self.record(b)?.dim())
            .map(|t| {
                if t == s {
                    ZLaurent::one()
                } else {
                    ZLaurent::zero()
                }
            })
            .collect();
        let mut w = b.clone();
        let mut k = 0;
        while let Some(next) = w.sub_simple(i, 1) {
            let l = self.lowering(&w, i)?;
            let width = self.record(&next)?.dim();
            let nv: Vec<ZLaurent> = (0..width)
                .map(|t| {
                    let mut acc = ZLaurent::zero();
                    for (s, vs) in v.iter().enumerate() {
                        if !vs.is_zero() && !l[s][t].is_zero() {
                            acc = &acc + &(vs * &l[s][t]);
                        }
                    }
                    acc
                })
                .collect();
            if nv.iter().all(|c| c.is_zero()) {
                break;
            }
            k += 1;
            v = nv;
            w = next;
        }
        Ok(k)
    }

    pub fn dual_eps_table(&self, b: &Weight) -> Result<Vec<Vec<u32>>, CanonError> {
        let n = self.record(b)?.dim();
        (0..n)
            .map(|s| (0..b.rank()).map(|i| self.dual_epsilon(b, i, s)).collect())
            .collect()
    }

    pub fn dual_basis(&self, b: &Weight) -> Result<DualBasisRecord, CanonError> {
        let rec = self.record(b)?;
        let alg = self.fam.algebra();
        let ms: Vec<Monomial> = enumerate_monomials(b);
        let cols: Vec<Vec<ZLaurent>> = ms
            .iter()
            .map(|m| rec.expand(alg, &alg.monomial(m)))
            .collect::<Result<_, _>>()?;
        let coords = (0..rec.dim())
            .map(|s| cols.iter().map(|c| c[s].clone()).collect())
            .collect();
        Ok(DualBasisRecord {
            weight: b.key(),
            monomials: ms.iter().map(|m| m.render(alg.datum().labels())).collect(),
            coords,
            eps: self.dual_eps_table(b)?,
        })
    }

    /// Crystal-operator axioms of the upper global basis at one weight.
    pub fn verify_upper_axioms(&self, b: &Weight) -> Result<UpperAxiomReport, CanonError> {
        let rec = self.record(b)?;
        let datum = self.fam.algebra().datum();
        let n = rec.dim();
        let eps = self.dual_eps_table(b)?;
        let mut failures = Vec::new();
        let mut edges = Vec::new();
        let mut unchecked_raise = Vec::new();
        let mut fail = |axiom: &str, node: usize, element: usize, detail: String| {
            failures.push(AxiomFailure {
                axiom: axiom.into(),
                node,
                element,
                detail,
            });
        };

        if b.is_zero() && n != 1 {
            fail("unit", 0, 0, format!("weight zero has {n} elements"));
        }

        for i in 0..b.rank() {
            let d = datum.d(i) as i32;
            // Lowering: e_i' b* = [ε]_i ẽ_i b* + Σ E b'*.
            let mut tilde_e: Vec<Option<usize>> = vec![None; n];
            if let Some(below) = b.sub_simple(i, 1) {
                let l = self.lowering(b, i)?;
                let eps_below = self.dual_eps_table(&below)?;
                for s in 0..n {
                    let e = eps[s][i];
                    if e == 0 {
                        if l[s].iter().any(|c| !c.is_zero()) {
                            fail("lowering", i, s, "ε = 0 but e' b* ≠ 0".into());
                        }
                        continue;
                    }
                    let lead = quantum_int(e as i64, d as u32);
                    let bound = 1 + d * (1 - e as i32);
                    for (t, c) in l[s].iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        if *c == lead && eps_below[t][i] + 1 == e && tilde_e[s].is_none() {
                            tilde_e[s] = Some(t);
                        } else if !(eps_below[t][i] + 1 < e && in_span_from(c, bound)) {
                            fail(
                                "lowering",
                                i,
                                s,
                                format!("entry {t} = {c}, ε' = {}", eps_below[t][i]),
                            );
                        }
                    }
                    if tilde_e[s].is_none() {
                        fail("lowering", i, s, format!("no leading term [{e}]_i"));
                    }
                }
            } else if let Some(s) = (0..n).find(|&s| eps[s][i] != 0) {
                fail("lowering", i, s, "ε > 0 at a weight without α_i".into());
            }
            // ẽ_i b lands in the lower weight; f̃_i must undo it there.
            let above = b.add_simple(i, 1);
            if !self.fam.contains(&above) {
                unchecked_raise.push(i);
                continue;
            }
            let r = self.raising(b, i)?;
            let eps_above = self.dual_eps_table(&above)?;
            for s in 0..n {
                let e = eps[s][i] as i32;
                let lead = ZLaurent::q_pow(-d * e);
                let bound = 1 - d * e;
                let mut tilde_f = None;
                for (u, c) in r[s].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if *c == lead && eps_above[u][i] as i32 == e + 1 && tilde_f.is_none() {
                        tilde_f = Some(u);
                    } else if !(eps_above[u][i] as i32 <= e && in_span_from(c, bound)) {
                        fail(
                            "raising",
                            i,
                            s,
                            format!("entry {u} = {c}, ε'' = {}", eps_above[u][i]),
                        );
                    }
                }
                match tilde_f {
                    None => fail("raising", i, s, format!("no leading term q_i^-{e}")),
                    Some(u) => {
                        edges.push(CrystalEdge {
                            node: i,
                            weight: b.key(),
                            from: s,
                            to: u,
                        });
                        // ẽ_i f̃_i b = b: the lowering leader of u must be s.
                        let lu = self.lowering(&above, i)?;
                        let lead_u = quantum_int(eps_above[u][i] as i64, d as u32);
                        let back: Vec<usize> = (0..n)
                            .filter(|&t| lu[u][t] == lead_u && eps[t][i] as i32 == e)
                            .collect();
                        if back != [s] {
                            fail("inverse", i, s, format!("ẽ f̃ b resolves to {back:?}"));
                        }
                    }
                }
            }
        }

        // b*(m) for bar-invariant monomials m must be bar-invariant.
        let alg = self.fam.algebra();
        for m in enumerate_monomials(b) {
            let c = rec.expand(alg, &alg.monomial(&m))?;
            for (s, v) in c.iter().enumerate() {
                if !v.is_bar_invariant() {
                    fail(
                        "bar",
                        0,
                        s,
                        format!("{} on {}", v, m.render(datum.labels())),
                    );
                }
            }
        }

        edges.sort();
        let passed = failures.is_empty();
        Ok(UpperAxiomReport {
            weight: b.key(),
            dim: n,
            edges,
            unchecked_raise,
            failures,
            passed,
        })
    }

    /// Primal ε (from the construction) against dual ε (transpose iteration).
    pub fn epsilon_duality_check(&self, b: &Weight) -> Result<EpsilonDualityReport, CanonError> {
        let rec = self.record(b)?;
        let primal: Vec<Vec<u32>> = rec.elements.iter().map(|e| e.eps.clone()).collect();
        let dual = self.dual_eps_table(b)?;
        let mut mismatches = Vec::new();
        for (s, (p, q)) in primal.iter().zip(&dual).enumerate() {
            for i in 0..p.len() {
                if p[i] != q[i] {
                    mismatches.push((s, i));
                }
            }
        }
        let passed = mismatches.is_empty();
        Ok(EpsilonDualityReport {
            weight: b.key(),
            primal,
            dual,
            mismatches,
            passed,
        })
    }
}
