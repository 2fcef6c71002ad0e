use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::KlrError;
use crate::cartan::{CartanDatum, DiagramAutomorphism};

/// A bivariate polynomial `Σ t_pq u^p v^q`, keyed by `(p, q)`.
pub type BiPoly = BTreeMap<(u32, u32), BigRational>;

/// The parameter polynomials `Q_{i,i'}` over Q or F_p.
#[derive(Clone, Debug, Serialize)]
pub struct KLRParams {
    /// `0` for the rationals, otherwise a prime `p`.
    pub characteristic: u64,
    pub symmetric: bool,
    pub labels: Vec<String>,
    pub form: Vec<Vec<i64>>,
    #[serde(serialize_with = "ser_table")]
    pub q: BTreeMap<(usize, usize), BiPoly>,
}

fn ser_table<S: serde::Serializer>(
    t: &BTreeMap<(usize, usize), BiPoly>,
    s: S,
) -> Result<S::Ok, S::Error> {
    let rows: Vec<(usize, usize, Vec<(u32, u32, String)>)> = t
        .iter()
        .map(|(&(i, k), p)| {
            (
                i,
                k,
                p.iter().map(|(&(a, b), c)| (a, b, c.to_string())).collect(),
            )
        })
        .collect();
    rows.serialize(s)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, r| acc * (n - r) as i64 / (r + 1) as i64)
}

/// `(u − v)^m`.
fn u_minus_v(m: u32) -> BiPoly {
    (0..=m)
        .map(|p| {
            let sign = if (m - p) % 2 == 0 { 1 } else { -1 };
            ((p, m - p), rat(sign * binomial(m, p)))
        })
        .collect()
}

/// `Q(v, u)`.
pub fn swap_vars(p: &BiPoly) -> BiPoly {
    p.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect()
}

impl KLRParams {
    pub fn get(&self, i: usize, k: usize) -> &BiPoly {
        &self.q[&(i, k)]
    }

    pub fn rank(&self) -> usize {
        self.form.len()
    }

    fn cartan(&self, i: usize, k: usize) -> i64 {
        2 * self.form[i][k] / self.form[i][i]
    }

    /// Whether a coefficient is nonzero in the ground field.
    pub fn nonzero(&self, c: &BigRational) -> bool {
        if self.characteristic == 0 {
            return !c.is_zero();
        }
        let p = BigInt::from(self.characteristic);
        !(c.numer() % &p).is_zero()
    }

    /// Equality in the ground field.
    pub fn field_eq(&self, a: &BigRational, b: &BigRational) -> bool {
        !self.nonzero(&(a - b))
    }

    pub fn poly_eq(&self, a: &BiPoly, b: &BiPoly) -> bool {
        let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).collect();
        let zero = BigRational::zero();
        keys.into_iter()
            .all(|k| self.field_eq(a.get(k).unwrap_or(&zero), b.get(k).unwrap_or(&zero)))
    }

    /// Vanishing diagonal, symmetry `Q_{i,i'}(u,v) = Q_{i',i}(v,u)` and homogeneity with nonzero
    /// pure-power terms, plus σ-invariance when `s` is given.
    pub fn validate(&self, s: Option<&DiagramAutomorphism>) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.rank();
        for i in 0..n {
            for k in 0..n {
                let Some(p) = self.q.get(&(i, k)) else {
                    out.push(format!("missing Q[{i},{k}]"));
                    continue;
                };
                if i == k {
                    if p.values().any(|c| self.nonzero(c)) {
                        out.push(format!("Q[{i},{i}] is not zero"));
                    }
                    continue;
                }
                for (&(a, b), c) in p {
                    if self.nonzero(c)
                        && self.form[i][i] * a as i64 + self.form[k][k] * b as i64
                            != -2 * self.form[i][k]
                    {
                        out.push(format!("Q[{i},{k}] term u^{a} v^{b} breaks homogeneity"));
                    }
                }
                let (ai, ak) = ((-self.cartan(i, k)) as u32, (-self.cartan(k, i)) as u32);
                let zero = BigRational::zero();
                if !self.nonzero(p.get(&(ai, 0)).unwrap_or(&zero))
                    || !self.nonzero(p.get(&(0, ak)).unwrap_or(&zero))
                {
                    out.push(format!("Q[{i},{k}] lacks a pure u^{ai} or v^{ak} term"));
                }
                if let Some(r) = self.q.get(&(k, i)) {
                    if !self.poly_eq(p, &swap_vars(r)) {
                        out.push(format!("Q[{i},{k}](u,v) != Q[{k},{i}](v,u)"));
                    }
                }
                if let Some(s) = s {
                    if let Some(r) = self.q.get(&(s.apply(i), s.apply(k))) {
                        if !self.poly_eq(p, r) {
                            out.push(format!("Q[{i},{k}] is not sigma-invariant"));
                        }
                    }
                }
            }
        }
        out
    }
}

/// A 2-coloring in which linked nodes differ and `σ` preserves colors; it orients every edge
/// σ-invariantly. `None` when no such coloring exists.
fn sigma_bipartition(d: &CartanDatum, s: &DiagramAutomorphism) -> Option<Vec<u8>> {
    let n = d.rank();
    let mut color: Vec<Option<u8>> = vec![None; n];
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(0);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let c = color[i]?;
            let next = (0..n)
                .filter(|&k| k != i && d.linked(i, k))
                .map(|k| (k, 1 - c))
                .chain([(s.apply(i), c)]);
            for (k, want) in next {
                match color[k] {
                    None => {
                        color[k] = Some(want);
                        stack.push(k);
                    }
                    Some(have) if have != want => return None,
                    _ => {}
                }
            }
        }
    }
    color.into_iter().collect()
}

/// Default parameters. Generic: `u^{−a_{ii'}} + v^{−a_{i'i}}` on linked pairs, `1` on orthogonal
/// pairs. Symmetric (simply-laced data only): `±(u − v)^{−a}`, with the sign fixed by a
/// σ-invariant bipartition so that symmetry and σ-invariance hold together. Non-simply-laced data
/// fall back to the generic choice.
pub fn default_params(
    d: &CartanDatum,
    s: &DiagramAutomorphism,
    symmetric: bool,
    characteristic: u64,
) -> Result<KLRParams, KlrError> {
    let symmetric = symmetric && d.is_simply_laced();
    let colors = if symmetric {
        sigma_bipartition(d, s)
            .ok_or_else(|| KlrError::Axiom("no sigma-invariant edge orientation".into()))?
    } else {
        Vec::new()
    };
    let n = d.rank();
    let mut q = BTreeMap::new();
    for i in 0..n {
        for k in 0..n {
            let p: BiPoly = if i == k {
                BiPoly::new()
            } else if !d.linked(i, k) {
                [((0, 0), BigRational::one())].into_iter().collect()
            } else if symmetric {
                let m = (-d.cartan(i, k)) as u32;
                if colors[i] == 0 {
                    u_minus_v(m)
                } else {
                    swap_vars(&u_minus_v(m))
                }
            } else {
                let (a, b) = ((-d.cartan(i, k)) as u32, (-d.cartan(k, i)) as u32);
                [((a, 0), BigRational::one()), ((0, b), BigRational::one())]
                    .into_iter()
                    .collect()
            };
            q.insert((i, k), p);
        }
    }
    let params = KLRParams {
        characteristic,
        symmetric,
        labels: d.labels().to_vec(),
        form: d.form().to_vec(),
        q,
    };
    let bad = params.validate(Some(s));
    if !bad.is_empty() {
        return Err(KlrError::Axiom(bad.join("; ")));
    }
    Ok(params)
}

/// Applies overrides of the form `{"Q": {"i,k": [[p, q, "c"], ...]}}` (node labels), setting
/// `Q_{k,i}` to the swapped polynomial unless it is overridden too, then revalidates.
pub fn apply_overrides(
    mut params: KLRParams,
    overrides: &serde_json::Value,
    s: &DiagramAutomorphism,
) -> Result<KLRParams, KlrError> {
    let Some(table) = overrides.get("Q").and_then(|v| v.as_object()) else {
        return Ok(params);
    };
    let index = |l: &str| {
        params
            .labels
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| KlrError::Override(format!("unknown label {l}")))
    };
    let mut given = BTreeMap::new();
    for (key, terms) in table {
        let (a, b) = key
            .split_once(',')
            .ok_or_else(|| KlrError::Override(format!("bad key {key}")))?;
        let (i, k) = (index(a.trim())?, index(b.trim())?);
        let mut p = BiPoly::new();
        for t in terms
            .as_array()
            .ok_or_else(|| KlrError::Override(format!("{key}: expected a list")))?
        {
            let parsed = (|| {
                let arr = t.as_array()?;
                let e1 = arr.first()?.as_u64()? as u32;
                let e2 = arr.get(1)?.as_u64()? as u32;
                let c: BigRational = match arr.get(2)? {
                    serde_json::Value::String(s) => s.parse().ok()?,
                    serde_json::Value::Number(n) => rat(n.as_i64()?),
                    _ => return None,
                };
                Some(((e1, e2), c))
            })();
            let (e, c) =
                parsed.ok_or_else(|| KlrError::Override(format!("{key}: bad term {t}")))?;
            *p.entry(e).or_insert_with(BigRational::zero) += c;
        }
        given.insert((i, k), p);
    }
    for (&(i, k), p) in &given {
        params.q.insert((i, k), p.clone());
        if !given.contains_key(&(k, i)) {
            params.q.insert((k, i), swap_vars(p));
        }
    }
    let bad = params.validate(Some(s));
    if !bad.is_empty() {
        return Err(KlrError::Axiom(bad.join("; ")));
    }
    Ok(params)
}

/// `Q_{σ(i),σ(i')} = Q_{i,i'}` and `(α_{σi}, α_{σi'}) = (α_i, α_{i'})`: the conditions under which
/// `e(ν) ↦ e(σν)`, `x_k ↦ x_k`, `τ_k ↦ τ_k` carries relations to relations.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaReport {
    pub consistent: bool,
    pub failures: Vec<String>,
}

pub fn sigma_on_generators(params: &KLRParams, s: &DiagramAutomorphism) -> SigmaReport {
    let mut failures = Vec::new();
    let n = params.rank();
    for i in 0..n {
        for k in 0..n {
            let (si, sk) = (s.apply(i), s.apply(k));
            if !params.poly_eq(params.get(i, k), params.get(si, sk)) {
                failures.push(format!("Q[{i},{k}] != Q[{si},{sk}]"));
            }
            if params.form[i][k] != params.form[si][sk] {
                failures.push(format!("form({i},{k}) != form({si},{sk})"));
            }
        }
    }
    SigmaReport {
        consistent: failures.is_empty(),
        failures,
    }
}
