use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::context::serre_weights;
use super::quotient::{
    fold_reduce, g_monomial, lift_expr, orbit_sum, tilde_f_apply, QuotientElement,
};
use super::{FoldContext, FoldError};
use crate::canon::{structure_sweep, StructureSweep};
use crate::cartan::Weight;
use crate::ring::{Fp, LaurentPoly};
use crate::uqminus::laurent_det;
use crate::ZLaurent;

/// `π(b_element) = sign · Φ(folded basis element)` modulo ℓ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignEntry {
    pub element: usize,
    pub sign: i8,
    pub folded_element: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiEntry {
    pub weight: String,
    pub folded_weight: String,
    pub fixed_count: usize,
    pub folded_dim: usize,
    pub dims_equal: bool,
    pub orbit_constant: bool,
    /// Orbit sums of non-fixed elements reduce to zero.
    pub ideal_invisible: bool,
    /// Determinant of Φ on the folded canonical basis, modulo ℓ.
    pub det: String,
    pub det_unit: bool,
    pub signed_permutation: bool,
    pub signs: Vec<SignEntry>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SerreEntry {
    pub nodes: (usize, usize),
    pub weight: String,
    pub vanishes: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompatEntry {
    pub weight: String,
    pub node: usize,
    pub n: u32,
    pub target: String,
    pub checked: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FoldReport {
    pub datum: String,
    pub fingerprint: String,
    pub sigma: Vec<usize>,
    pub ell: u64,
    pub bound: u32,
    pub folded_datum: String,
    pub folded_form: Vec<Vec<i64>>,
    pub phi: Vec<PhiEntry>,
    pub serre: Vec<SerreEntry>,
    pub dual_compat: Vec<CompatEntry>,
    pub structure: Option<StructureSweep>,
    pub passed: bool,
}

fn is_unit<const P: u64>(c: &LaurentPoly<Fp<P>>) -> bool {
    c.as_monomial().is_some_and(|(_, v)| v.value() != 0)
}

fn sign_of<const P: u64>(c: &LaurentPoly<Fp<P>>) -> Option<i8> {
    match c.as_monomial() {
        Some((0, v)) if v.value() == 1 => Some(1),
        Some((0, v)) if v.value() == P - 1 => Some(-1),
        _ => None,
    }
}

/// Integral coordinates of `Φ(folded basis element)` in the unfolded basis, one row per folded element.
fn phi_rows(
    ctx: &FoldContext,
    w: &Weight,
    folded: &Weight,
) -> Result<Vec<Vec<ZLaurent>>, FoldError> {
    let rec = ctx
        .unfolded
        .get(w)
        .ok_or_else(|| FoldError::OutOfRange(w.key()))?;
    let frec = ctx
        .folded
        .get(folded)
        .ok_or_else(|| FoldError::OutOfRange(folded.key()))?;
    frec.elements
        .iter()
        .map(|e| Ok(rec.expand(ctx.unfolded_alg(), &lift_expr(ctx, folded, &e.expr))?))
        .collect()
}

/// Resolves each σ-fixed element to `± Φ(folded element)` modulo ℓ.
pub fn sign_table<const P: u64>(
    ctx: &FoldContext,
    w: &Weight,
) -> Result<Option<Vec<SignEntry>>, FoldError> {
    let data = ctx.stable_data(w)?;
    let rows = phi_rows(ctx, w, &data.folded)?;
    Ok(signs_from_rows::<P>(&rows, &data.fixed))
}

fn signs_from_rows<const P: u64>(
    rows: &[Vec<ZLaurent>],
    fixed: &[usize],
) -> Option<Vec<SignEntry>> {
    if rows.len() != fixed.len() {
        return None;
    }
    let mut out = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let nz: Vec<(usize, LaurentPoly<Fp<P>>)> = fixed
            .iter()
            .map(|&s| (s, row[s].map_coeffs(Fp::<P>::from_bigint)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let [(s, c)] = nz.as_slice() else { return None };
        out.push(SignEntry {
            element: *s,
            sign: sign_of(c)?,
            folded_element: r,
        });
    }
    out.sort_by_key(|e| e.element);
    let cols: BTreeSet<usize> = out.iter().map(|e| e.element).collect();
    (cols.len() == out.len()).then_some(out)
}

fn phi_entry<const P: u64>(ctx: &FoldContext, w: &Weight) -> Result<PhiEntry, FoldError> {
    let data = ctx.stable_data(w)?;
    let alg = ctx.unfolded_alg();
    let rec = ctx
        .unfolded
        .get(w)
        .ok_or_else(|| FoldError::OutOfRange(w.key()))?;
    let folded_dim = ctx.folded.get(&data.folded).map(|r| r.dim()).unwrap_or(0);
    let rows = phi_rows(ctx, w, &data.folded)?;
    let orbit_constant = rows.iter().all(|row| {
        let red: Vec<LaurentPoly<Fp<P>>> = row
            .iter()
            .map(|c| c.map_coeffs(Fp::<P>::from_bigint))
            .collect();
        (0..red.len()).all(|s| red[data.perm[s]] == red[s])
    });
    let mut ideal_invisible = true;
    for s in (0..rec.dim()).filter(|&s| data.perm[s] != s) {
        for o in orbit_sum(alg, &ctx.sigma, &rec.elements[s].psi) {
            ideal_invisible &= fold_reduce::<P>(ctx, &o)?.is_zero();
        }
    }
    let dims_equal = data.fixed.len() == folded_dim;
    let (det, det_unit) = if dims_equal {
        let sq: Vec<Vec<ZLaurent>> = rows
            .iter()
            .map(|row| data.fixed.iter().map(|&s| row[s].clone()).collect())
            .collect();
        let d = laurent_det(&sq).map_coeffs(Fp::<P>::from_bigint);
        (d.to_string(), is_unit(&d))
    } else {
        ("n/a".to_string(), false)
    };
    let signs = if orbit_constant {
        signs_from_rows::<P>(&rows, &data.fixed)
    } else {
        None
    };
    let signed_permutation = signs.is_some();
    let passed = dims_equal && orbit_constant && ideal_invisible && det_unit && signed_permutation;
    Ok(PhiEntry {
        weight: w.key(),
        folded_weight: data.folded.key(),
        fixed_count: data.fixed.len(),
        folded_dim,
        dims_equal,
        orbit_constant,
        ideal_invisible,
        det,
        det_unit,
        signed_permutation,
        signs: signs.unwrap_or_default(),
        passed,
    })
}

/// Dimension equality, unit determinant and the sign correspondence at every stable weight.
pub fn phi_check<const P: u64>(ctx: &FoldContext) -> Result<Vec<PhiEntry>, FoldError> {
    let ws: Vec<Weight> = ctx.stable_weights().into_iter().map(|s| s.weight).collect();
    ws.par_iter().map(|w| phi_entry::<P>(ctx, w)).collect()
}

/// Folded q-Serre elements, written in the `g_j`, vanish in the quotient.
pub fn serre_check<const P: u64>(ctx: &FoldContext) -> Vec<SerreEntry> {
    let fdatum = ctx.folded_alg().datum();
    serre_weights(&ctx.sigma, fdatum)
        .into_par_iter()
        .map(|(j, k, w)| {
            let alg = ctx.unfolded_alg();
            let top = (1 - fdatum.cartan(j, k)) as u32;
            let gk = g_monomial(ctx, k, 1);
            let mut x = alg.zero(&w);
            for t in 0..=top {
                let term = alg.product(
                    &alg.product(&g_monomial(ctx, j, t), &gk),
                    &g_monomial(ctx, j, top - t),
                );
                let c = if t % 2 == 0 {
                    ZLaurent::one()
                } else {
                    -ZLaurent::one()
                };
                x.add_scaled(&term, &c);
            }
            let (vanishes, error) = match fold_reduce::<P>(ctx, &x) {
                Ok(v) => (v.is_zero(), None),
                Err(e) => (false, Some(e.to_string())),
            };
            SerreEntry {
                nodes: (j, k),
                weight: w.key(),
                vanishes,
                error,
            }
        })
        .collect()
}

/// `g_j^{(n)} Φ(x) = Φ(f_j^{(n)} x)` on folded basis elements, for `n ≤ n_max`. This is the
/// transpose of the statement that Φ* intertwines the dual `e'^{(n)}_j` actions.
pub fn dual_compat_check<const P: u64>(
    ctx: &FoldContext,
    n_max: u32,
) -> Result<Vec<CompatEntry>, FoldError> {
    let ws: Vec<Weight> = ctx.stable_weights().into_iter().map(|s| s.weight).collect();
    let images: BTreeMap<Weight, Vec<QuotientElement<P>>> = ws
        .par_iter()
        .map(|w| {
            let folded = &ctx.stable_data(w)?.folded;
            let frec = ctx
                .folded
                .get(folded)
                .ok_or_else(|| FoldError::OutOfRange(folded.key()))?;
            let imgs = frec
                .elements
                .iter()
                .map(|e| fold_reduce::<P>(ctx, &lift_expr(ctx, folded, &e.expr)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((w.clone(), imgs))
        })
        .collect::<Result<_, FoldError>>()?;

    let mut jobs = Vec::new();
    for w in &ws {
        for j in 0..ctx.sigma.orbits().len() {
            for n in 1..=n_max {
                let mut step = vec![0u32; ctx.sigma.orbits().len()];
                step[j] = n;
                let target = w.add(&ctx.sigma.unfold_weight(&Weight::new(step)));
                if images.contains_key(&target) {
                    jobs.push((w, j, n, target));
                }
            }
        }
    }
    jobs.par_iter()
        .map(|(w, j, n, target)| {
            let falg = ctx.folded_alg();
            let data = ctx.stable_data(w)?;
            let tdata = ctx.stable_data(target)?;
            let frec = ctx.folded.get(&data.folded).expect("folded record");
            let trec = ctx.folded.get(&tdata.folded).expect("folded record");
            let fpow = falg.f_power(*j, *n);
            let mut ok = true;
            for (e, img) in frec.elements.iter().zip(&images[*w]) {
                let lhs = tilde_f_apply::<P>(ctx, *j, *n, img)?;
                let c = trec.expand(falg, &falg.product(&fpow, &e.psi))?;
                let mut rhs = vec![LaurentPoly::<Fp<P>>::zero(); tdata.fixed.len()];
                for (cb, tb) in c.iter().zip(&images[target]) {
                    let cr = cb.map_coeffs(Fp::<P>::from_bigint);
                    if cr.is_zero() {
                        continue;
                    }
                    for (acc, v) in rhs.iter_mut().zip(&tb.coords) {
                        *acc = &*acc + &(&cr * v);
                    }
                }
                ok &= lhs.coords == rhs;
            }
            Ok(CompatEntry {
                weight: w.key(),
                node: *j,
                n: *n,
                target: target.key(),
                checked: frec.dim(),
                passed: ok,
            })
        })
        .collect()
}

/// Structure constants of the folded datum's canonical basis, in characteristic zero.
pub fn folded_structure_check(ctx: &FoldContext) -> StructureSweep {
    structure_sweep(&ctx.folded, ctx.bound)
}

fn report_for<const P: u64>(ctx: &FoldContext, structure: bool) -> Result<FoldReport, FoldError> {
    let phi = phi_check::<P>(ctx)?;
    let serre = serre_check::<P>(ctx);
    let dual_compat = dual_compat_check::<P>(ctx, 2)?;
    let structure = structure.then(|| folded_structure_check(ctx));
    let passed = phi.iter().all(|e| e.passed)
        && serre.iter().all(|e| e.vanishes)
        && dual_compat.iter().all(|e| e.passed)
        && structure.as_ref().is_none_or(|s| s.passed);
    let datum = ctx.unfolded_alg().datum();
    let fdatum = ctx.folded_alg().datum();
    Ok(FoldReport {
        datum: datum.name().to_string(),
        fingerprint: datum.fingerprint(),
        sigma: ctx.sigma.perm().to_vec(),
        ell: ctx.ell,
        bound: ctx.bound,
        folded_datum: fdatum.name().to_string(),
        folded_form: fdatum.form().to_vec(),
        phi,
        serre,
        dual_compat,
        structure,
        passed,
    })
}

/// Runs every folding check with ℓ taken from the context.
pub fn fold_report(ctx: &FoldContext, structure: bool) -> Result<FoldReport, FoldError> {
    match ctx.ell {
        2 => report_for::<2>(ctx, structure),
        3 => report_for::<3>(ctx, structure),
        5 => report_for::<5>(ctx, structure),
        7 => report_for::<7>(ctx, structure),
        p => Err(FoldError::UnsupportedPrime(p)),
    }
}
