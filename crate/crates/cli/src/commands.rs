use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use qfold::cache::Cache;
use qfold::canon::{certify_basis, BasisFamily, BuildConfig, CertifyConfig, DualActions};
use qfold::cartan::{catalog, fold_datum, weights_up_to, DatumFile, LoadedDatum, Weight};
use qfold::fold::{fold_report, FoldContext};
use qfold::klr::{apply_overrides, default_params, klr_check};
use qfold::uqminus::{gram_matrix, Algebra};

use crate::error::CliError;
use crate::Common;

/// A finished report; `passed == false` means a mathematical check failed.
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

/// A path that exists is read as a datum file; anything else is looked up in the catalog.
fn load(spec: &str) -> Result<LoadedDatum, CliError> {
    let path = Path::new(spec);
    if path.exists() {
        Ok(DatumFile::read(path)?.load()?)
    } else {
        Ok(catalog(spec)?)
    }
}

fn open_cache(c: &Common) -> Result<Option<Arc<Cache>>, CliError> {
    c.cache
        .as_ref()
        .map(|d| {
            Cache::open(d)
                .map(Arc::new)
                .map_err(|e| CliError::Input(format!("{}: {e}", d.display())))
        })
        .transpose()
}

fn build_config(c: &Common) -> BuildConfig {
    BuildConfig {
        trunc: c.trunc,
        ..BuildConfig::default()
    }
}

/// The requested weight, or every weight of height `min..=bound`.
fn target_weights(c: &Common, l: &LoadedDatum, min: u32) -> Result<Vec<Weight>, CliError> {
    match &c.weight {
        Some(spec) => Ok(vec![
            Weight::parse_with(spec, l.datum.labels()).map_err(CliError::Input)?
        ]),
        None => {
            let mut ws: Vec<Weight> = weights_up_to(l.datum.rank(), c.bound)
                .into_iter()
                .filter(|w| w.height() >= min)
                .collect();
            ws.sort_by_key(|w| (w.height(), std::cmp::Reverse(w.mults().to_vec())));
            Ok(ws)
        }
    }
}

fn family(c: &Common, l: &LoadedDatum, ws: &[Weight]) -> Result<BasisFamily, CliError> {
    let alg = Arc::new(Algebra::new(l.datum.clone()));
    let mut fam = BasisFamily::new(alg, build_config(c));
    if let Some(cache) = open_cache(c)? {
        fam = fam.with_cache(cache);
    }
    for w in ws {
        fam.ensure(w)?;
    }
    Ok(fam)
}

fn header(command: &str, c: &Common, l: &LoadedDatum) -> Value {
    json!({
        "schema": format!("qfold/{command}/1"),
        "command": command,
        "datum": l.datum.name(),
        "fingerprint": l.fingerprint(),
        "labels": l.datum.labels(),
        "config": { "bound": c.bound, "trunc": c.trunc, "weight": c.weight },
    })
}

fn finish(mut report: Value, body: Value, passed: bool, failures: Vec<Value>) -> Outcome {
    let obj = report.as_object_mut().expect("header is an object");
    for (k, v) in body.as_object().expect("body is an object") {
        obj.insert(k.clone(), v.clone());
    }
    obj.insert("passed".into(), json!(passed));
    if !passed {
        obj.insert(
            "reason".into(),
            json!({ "kind": "verification_failure", "failures": failures }),
        );
    }
    Outcome { report, passed }
}

pub fn validate(c: &Common) -> Result<Outcome, CliError> {
    let l = load(&c.datum)?;
    let d = &l.datum;
    let mut params = default_params(d, &l.sigma, c.symmetric_klr, 0)?;
    if let Some(o) = &l.klr_params {
        params = apply_overrides(params, o, &l.sigma)?;
    }
    let problems = params.validate(Some(&l.sigma));
    if !problems.is_empty() {
        return Err(CliError::Input(format!(
            "KLR parameters: {}",
            problems.join("; ")
        )));
    }
    let folded = fold_datum(d, &l.sigma);
    let orbits: Vec<Vec<&str>> = l
        .sigma
        .orbits()
        .iter()
        .map(|o| o.iter().map(|&i| d.labels()[i].as_str()).collect())
        .collect();
    let body = json!({
        "form": d.form(),
        "cartan_matrix": d.cartan_matrix(),
        "symmetrizer": (0..d.rank()).map(|i| d.d(i)).collect::<Vec<_>>(),
        "sigma": l.sigma.perm(),
        "sigma_order": l.sigma.order(),
        "orbits": orbits,
        "folded": { "labels": folded.labels(), "form": folded.form(), "cartan_matrix": folded.cartan_matrix() },
        "klr_params": params,
    });
    Ok(finish(header("validate", c, &l), body, true, vec![]))
}

pub fn dim(c: &Common) -> Result<Outcome, CliError> {
    let l = load(&c.datum)?;
    let alg = Algebra::new(l.datum.clone());
    let ws = target_weights(c, &l, 0)?;
    let dims: Vec<Value> = ws
        .par_iter()
        .map(|w| json!({ "weight": w.display_with(l.datum.labels()), "height": w.height(), "dim": gram_matrix(&alg, w).rank }))
        .collect();
    Ok(finish(
        header("dim", c, &l),
        json!({ "dims": dims }),
        true,
        vec![],
    ))
}

pub fn cb(c: &Common) -> Result<Outcome, CliError> {
    let l = load(&c.datum)?;
    let labels = l.datum.labels();
    let ws = target_weights(c, &l, 1)?;
    let fam = family(c, &l, &ws)?;
    let alg = fam.algebra().clone();
    let cert_cfg = CertifyConfig {
        trunc: c.trunc,
        ..CertifyConfig::default()
    };
    let records: Vec<(Value, bool)> = ws
        .par_iter()
        .map(|w| {
            let rec = fam.get(w).expect("built");
            let cert = certify_basis(&alg, rec, &cert_cfg);
            let elements: Vec<Value> = rec
                .elements
                .iter()
                .map(|e| {
                    json!({
                        "expr": e.expr.render(labels),
                        "adapted": e.adapted.render(labels),
                        "eps": e.eps,
                        "provenance": e.provenance,
                    })
                })
                .collect();
            let passed = cert.passed;
            let v = json!({
                "weight": w.display_with(labels),
                "dim": rec.dim(),
                "elements": elements,
                "certification": cert,
            });
            (v, passed)
        })
        .collect();
    let passed = records.iter().all(|(_, p)| *p);
    let failures = records
        .iter()
        .filter(|(_, p)| !p)
        .map(|(v, _)| json!({ "weight": v["weight"], "failures": v["certification"]["failures"] }))
        .collect();
    let records: Vec<Value> = records.into_iter().map(|(v, _)| v).collect();
    let body = json!({ "record_count": records.len(), "records": records });
    Ok(finish(header("cb", c, &l), body, passed, failures))
}

pub fn crystal(c: &Common) -> Result<Outcome, CliError> {
    let l = load(&c.datum)?;
    let labels = l.datum.labels();
    let ws = target_weights(c, &l, 0)?;
    // Raising from β needs the family at β + α_i, so axioms run below the top height.
    let top = ws.iter().map(Weight::height).max().unwrap_or(0);
    let fam = family(c, &l, &ws)?;
    let dual = DualActions::new(&fam);
    let rows: Vec<Result<(Value, Vec<Value>), CliError>> = ws
        .par_iter()
        .map(|w| {
            let axioms = if w.height() < top || c.weight.is_some() { Some(dual.verify_upper_axioms(w)?) } else { None };
            let eps = dual.epsilon_duality_check(w)?;
            let mut fails = Vec::new();
            if let Some(a) = &axioms {
                if !a.passed {
                    fails.push(json!({ "weight": w.display_with(labels), "axioms": a.failures }));
                }
            }
            if !eps.passed {
                fails.push(json!({ "weight": w.display_with(labels), "epsilon_mismatches": eps.mismatches }));
            }
            let v = json!({
                "weight": w.display_with(labels),
                "dim": fam.get(w).expect("built").dim(),
                "axioms": axioms,
                "epsilon_duality": eps,
            });
            Ok((v, fails))
        })
        .collect();
    let mut weights = Vec::new();
    let mut failures = Vec::new();
    for r in rows {
        let (v, f) = r?;
        weights.push(v);
        failures.extend(f);
    }
    let passed = failures.is_empty();
    Ok(finish(
        header("crystal", c, &l),
        json!({ "weights": weights }),
        passed,
        failures,
    ))
}

fn smallest_prime_factor(n: u32) -> Option<u64> {
    (2..=n).find(|p| n % p == 0).map(u64::from)
}

pub fn fold_verify(c: &Common) -> Result<Outcome, CliError> {
    let l = load(&c.datum)?;
    let ell = c
        .ell
        .or_else(|| smallest_prime_factor(l.sigma.order()))
        .unwrap_or(2);
    let ctx = FoldContext::with_cache(
        l.datum.clone(),
        l.sigma.clone(),
        ell,
        c.bound,
        build_config(c),
        open_cache(c)?,
    )?;
    let rep = fold_report(&ctx, true)?;
    let passed = rep.passed;
    let mut failures = Vec::new();
    for p in rep.phi.iter().filter(|p| !p.passed) {
        failures.push(json!({ "check": "phi", "entry": p }));
    }
    for s in rep.serre.iter().filter(|s| !s.vanishes) {
        failures.push(json!({ "check": "serre", "entry": s }));
    }
    for d in rep.dual_compat.iter().filter(|d| !d.passed) {
        failures.push(json!({ "check": "dual_compat", "entry": d }));
    }
    if let Some(s) = rep.structure.as_ref().filter(|s| !s.passed) {
        failures.push(json!({ "check": "structure", "non_laurent": s.non_laurent }));
    }
    let body = json!({ "ell": ell, "report": rep });
    Ok(finish(header("fold-verify", c, &l), body, passed, failures))
}

pub fn klr(c: &Common) -> Result<Outcome, CliError> {
    let l = load(&c.datum)?;
    let rep = klr_check(&l, c.symmetric_klr)?;
    let passed = rep.passed;
    let mut failures: Vec<Value> = rep
        .orbits
        .iter()
        .filter(|o| !o.passed)
        .map(|o| json!({ "check": "relations", "orbit": o.orbit, "failures": o.failures }))
        .collect();
    if !rep.sigma.consistent {
        failures.push(json!({ "check": "sigma", "detail": rep.sigma }));
    }
    if !rep.basis_count_ok {
        failures.push(json!({ "check": "graded_basis_count" }));
    }
    if rep.graded.iter().any(|g| !g.nonnegative) {
        failures.push(json!({ "check": "graded_nonnegative" }));
    }
    Ok(finish(
        header("klr-check", c, &l),
        json!({ "report": rep }),
        passed,
        failures,
    ))
}

pub fn gram(c: &Common) -> Result<Outcome, CliError> {
    let l = load(&c.datum)?;
    if c.weight.is_none() {
        return Err(CliError::Input("gram requires --weight".into()));
    }
    let labels = l.datum.labels();
    let w = &target_weights(c, &l, 0)?[0];
    let g = gram_matrix(&Algebra::new(l.datum.clone()), w);
    let n = g.monomials.len();
    let entries: Vec<Vec<String>> = (0..n)
        .map(|a| (0..n).map(|b| g.rational(a, b).to_string()).collect())
        .collect();
    let body = json!({
        "weight": w.display_with(labels),
        "monomials": g.monomials.iter().map(|m| m.render(labels)).collect::<Vec<_>>(),
        "entries": entries,
        "selected": g.selected,
        "rank": g.rank,
    });
    Ok(finish(header("gram", c, &l), body, true, vec![]))
}

pub fn cache(action: &str, dir: &Path) -> Result<Outcome, CliError> {
    let cache = Cache::open(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let body = match action {
        "list" => json!({ "entries": cache.list().map_err(input)? }),
        "clear" => json!({ "removed": cache.clear().map_err(input)? }),
        other => {
            return Err(CliError::Input(format!(
                "unknown cache action {other:?}; expected list or clear"
            )))
        }
    };
    let mut report =
        json!({ "schema": "qfold/cache/1", "command": "cache", "action": action, "passed": true });
    for (k, v) in body.as_object().expect("object") {
        report[k] = v.clone();
    }
    Ok(Outcome {
        report,
        passed: true,
    })
}
