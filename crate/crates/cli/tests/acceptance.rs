//! End-to-end acceptance run: one verdict line per criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use qfold::canon::{
    certify_basis, structure_sweep, BasisFamily, BuildConfig, CertifyConfig, DualActions,
};
use qfold::cartan::{catalog, catalog_names, CartanDatum, Weight};
use qfold::fold::{dual_compat_check, phi_check, FoldContext};
use qfold::klr::klr_check;
use qfold::ring::RationalFn;
use qfold::uqminus::{
    pair, pair_tensor, serre_element, Algebra, Element, FreeElement, Monomial, Word, WordSpace,
};
use qfold::ZLaurent;

type Verdict = Result<String, String>;

fn datum(name: &str) -> CartanDatum {
    catalog(name).unwrap().datum
}

fn family(name: &str, bound: u32) -> BasisFamily {
    let alg = Arc::new(Algebra::new(datum(name)));
    BasisFamily::up_to_height(alg, bound, BuildConfig::default()).unwrap()
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(())
    } else {
        Err(format!("took {t:.1?}, limit {limit:?}"))
    }
}

/// All words of length at most `h` over `rank` letters.
fn words_up_to(rank: usize, h: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..h {
        layer = layer
            .iter()
            .flat_map(|w| (0..rank).map(move |i| w.concat(&Word::letter(i))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn word_el(rank: usize, w: &Word) -> FreeElement {
    FreeElement::word(rank, w.clone(), RationalFn::one())
}

fn c1_form_axioms() -> Verdict {
    let start = Instant::now();
    let mut triples = 0usize;
    for name in ["a2", "a3"] {
        let d = datum(name);
        let n = d.rank();
        for i in 0..n {
            for j in 0..n {
                let got = pair(
                    &d,
                    &FreeElement::generator(n, i),
                    &FreeElement::generator(n, j),
                );
                let want = if i == j {
                    let one = ZLaurent::from_terms([(0, BigInt::from(1))]);
                    let den = ZLaurent::from_terms([
                        (0, BigInt::from(1)),
                        (2 * d.d(i) as i32, BigInt::from(-1)),
                    ]);
                    RationalFn::new(one, den).unwrap()
                } else {
                    RationalFn::zero()
                };
                if got != want {
                    return Err(format!("{name}: (f_{i}, f_{j}) = {got}"));
                }
            }
        }
        let words = words_up_to(n, 4);
        for x in &words {
            let xe = word_el(n, x);
            let r = xe.coproduct_r(&d);
            let wx = x.weight(n);
            for y1 in &words {
                for y2 in words.iter().filter(|y2| y1.len() + y2.len() == x.len()) {
                    if y1.weight(n).add(&y2.weight(n)) != wx {
                        continue;
                    }
                    let (a, b) = (word_el(n, y1), word_el(n, y2));
                    if pair(&d, &xe, &a.multiply(&b)) != pair_tensor(&d, &r, &a, &b) {
                        return Err(format!(
                            "{name}: Hopf compatibility fails at {x:?}, {y1:?}, {y2:?}"
                        ));
                    }
                    triples += 1;
                }
            }
        }
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!("{triples} word triples"))
}

fn c2_serre_radical() -> Verdict {
    let start = Instant::now();
    let mut checked = 0usize;
    for name in ["a2", "a3", "b2-datum", "g2-datum"] {
        let d = datum(name);
        let n = d.rank();
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i && d.linked(i, j)) {
                let s = serre_element(&d, i, j);
                for w in WordSpace::new(s.weight()).words() {
                    if !pair(&d, &s, &word_el(n, w)).is_zero() {
                        return Err(format!(
                            "{name}: Serre element ({i},{j}) pairs nonzero with {w:?}"
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("{checked} pairings vanish"))
}

fn psi_key(e: &Element) -> String {
    e.psi()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join("|")
}

/// `f_i^(a) f_j^(b) f_i^(c)` with `b ≥ a + c`, both node orders.
fn a2_closed_form(alg: &Algebra, b: &Weight) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for (i, j) in [(0usize, 1usize), (1, 0)] {
        let (mi, mj) = (b.get(i), b.get(j));
        for a in 0..=mi {
            let c = mi - a;
            if mj < a + c {
                continue;
            }
            let blocks: Vec<(usize, u32)> = [(i, a), (j, mj), (i, c)]
                .into_iter()
                .filter(|&(_, k)| k > 0)
                .collect();
            let (m, _) = Monomial::from_blocks(alg.datum(), &blocks);
            out.insert(psi_key(&alg.monomial(&m)));
        }
    }
    out
}

fn c3_canonical_bases() -> Verdict {
    let start = Instant::now();
    let fam = family("a2", 6);
    let alg = fam.algebra().clone();
    for b in fam.weights() {
        let rec = fam.get(&b).unwrap();
        let cert = certify_basis(&alg, rec, &CertifyConfig::default());
        if !cert.passed {
            return Err(format!(
                "{}: certification failed {:?}",
                b.key(),
                cert.failures
            ));
        }
        let got: BTreeSet<String> = rec.elements.iter().map(|e| psi_key(&e.psi)).collect();
        if got != a2_closed_form(&alg, &b) {
            return Err(format!("{}: basis differs from the closed form", b.key()));
        }
    }
    within(Duration::from_secs(120), start)?;
    Ok(format!("{} weights", fam.weights().len()))
}

fn c4_upper_axioms() -> Verdict {
    let start = Instant::now();
    let mut spaces = 0usize;
    for name in ["a2", "a3", "b2-datum", "g2-datum"] {
        // One extra height so that raising out of height five is checked too.
        let fam = family(name, 6);
        let dual = DualActions::new(&fam);
        for b in fam.weights().into_iter().filter(|b| b.height() <= 5) {
            let r = dual.verify_upper_axioms(&b).map_err(|e| e.to_string())?;
            if !r.passed || !r.unchecked_raise.is_empty() {
                return Err(format!("{name} {}: {:?}", b.key(), r.failures));
            }
            spaces += 1;
        }
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("{spaces} weight spaces"))
}

fn c5_epsilon_duality() -> Verdict {
    let mut elements = 0usize;
    for name in catalog_names() {
        let fam = family(name, 5);
        let dual = DualActions::new(&fam);
        for b in fam.weights() {
            let r = dual.epsilon_duality_check(&b).map_err(|e| e.to_string())?;
            if !r.passed {
                return Err(format!("{name} {}: mismatches {:?}", b.key(), r.mismatches));
            }
            elements += r.primal.len();
        }
    }
    Ok(format!("{elements} basis elements"))
}

fn fold_context(name: &str, ell: u64, bound: u32) -> Result<FoldContext, String> {
    let l = catalog(name).unwrap();
    FoldContext::new(l.datum, l.sigma, ell, bound, BuildConfig::default())
        .map_err(|e| e.to_string())
}

fn phi_verdict<const P: u64>(name: &str, limit: Duration) -> Verdict {
    let start = Instant::now();
    let ctx = fold_context(name, P, 6)?;
    let entries = phi_check::<P>(&ctx).map_err(|e| e.to_string())?;
    for e in &entries {
        let resolved =
            e.signs.len() == e.fixed_count && e.signs.iter().all(|s| s.sign == 1 || s.sign == -1);
        if !e.passed || !resolved {
            return Err(format!("weight {}: {e:?}", e.weight));
        }
    }
    within(limit, start)?;
    Ok(format!("{} stable weights", entries.len()))
}

fn c6_fold_a3() -> Verdict {
    phi_verdict::<2>("a3-flip", Duration::from_secs(600))
}

fn c7_fold_d4() -> Verdict {
    phi_verdict::<3>("d4-rot", Duration::from_secs(1200))
}

fn c8_structure_constants() -> Verdict {
    let mut logged = Vec::new();
    for name in ["b2-datum", "g2-datum"] {
        let s = structure_sweep(&family(name, 6), 6);
        if !s.non_laurent.is_empty() {
            return Err(format!("{name}: non-Laurent products {:?}", s.non_laurent));
        }
        logged.push(format!(
            "{name}: {} products, {} sign-indefinite",
            s.products,
            s.positivity_violations.len()
        ));
    }
    let control = structure_sweep(&family("a2", 6), 6);
    if !control.non_laurent.is_empty() || !control.positivity_violations.is_empty() {
        return Err("a2 control has a non-positive structure constant".into());
    }
    Ok(logged.join("; "))
}

fn c9_dual_compat() -> Verdict {
    let mut checked = 0usize;
    for (name, ell) in [("a3-flip", 2u64), ("d4-rot", 3)] {
        let ctx = fold_context(name, ell, 5)?;
        let entries = match ell {
            2 => dual_compat_check::<2>(&ctx, 2),
            _ => dual_compat_check::<3>(&ctx, 2),
        }
        .map_err(|e| e.to_string())?;
        if let Some(bad) = entries.iter().find(|e| !e.passed) {
            return Err(format!("{name}: {bad:?}"));
        }
        checked += entries.iter().map(|e| e.checked).sum::<usize>();
    }
    Ok(format!("{checked} identities"))
}

fn c10_klr() -> Verdict {
    let start = Instant::now();
    let mut models = 0usize;
    for name in catalog_names() {
        let l = catalog(name).unwrap();
        for symmetric in [false, true] {
            let r = klr_check(&l, symmetric).map_err(|e| e.to_string())?;
            let nonneg = r.graded.iter().all(|g| g.nonnegative);
            if !r.passed || !nonneg || !r.basis_count_ok {
                return Err(format!("{name} (symmetric = {symmetric}) failed"));
            }
            models += r.orbits.len();
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("{models} orbit models"))
}

fn c11_determinism() -> Verdict {
    let runs: [&[&str]; 7] = [
        &["validate", "d4-rot"],
        &["dim", "a3", "--bound", "4"],
        &["cb", "g2-datum", "--bound", "5"],
        &["crystal", "b2-datum", "--bound", "4"],
        &["fold-verify", "a3-flip", "--bound", "5"],
        &["klr-check", "d4-rot"],
        &["gram", "a3", "--weight", "1:1,2:2,3:1"],
    ];
    for args in runs {
        let out = |jobs: &str| {
            Command::new(env!("CARGO_BIN_EXE_qfold"))
                .args(args)
                .args(["--jobs", jobs])
                .output()
                .unwrap()
        };
        let (a, b) = (out("1"), out("8"));
        if a.status.code() != Some(0) || a.stdout != b.stdout || a.status.code() != b.status.code()
        {
            return Err(format!("{args:?} differs between job counts"));
        }
    }
    Ok(format!("{} subcommands", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("form axioms and Hopf compatibility", c1_form_axioms),
        ("Serre elements lie in the radical", c2_serre_radical),
        ("A2 canonical basis to height 6", c3_canonical_bases),
        ("upper global basis axioms", c4_upper_axioms),
        ("primal and dual epsilon agree", c5_epsilon_duality),
        ("A3 to B2 folding mod 2", c6_fold_a3),
        ("D4 to G2 folding mod 3", c7_fold_d4),
        (
            "folded structure constants are Laurent",
            c8_structure_constants,
        ),
        ("dual compatibility of folding", c9_dual_compat),
        ("KLR orbit models", c10_klr),
        ("reports independent of --jobs", c11_determinism),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = f();
        let t = start.elapsed();
        match &v {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} [{detail}] ({t:.1?})", k + 1),
            Err(why) => {
                println!("criterion {:>2}: FAIL  {name}: {why} ({t:.1?})", k + 1);
                failed.push(k + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 11 criteria pass");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
