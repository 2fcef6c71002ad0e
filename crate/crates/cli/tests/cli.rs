use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfold"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write_datum(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn cb_a2_bound_four_has_fourteen_records() {
    let o = qfold(&["cb", "a2", "--bound", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["schema"], "qfold/cb/1");
    assert_eq!(r["records"].as_array().unwrap().len(), 14);
    assert_eq!(r["passed"], true);
}

#[test]
fn linked_orbit_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_datum(
        dir.path(),
        "a2flip.json",
        r#"{"name":"a2-flip","labels":["1","2"],"form":[[2,-1],[-1,2]],"sigma":[1,0]}"#,
    );
    let o = qfold(&["validate", &p]);
    assert_eq!(o.status.code(), Some(2));
    let r = report(&o);
    assert_eq!(r["reason"]["kind"], "invalid_input");
    assert!(r["reason"]["message"]
        .as_str()
        .unwrap()
        .contains("non-admissible: linked orbit"));
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_datum(dir.path(), "bad.json", "{ not json");
    let odd = write_datum(
        dir.path(),
        "odd.json",
        r#"{"name":"x","labels":["1"],"form":[[3]]}"#,
    );
    for args in [
        vec!["validate", bad.as_str()],
        vec!["validate", odd.as_str()],
        vec!["dim", "no-such-datum"],
        vec!["cb", "a2", "--trunc", "4"],
        vec!["cb", "a2", "--bound", "0"],
        vec!["gram", "a2"],
        vec!["gram", "a2", "--weight", "7:1"],
        vec!["fold-verify", "a3-flip", "--ell", "3"],
        vec![
            "cache",
            "frobnicate",
            "--cache",
            dir.path().to_str().unwrap(),
        ],
    ] {
        let o = qfold(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert_eq!(report(&o)["passed"], false, "{args:?}");
    }
}

#[test]
fn unwritable_output_is_not_a_verification_failure() {
    let o = qfold(&[
        "dim",
        "a2",
        "--bound",
        "2",
        "--out",
        "/nonexistent-dir/x.json",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = qfold(&[
        "dim",
        "b2-datum",
        "--bound",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(r["dims"].as_array().unwrap().len(), 10);
}

#[test]
fn fold_verify_a3_flip_passes() {
    let o = qfold(&["fold-verify", "a3-flip", "--bound", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["ell"], 2);
    let phi = r["report"]["phi"].as_array().unwrap();
    assert!(!phi.is_empty());
    assert!(phi.iter().all(|p| p["passed"] == true));
}

#[test]
fn subcommands_pass_on_catalog_entries() {
    for args in [
        vec!["validate", "d4-rot"],
        vec!["dim", "a3", "--bound", "3"],
        vec!["crystal", "b2-datum", "--bound", "4"],
        vec!["klr-check", "a3-flip"],
        vec!["klr-check", "d4-rot", "--symmetric-klr"],
        vec!["gram", "a2", "--weight", "1:1,2:1"],
    ] {
        let o = qfold(&args);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert_eq!(report(&o)["passed"], true, "{args:?}");
    }
}

#[test]
fn reports_are_identical_across_job_counts() {
    for args in [
        vec!["cb", "g2-datum", "--bound", "4"],
        vec!["fold-verify", "a3-flip", "--bound", "4"],
    ] {
        let mut one = args.clone();
        one.extend(["--jobs", "1"]);
        let mut eight = args.clone();
        eight.extend(["--jobs", "8"]);
        assert_eq!(qfold(&one).stdout, qfold(&eight).stdout, "{args:?}");
    }
}

#[test]
fn cache_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let list = |d: &str| {
        report(&qfold(&["cache", "list", "--cache", d]))["entries"]
            .as_array()
            .unwrap()
            .len()
    };
    assert_eq!(list(d), 0);
    let first = qfold(&["cb", "a2", "--bound", "3", "--cache", d]);
    assert_eq!(first.status.code(), Some(0));
    // Heights 0 through 3 of a rank-two lattice.
    assert_eq!(list(d), 10);
    let again = qfold(&["cb", "a2", "--bound", "3", "--cache", d]);
    assert_eq!(first.stdout, again.stdout);
    let cleared = report(&qfold(&["cache", "clear", "--cache", d]));
    assert_eq!(cleared["removed"], 10);
    assert_eq!(list(d), 0);
}
