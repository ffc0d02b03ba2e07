use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riesz-sharp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn constants_json() {
    let o = bin(&["constants", "--p", "2", "--s", "2", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["C"], Value::from(1.0));
    assert_eq!(v["regime"], "ProvedHigh");
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(&keys[..2], ["C", "regime"]);
}

#[test]
fn certify_exit_codes() {
    let o = bin(&["certify", "--ineq", "eq1", "--p", "2", "--eps", "1e-9", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["status"], "Certified");

    let o = bin(&["certify", "--ineq", "eq1shift", "--json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["status"], "ViolationFound");

    let o = bin(&["certify", "--ineq", "lemma42", "--p", "2", "--s", "2", "--max-depth", "2", "--json"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["status"], "Inconclusive");
}

#[test]
fn usage_errors_are_one_line() {
    for args in [
        &["constants", "--p", "2"][..],
        &["constants", "--p", "abc", "--s", "2"],
        &["constants", "--p", "0.9", "--s", "2"],
        &["certify", "--ineq", "lemma43"],
        &["certify", "--ineq", "lemma41", "--p", "1.5", "--s", "4"],
        &["ratio", "--p", "4", "--s", "2", "--gamma-frac", "1.2", "--alpha", "1", "--beta", "0"],
        &["bogus"],
        &[],
    ] {
        let o = bin(args);
        assert_eq!(code(&o), 3, "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(o.stdout.is_empty());
    }
    assert_eq!(code(&bin(&["--help"])), 0);
    assert_eq!(code(&bin(&["--version"])), 0);
}

#[test]
fn ratio_above_reference_exits_one() {
    // outside the proved range the family beats the closed form
    let o = bin(&["ratio", "--p", "1.5", "--s", "10", "--gamma-frac", "0.99", "--alpha", "0.75", "--beta", "0.25", "--json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert!(v["ratio"].as_f64().unwrap() > v["reference"].as_f64().unwrap());

    let o = bin(&["ratio", "--p", "4", "--s", "2", "--gamma-frac", "0.9", "--alpha", "0", "--beta", "1"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn sweep_emits_csv_by_default() {
    let o = bin(&["sweep", "--p", "4", "--s", "2", "--fracs", "0.5,0.9"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("gamma_frac,alpha,beta,N,ratio,reference"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["search", "--p", "3", "--s", "1", "--trials", "50", "--degree", "8", "--seed", "7", "--json"][..],
        &["conjugate", "--p", "3", "--trials", "50", "--seed", "7", "--csv"],
        &["sweep", "--p", "3", "--s", "3"],
        &["lower-bound", "--p", "1.5", "--s", "10"],
        &["asymptote", "--p", "3", "--s-max", "64", "--steps", "5", "--json"],
    ] {
        let a = bin(args);
        let b = bin(args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn search_json_carries_seed() {
    let v = json(&bin(&["search", "--p", "4", "--s", "2", "--trials", "20", "--degree", "16", "--seed", "42", "--json"]));
    assert_eq!(v["seed"], 42);
    for key in ["p", "s", "gamma", "alpha", "beta", "N", "ratio", "reference", "margin"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("riesz-sharp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("constants.json");
    let args = ["constants", "--p", "3", "--s", "1.5", "--json"];
    let o = bin(&[&args[..], &["--output", path.to_str().unwrap()]].concat());
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), bin(&args).stdout);
    let leftovers = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(leftovers, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
