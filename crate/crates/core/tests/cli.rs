use std::process::Command;

use qhecke::cli::{run, EXIT_FAIL, EXIT_LIMIT, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qhecke").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = cli(&full);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out:?} / {err:?}"));
    (code, v)
}

#[test]
fn act_matches_the_three_cases() {
    // i+1 absent: q e_swapped + (q-1) e
    let (code, out, _) = cli(&["act", "--n", "2", "--gen", "1", "--index", "1"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.trim(), "(q - 1)·e_{1} + q·e_{2}");
    // i first occurs before i+1: plain swap
    let (_, out, _) = cli(&["act", "--n", "3", "--gen", "1", "--index", "1,2,1"]);
    assert_eq!(out.trim(), "e_{2,1,2}");
    // neither letter present: scalar q
    let (_, out, _) = cli(&["act", "--n", "3", "--gen", "1", "--index", "3,3"]);
    assert_eq!(out.trim(), "q·e_{3,3}");
}

#[test]
fn act_json_and_csv() {
    let (code, v) = json(&["act", "--n", "3", "--gen", "2", "--index", "2,1"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["generator"], 2);
    assert_eq!(v["r"], 2);
    assert_eq!(v["result"].as_array().unwrap().len(), 2);
    let (code, out, _) = cli(&["act", "--n", "3", "--gen", "2", "--index", "2,1", "--format", "csv"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("index,coeff\n"));
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn malformed_input_is_a_usage_error() {
    for args in [
        vec!["act", "--n", "3", "--gen", "1", "--index", "1,x"],
        vec!["act", "--n", "3", "--gen", "1", "--index", "4"],
        vec!["act", "--n", "3", "--gen", "3", "--index", "1"],
        vec!["act", "--n", "3", "--r", "2", "--gen", "1", "--index", "1"],
        vec!["verify", "--n", "3"],
        vec!["commutant", "--n", "2", "--r", "2", "--q", "0"],
        vec!["commutant", "--n", "2", "--r", "2", "--q", "1/x"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = cli(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn verify_passes_on_small_cases() {
    for (n, r) in [("1", "1"), ("3", "2"), ("2", "3")] {
        let (code, out, _) = cli(&["verify", "--n", n, "--r", r]);
        assert_eq!(code, EXIT_PASS, "{out}");
        assert!(out.lines().all(|l| l.starts_with("PASS")));
    }
    let (code, v) = json(&["verify", "--n", "3", "--r", "2", "--seed", "9"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["pass"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 7);
}

#[test]
fn oversized_spaces_hit_the_limit() {
    let (code, _, err) = cli(&["verify", "--n", "20", "--r", "10"]);
    assert_eq!(code, EXIT_LIMIT);
    assert!(err.contains("limit"));
    let (code, _, _) = cli(&["commutant", "--n", "3", "--r", "3", "--limit", "26"]);
    assert_eq!(code, EXIT_LIMIT);
    let (code, _, _) = cli(&["commutant", "--n", "3", "--r", "4", "--symbolic"]);
    assert_eq!(code, EXIT_LIMIT);
}

#[test]
fn dims_table_agrees_with_bell_numbers() {
    let (code, out, _) = cli(&["dims", "--n", "4", "--r", "2"]);
    assert_eq!(code, EXIT_PASS);
    let row = out.lines().nth(1).unwrap();
    let cells: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(cells, ["4", "2", "15", "15", "match"]);

    let (code, v) = json(&["dims", "--n", "5", "--r", "2", "--half"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["rows"][0]["dim"], "52");
    assert_eq!(v["rows"][0]["match"], true);

    // default grid n ≤ 6, r ≤ 4
    let (code, out, _) = cli(&["dims", "--format", "csv"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.lines().count(), 1 + 24);
}

#[test]
fn commutant_reports_dimensions() {
    let (code, v) = json(&["commutant", "--n", "2", "--r", "2", "--q", "7/5,3"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["dim"], 8);
    assert_eq!(v["agree"], true);
    assert_eq!(v["q_values"], serde_json::json!(["7/5", "3"]));

    let (code, v) = json(&["commutant", "--n", "3", "--r", "2", "--symbolic", "--basis"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["dim"], 14);
    assert_eq!(v["basis"]["elements"].as_array().unwrap().len(), 14);

    let (code, v) = json(&["commutant", "--n", "3", "--r", "1", "--half"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["dim"], 5);
    assert_eq!(v["dims"].as_array().unwrap().len(), 3);
}

#[test]
fn glq_dims_reduce_to_n_to_the_r() {
    let (code, out, _) = cli(&["glq-dims", "--n", "3", "--r", "2", "--at", "1"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains('9'), "{out}");
    let (code, v) = json(&["glq-dims", "--n", "2", "--r", "1"]);
    assert_eq!(code, EXIT_PASS);
    assert!(v.to_string().contains("q + 1"), "{v}");
}

#[test]
fn export_writes_files() {
    let dir = std::env::temp_dir().join(format!("qhecke-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gens.json");
    let (code, out, _) = cli(&["export", "--n", "3", "--r", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v.is_object() || v.is_array());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qhecke");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["verify", "--n", "2", "--r", "2"]), Some(EXIT_PASS));
    assert_eq!(status(&["verify", "--n", "20", "--r", "10"]), Some(EXIT_LIMIT));
    assert_eq!(status(&["act", "--n", "2", "--gen", "1", "--index", "zz"]), Some(EXIT_USAGE));
    assert_eq!(status(&["--help"]), Some(EXIT_PASS));
    assert_ne!(EXIT_FAIL, EXIT_PASS);
}
