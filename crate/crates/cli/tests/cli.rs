use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fermat-adjoint"))
        .args(args)
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> (Option<i32>, Vec<Value>) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let docs = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    (out.status.code(), docs)
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["validate", "--p", "8", "--weights", "0,1,2,3"][..],
        &["validate", "--p", "7", "--weights", "0,3,1,5"],
        &["validate", "--p", "7", "--weights", "0,1,3,9"],
        &[
            "validate",
            "--p",
            "5",
            "--n",
            "4",
            "--weights",
            "0,1,2,3,4,5",
        ],
        &["validate", "--p", "7", "--n", "3", "--weights", "0,1,2,3"],
        &["jets", "--p", "7", "--d", "6", "--c", "0", "--pair", "2,9"],
        &["theorem1", "--p", "9"],
        &["search", "--n", "1", "--p", "7"],
        &["validate", "--p", "7", "--sign", "2"],
        &["--tsv", "theorem1", "--p", "5"],
        &["basis", "--p", "7"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn verified_claims_exit_0() {
    for args in [
        &["validate", "--p", "7", "--weights", "0,1,3,5"][..],
        &["theorem1", "--p", "7"],
        &["search", "--n", "3", "--p", "7"],
        &["search", "--n", "3", "--p", "5"],
        &["theorem2", "--p", "7", "--weights", "0,1,3,5"],
        &["lemmas"],
        &["count", "--p", "11", "--d", "6"],
    ] {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn failed_claims_exit_1_loudly() {
    for args in [
        &["search", "--n", "2", "--p", "7"][..],
        &["theorem2", "--p", "7", "--weights", "0,1,2,5"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("CLAIM FAILED"));
    }
}

#[test]
fn search_over_cap_is_a_computation_error() {
    let out = run(&["search", "--n", "3", "--p", "11", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn report_schema_keys() {
    let (code, docs) = json(&["theorem1", "--p", "5", "--j", "0"]);
    assert_eq!(code, Some(0));
    let d = &docs[0];
    for key in [
        "tool",
        "version",
        "command",
        "input",
        "sign_convention",
        "base_supports",
        "predicted_pairs",
        "exact_match",
        "separation",
    ] {
        assert!(d.get(key).is_some(), "missing {key}");
    }
    assert_eq!(d["input"]["p"], 5);
    assert_eq!(d["input"]["j"], 0);
    assert_eq!(d["sign_convention"], -1);
    let sep = &d["separation"][0];
    for key in ["pair", "rank", "deficiency", "zero_columns"] {
        assert!(sep.get(key).is_some(), "missing separation.{key}");
    }
}

#[test]
fn theorem1_without_j_emits_one_document_per_twist() {
    let (_, docs) = json(&["theorem1", "--p", "7"]);
    assert_eq!(docs.len(), 7);
    for (j, d) in docs.iter().enumerate() {
        assert_eq!(d["input"]["j"], j);
        assert_eq!(d["base_supports"].as_array().unwrap().len(), 3);
    }
}

#[test]
fn fixed_sign_is_echoed() {
    let (_, docs) = json(&[
        "baselocus",
        "--p",
        "7",
        "--weights",
        "0,1,3,5",
        "--d",
        "5",
        "--c",
        "5",
        "--sign",
        "+1",
    ]);
    assert_eq!(docs[0]["sign_convention"], 1);
    assert_eq!(docs[0]["input"]["sign"], "+1");
    assert_eq!(docs[0]["sign_resolution"]["mode"], "fixed");
}

#[test]
fn basis_lists_monomials() {
    let (code, docs) = json(&["basis", "--p", "5", "--d", "3", "--c", "0"]);
    assert_eq!(code, Some(0));
    let monomials = docs[0]["monomials"].as_array().unwrap();
    assert_eq!(docs[0]["count"], monomials.len());
    for m in monomials {
        let e: Vec<u64> = m
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap())
            .collect();
        assert_eq!(e.iter().sum::<u64>(), 3);
        assert_eq!(
            e.iter().enumerate().map(|(i, x)| i as u64 * x).sum::<u64>() % 5,
            0
        );
    }
}

#[test]
fn tsv_catalog_has_a_row_per_tuple() {
    let out = run(&["--tsv", "search", "--n", "3", "--p", "7"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert!(rows[0].starts_with("weights\t"));
    assert_eq!(rows.len(), 1 + 15);
    let cols = rows[0].split('\t').count();
    assert!(rows.iter().all(|r| r.split('\t').count() == cols));
}

#[test]
fn search_is_shift_normalized() {
    let (_, docs) = json(&["search", "--n", "3", "--p", "11"]);
    for t in docs[0]["tuples"].as_array().unwrap() {
        assert_eq!(t["weights"][0], 0);
    }
}
