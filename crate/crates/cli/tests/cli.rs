use std::process::{Command, Output};

use affine_hecke::jalg::{phi_inverse, tw_in_t};
use affine_hecke::{CompletedHecke, PlaneFunction, WeylElt};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ahecke")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn expand_specialized_entries_decay() {
    let out = run(&["expand", "0", "--basis", "T", "--q", "3", "--L", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t_s0 in the T basis at q = 3, lengths <= 10"));
    let values: Vec<f64> = lines.map(|l| l.split('\t').nth(2).unwrap().parse().unwrap()).collect();
    assert_eq!(values.len(), 21);
    assert_eq!(values[0], 0.25);
    for pair in values.windows(3).step_by(2) {
        assert!(pair[2].abs() < pair[0].abs(), "{pair:?}");
    }
    assert!(text.contains("s1s0\t1/36\t"), "{text}");
}

#[test]
fn expand_cone_sum_example() {
    let out = run(&["expand", "0101", "--basis", "C", "--L", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("s0\t-v^4\n"), "{text}");
    assert!(text.contains("s0s1s0s1\t-v^7 - v^5 - v^3 - v\n"), "{text}");
    assert!(text.lines().skip(1).all(|l| l.starts_with("s0")), "only words starting with s0 appear: {text}");
}

#[test]
fn expand_json_round_trips() {
    let out = run(&["expand", "01", "--basis", "T", "--L", "8", "--N", "20", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["word"], "01");
    let back = CompletedHecke::<i64>::from_json(&doc["element"]).unwrap();
    let direct = tw_in_t::<i64>(&"01".parse().unwrap(), 8, 20).unwrap();
    assert_eq!(back, direct);

    let out = run(&["expand", "0101", "--basis", "C", "--L", "8", "--format", "json"]);
    let back = CompletedHecke::<i64>::from_json(&json(&out)["element"]).unwrap();
    assert_eq!(back, phi_inverse::<i64>(&"0101".parse().unwrap(), 8, 32));
}

#[test]
fn expand_rejects_bad_words() {
    assert_eq!(run(&["expand", ""]).status.code(), Some(2));
    assert_eq!(run(&["expand", "00"]).status.code(), Some(2));
    assert_eq!(run(&["expand", "012"]).status.code(), Some(2));
    assert_eq!(run(&["expand", "0", "--L", "0"]).status.code(), Some(2));
}

#[test]
fn expand_reports_uncertifiable_cutoffs() {
    let out = run(&["expand", "0101", "--basis", "Cprime", "--N", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("too small"));
}

#[test]
fn act_examples() {
    let cases = [
        (["act", "--t", "0", "--on", "phibar(0)"], "phibar(0)"),
        (["act", "--T", "01", "--on", "phi(3)"], "phibar(2) - psibar(2)"),
        (["act", "--t", "", "--on", "psi(0)"], "0"),
        (["act", "--t", "1", "--on", "2*phibar(1) - 3*psibar(4)"], "-3*psibar(4)"),
    ];
    for (args, expect) in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&out).trim_end(), expect, "{args:?}");
    }
}

#[test]
fn act_json_round_trips() {
    let out = run(&["act", "--t", "01", "--on", "phi(0)", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let result = PlaneFunction::<i64>::from_json(&doc["result"]).unwrap();
    let expect = affine_hecke::plane::t_action(&"01".parse::<WeylElt>().unwrap(), &"phi(0)".parse().unwrap()).unwrap();
    assert_eq!(result, expect);
    assert!(doc["stableFrom"].as_u64().is_some());
}

#[test]
fn act_reports_required_precision() {
    let out = run(&["act", "--t", "0101", "--on", "phi(0) + psi(7)"]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("try cutoff >= 31 and order >= 57"), "{err}");
    let out = run(&["act", "--t", "0101", "--on", "phi(0) + psi(7)", "--L", "31", "--N", "57"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn act_rejects_bad_input() {
    assert_eq!(run(&["act", "--t", "0", "--on", "chi(0)"]).status.code(), Some(2));
    assert_eq!(run(&["act", "--t", "0", "--T", "1", "--on", "phi(0)"]).status.code(), Some(2));
    assert_eq!(run(&["act", "--on", "phi(0)"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "gamma", "--L", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("PASS gamma_{s,s,s} = 1 and t_s idempotent"));
    assert!(text.contains("x\ty\tz\tgamma\n"));
    assert!(text.contains("s0\ts0\ts0\t1\n"));

    let out = run(&["verify", "plane", "--L", "16"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));

    let out = run(&["verify", "images", "--L", "20", "--N", "40", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["passed"], false);
    let checks = doc["suites"][0]["checks"].as_array().unwrap();
    assert_eq!(checks[0]["passed"], true, "the g identity holds");
    assert!(checks.iter().any(|c| c["name"].as_str().unwrap().contains("prepared") && c["passed"] == true));
}

#[test]
fn gamma_table_formats() {
    let out = run(&["gamma-table", "--L", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let rows = doc["gamma"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["x"] == "0" && r["y"] == "0" && r["z"] == "0" && r["gamma"] == 1));
    assert!(rows.iter().all(|r| r["gamma"] != 0));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["expand", "010", "--basis", "Cprime", "--format", "json"],
        vec!["verify", "gamma", "--L", "6", "--format", "json"],
        vec!["act", "--t", "10", "--on", "psibar(-2) + phi(1)"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
