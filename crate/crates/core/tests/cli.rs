use std::process::{Command, Output};

use binpart::certified::{Claim, MarginScale, Outcome, Point, VerificationReport};
use binpart::cli::{overall_status, verify_result, ExitCode, Status, VerifyDoc};
use serde_json::Value;

const GOLDEN_TABLE_50: &str = include_str!("fixtures/table_50.csv");

fn binpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binpart"))
        .args(args)
        .env_remove("PRECISION_CAP_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn table_50_matches_golden_fixture() {
    let out = binpart(&["table", "50"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), GOLDEN_TABLE_50);
}

#[test]
fn table_formats() {
    assert_eq!(stdout(&binpart(&["table", "1"])), "k,p_k,p_n_k\n1,1,2\n");
    let doc = json(&binpart(&["table", "10", "--format", "json"]));
    let last = &doc["rows"][9];
    assert_eq!(last["k"], 10);
    assert_eq!(last["p_k"], "42");
    // p(10,10) = p(0) + ... + p(10).
    let sum: u64 = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42].iter().sum();
    assert_eq!(last["p_n_k"], sum.to_string());
}

#[test]
fn compute_values() {
    assert_eq!(stdout(&binpart(&["compute", "pnk", "50", "26"])), "412637434996367\n");
    assert_eq!(stdout(&binpart(&["compute", "p", "0"])), "1\n");
    assert_eq!(stdout(&binpart(&["compute", "pk", "3", "5"])), "5\n");
    let doc = json(&binpart(&["compute", "p", "100", "--format", "json"]));
    assert_eq!(doc["value"], "190569292");
}

#[test]
fn exit_code_usage() {
    for args in [
        &["compute", "pnk", "3"][..],
        &["compute", "pnk", "3", "4"],
        &["compute", "p", "-1"],
        &["verify", "thm4"],
        &["verify", "thm2", "3", "10"],
        &["mu", "3", "3"],
        &["mu", "10", "5", "--filiform"],
        &["product", "3", "2", "1e-6"],
        &["product", "1", "2", "zero"],
        &["peak", "3"],
        &["frobnicate"],
    ] {
        let out = binpart(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn exit_code_verified_and_report_shape() {
    let out = binpart(&["verify", "thm3", "1", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["status"], "verified");
    let report = &doc["reports"][0];
    assert_eq!(report["claim"], "thm3");
    assert_eq!(report["n_min"], 1);
    assert_eq!(report["n_max"], 200);
    assert_eq!(report["checked"], 200 * 201 / 2);
    assert_eq!(report["outcome"]["status"], "verified");
}

#[test]
fn exit_code_inconclusive() {
    let out = binpart(&["product", "1", "2", "1e-200"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"], "inconclusive");
}

#[test]
fn exit_code_violation() {
    // No claim fails on its stated range, so the violation path is driven
    // through the same aggregation and rendering the binary uses.
    let mut report = VerificationReport::new(Claim::Thm3, 7, MarginScale::Exact);
    report.fail(Outcome::Violated { at: Point::at(7, 4) });
    let reports = vec![report];
    let doc = VerifyDoc {
        claim: "thm3".into(),
        status: overall_status(&reports),
        precision_cap_bits: 4096,
        reports,
    };
    assert_eq!(doc.status, Status::Violated);
    let result = verify_result(&doc, None);
    assert_eq!(result.code, ExitCode::Violation);
    assert_eq!(result.code as i32, 1);
    let v: Value = serde_json::from_str(&result.document).unwrap();
    assert_eq!(v["reports"][0]["outcome"], serde_json::json!({"status": "violated", "at": {"n": 7, "k": 4}}));
}

#[test]
fn precision_cap_env() {
    let bad = Command::new(env!("CARGO_BIN_EXE_binpart"))
        .args(["verify", "prop1", "1", "20"])
        .env("PRECISION_CAP_BITS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));

    let capped = Command::new(env!("CARGO_BIN_EXE_binpart"))
        .args(["verify", "prop1", "1", "20"])
        .env("PRECISION_CAP_BITS", "256")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(0));
    assert_eq!(json(&capped)["precision_cap_bits"], 256);
}

#[test]
fn verify_all_has_every_claim() {
    let out = binpart(&["verify", "all", "4", "60"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 12);
    let ids: Vec<_> = reports.iter().map(|r| r["claim"].as_str().unwrap()).collect();
    assert_eq!(ids, Claim::ALL.map(Claim::id));
    assert!(reports.iter().all(|r| r["outcome"]["status"] == "verified"));
}

#[test]
fn output_is_deterministic() {
    for args in [&["verify", "all", "4", "30"][..], &["mu", "50", "26"], &["product", "252", "500", "1e-9"]] {
        let a = binpart(args);
        let b = binpart(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn product_examples() {
    let doc = json(&binpart(&["product", "1", "2", "1e-12"]));
    assert_eq!(doc["status"], "verified");
    let lower: f64 = doc["product"]["lower"].as_str().unwrap().parse().unwrap();
    let upper: f64 = doc["product"]["upper"].as_str().unwrap().parse().unwrap();
    assert!(lower <= 3.4627466194550636 && 3.4627466194550636 <= upper);
    assert!(upper - lower <= 1.0e-12);

    let doc = json(&binpart(&["product", "252", "500", "1e-9"]));
    let upper: f64 = doc["product"]["upper"].as_str().unwrap().parse().unwrap();
    assert!(upper < 3.54029829, "{upper}");

    let doc = json(&binpart(&["product", "1", "10", "1e-6"]));
    assert!(doc["ell"].as_u64().unwrap() <= 8);
}

#[test]
fn mu_reports() {
    let doc = json(&binpart(&["mu", "3", "2"]));
    assert_eq!(doc["best"], "pnk");
    assert_eq!(doc["pnk"], "7");
    assert_eq!(doc["reed"], "10");
    assert_eq!(doc["birkhoff"], "40");
    assert_eq!(json(&binpart(&["mu", "50", "26"]))["pnk"], "412637434996367");
    let doc = json(&binpart(&["mu", "52", "51", "--filiform"]));
    assert_eq!(doc["filiform_bound"], "1295972");
}

#[test]
fn markdown_and_csv_views() {
    let md = stdout(&binpart(&["verify", "genfun", "1", "3", "--format", "markdown"]));
    assert!(md.starts_with("| claim | n_min |"));
    assert!(md.contains("| genfun | 1 | 3 |"));
    let csv = stdout(&binpart(&["mu", "3", "2", "--format", "csv"]));
    assert!(csv.starts_with("key,value\n"));
    assert!(csv.contains("\npnk,7\n"));
}
