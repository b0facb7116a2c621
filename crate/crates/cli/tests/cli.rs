use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flophelix")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema(name: &str) -> JSONSchema {
    let path = format!("{}/../../docs/schemas/v1/{name}", env!("CARGO_MANIFEST_DIR"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::compile(&v).unwrap()
}

#[test]
fn numerics_table_has_six_rows() {
    let o = run(&["tables", "numerics"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().nth(6).unwrap().starts_with("6    12  1 6 5 4 3 5 2 5 3 4 5 6"));
}

#[test]
fn gv_csv_header_and_blanks() {
    let o = run(&["tables", "gv", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "ell,n1,n2,n3,n4,n5,n6,acon");
    assert_eq!(lines[3], "3,5,3,1,,,,26");
}

#[test]
fn helix_table_for_length_five() {
    let o = run(&["tables", "helix", "--ell", "5", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let simples: Vec<&str> = text.lines().skip(1).map(|l| l.splitn(3, ',').nth(2).unwrap()).collect();
    assert_eq!(
        simples,
        ["O_C(-1)", "O_{5C}", "O_{4C}", "O_{3C}", "Z", "O_{2C}", "Z^w(1)", "w_{3C}(1)", "w_{4C}(1)", "w_{5C}(1)"]
    );
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        &["tables", "defalg", "--format", "json"][..],
        &["verify", "--format", "json"],
        &["knit", "--type", "E7", "--affine", "--start", "a4", "--read", "a4", "--kill", "a0"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn unknown_selector_is_a_usage_error() {
    assert_eq!(run(&["tables", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["tables", "gv", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["knit", "--type", "E9", "--start", "a1", "--read", "a1"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    assert_eq!(run(&["tables", "helix", "--ell", "9"]).status.code(), Some(1));
    let o = run(&["knit", "--type", "E6", "--affine", "--start", "nowhere", "--read", "a4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nowhere"));
    assert_eq!(run(&["monodromy", "--ell", "2", "--word", "phi_fwd(0).phi_fwd(0)"]).status.code(), Some(1));
}

#[test]
fn word_parse_errors_exit_two() {
    assert_eq!(run(&["monodromy", "--ell", "2", "--word", "q0.("]).status.code(), Some(2));
}

#[test]
fn e6_knitting_trace() {
    let o = run(&["knit", "--type", "E6", "--affine", "--start", "branch", "--read", "branch", "--kill", "extending"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("read | 1+2+3+3+2+1 = 12\n"));
    let o = run(&[
        "knit",
        "--type",
        "E6",
        "--affine",
        "--start",
        "branch",
        "--read",
        "branch",
        "--kill",
        "extending",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(schema("knit-trace.schema.json").is_valid(&v));
    assert_eq!(v["read_values"], serde_json::json!([1, 2, 3, 3, 2, 1]));
    assert_eq!(v["total"], 12);
}

#[test]
fn length_one_relation_is_identity() {
    let o = run(&["monodromy", "--ell", "1", "--word", "inv(q0).qplus.qminus"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("identity"));
}

#[test]
fn equatorial_loop_acts_trivially() {
    let o = run(&["monodromy", "--ell", "2", "--word", "q0", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(schema("monodromy.schema.json").is_valid(&v));
    assert_eq!(v["k_matrix"], serde_json::json!([[1, 0], [0, 1]]));
    assert_eq!(v["identity"], false);
}

#[test]
fn verify_exit_code_matches_report() {
    let o = run(&["verify", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(schema("report.schema.json").is_valid(&v));
    let failed = v["summary"]["failed"].as_u64().unwrap();
    assert_eq!(o.status.code(), Some(if failed == 0 { 0 } else { 1 }));
    let criteria: std::collections::BTreeSet<u64> =
        v["checks"].as_array().unwrap().iter().map(|c| c["criterion"].as_u64().unwrap()).collect();
    assert_eq!(criteria, (1..=9).collect());
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("flophelix-out-{}.csv", std::process::id()));
    let o = run(&["tables", "gv", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, stdout(&run(&["tables", "gv", "--format", "csv"])));
}
