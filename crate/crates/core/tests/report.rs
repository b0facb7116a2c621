use flophelix::data::ReferenceData;
use flophelix::dynkin::DynkinType;
use flophelix::knitting::knit_named;
use flophelix::tables::{render, Format, Which};
use flophelix::verify::{cmd_verify, verify_with, Status, CRITERIA};
use jsonschema::JSONSchema;
use serde_json::Value;

fn schema(name: &str) -> JSONSchema {
    let path = format!("{}/../../docs/schemas/v1/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    let v: Value = serde_json::from_str(&text).unwrap();
    JSONSchema::compile(&v).unwrap()
}

fn assert_valid(s: &JSONSchema, v: &Value) {
    if let Err(errors) = s.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:?}");
    }
}

#[test]
fn report_validates_against_schema() {
    let r = cmd_verify();
    assert_valid(&schema("report.schema.json"), &serde_json::to_value(&r).unwrap());
}

#[test]
fn report_summary_is_consistent() {
    let r = cmd_verify();
    let failed = r.checks.iter().filter(|c| c.status == Status::Fail).count();
    assert_eq!(r.summary.failed, failed);
    assert_eq!(r.summary.total, r.checks.len());
    assert_eq!(r.all_passed(), failed == 0);
    for (id, _) in CRITERIA {
        assert!(r.checks.iter().any(|c| c.criterion == *id));
    }
}

#[test]
fn corrupted_numerics_row_is_named() {
    let mut data = ReferenceData::embedded();
    data.numerics[2].ns[2] = 4;
    let r = verify_with(&data);
    let bad: Vec<_> = r.failures().filter(|c| c.criterion == 1).collect();
    assert_eq!(bad.len(), 2);
    assert_eq!(bad[0].name, "for_length(3)");
    assert!(bad[0].expected.contains("[6, 1, 4, 1]"));
    assert!(bad[0].actual.contains("[6, 1, 3, 1]"));
    assert_eq!(bad[1].name, "derive_ns(ranks, ℓ=3)");
}

#[test]
fn corrupted_gv_row_is_named() {
    let mut data = ReferenceData::embedded();
    data.gv[3].acon_bound = 57;
    let r = verify_with(&data);
    let names: Vec<&str> = r.failures().filter(|c| c.criterion == 4).map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["gv_bounds(4)", "acon = Σ k²·n_k, ℓ=4"]);
}

#[test]
fn corrupted_trace_and_dims_are_named() {
    let mut data = ReferenceData::embedded();
    data.e6_trace[2] = 4;
    data.deformation[4].dims[3] = 5;
    data.deformation[5].commutative[4] = true;
    let r = verify_with(&data);
    let names: Vec<&str> = r.failures().filter(|c| c.criterion != 3).map(|c| c.name.as_str()).collect();
    assert_eq!(
        names,
        [
            "affine E6 knitting from the branch vertex",
            "knitted dim column ℓ=5",
            "strictly_noncommutative vs commutativity column, ℓ=6"
        ]
    );
}

#[test]
fn embedded_reference_round_trips() {
    let data = ReferenceData::embedded();
    let text = serde_json::to_string(&data).unwrap();
    let back: ReferenceData = serde_json::from_str(&text).unwrap();
    assert_eq!(back, data);
    assert_eq!(verify_with(&back), cmd_verify());
}

#[test]
fn tables_validate_and_are_deterministic() {
    let s = schema("tables.schema.json");
    for which in [Which::Numerics, Which::Defalg, Which::Gv, Which::Helix] {
        for format in [Format::Text, Format::Json, Format::Csv] {
            assert_eq!(render(which, format, None).unwrap(), render(which, format, None).unwrap());
        }
        let v: Value = serde_json::from_str(&render(which, Format::Json, None).unwrap()).unwrap();
        assert_valid(&s, &v);
    }
}

#[test]
fn numerics_table_has_six_rows() {
    let csv = render(Which::Numerics, Format::Csv, None).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[0], "ell,N,ranks,ns");
    assert_eq!(lines[3], "3,4,1 3 2 3,6 1 3 1");
}

#[test]
fn defalg_table_rows() {
    let csv = render(Which::Defalg, Format::Csv, Some(4)).unwrap();
    assert_eq!(csv, "ell,i,loops,dim,dim_ab,commutative\n4,0,2,24,6,no\n4,1,0,1,1,yes\n4,2,1,2,2,yes\n4,3,2,6,4,no\n");
}

#[test]
fn helix_table_requires_valid_length() {
    assert!(render(Which::Helix, Format::Text, Some(7)).is_err());
    let t = render(Which::Helix, Format::Csv, Some(3)).unwrap();
    assert_eq!(t, "ell,i,simple\n3,0,O_C(-1)\n3,1,O_{3C}\n3,2,O_{2C}\n3,3,w_{3C}(1)\n");
}

#[test]
fn knit_trace_validates_against_schema() {
    let t = knit_named(DynkinType::E6, "branch", "branch", &["extending"]).unwrap();
    let v = t.to_json();
    assert_valid(&schema("knit-trace.schema.json"), &v);
    assert_eq!(v["total"], 12);
    assert_eq!(v["layers"][0]["a4"], 1);
}

#[test]
fn schema_rejects_malformed_reports() {
    let s = schema("report.schema.json");
    let mut v = serde_json::to_value(cmd_verify()).unwrap();
    v["checks"][0]["status"] = "maybe".into();
    assert!(!s.is_valid(&v));
    let mut v = serde_json::to_value(cmd_verify()).unwrap();
    v["summary"].as_object_mut().unwrap().remove("failed");
    assert!(!s.is_valid(&v));
}
