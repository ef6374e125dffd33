use std::process::{Command, Output};

use serde_json::Value;

fn nsfusion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsfusion"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn fusion_table_up_to_five() {
    let out = nsfusion(&["fusion", "table", "--max", "5"]);
    assert!(out.status.success());
    let rows = json(&out);
    let row = rows
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["q"] == 3 && r["r"] == 3)
        .unwrap();
    let entries = row["entries"].as_array().unwrap();
    let s: Vec<u64> = entries.iter().map(|e| e["s"].as_u64().unwrap()).collect();
    assert_eq!(s, vec![1, 3, 5]);
    assert!(entries.iter().all(|e| e["dim"] == 1));
    assert_eq!(entries[2]["parity"], "even");
}

#[test]
fn locus_at_three_halves() {
    let out = nsfusion(&["ns", "locus", "--c", "3/2", "--max-level", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!(v["points"]
        .as_array()
        .unwrap()
        .iter()
        .any(|p| p["p"] == 1 && p["q"] == 3 && p["t"] == "-1" && p["h"] == "1/2"));
}

#[test]
fn osp_verify_spin_half() {
    let out = nsfusion(&["osp", "verify", "--j", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["violations"], Value::Array(vec![]));
}

#[test]
fn usage_errors_exit_two() {
    let out = nsfusion(&["singvec", "compute", "--q", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--q"));
    assert_eq!(nsfusion(&["ns", "locus", "--c", "1.5", "--max-level", "2"]).status.code(), Some(2));
}

#[test]
fn unrepresentable_charge_is_a_failure() {
    let out = nsfusion(&["ns", "locus", "--c", "15/2-sqrt(2)", "--max-level", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["status"], "error");
}

#[test]
fn singvec_and_density_schemas() {
    let v = json(&nsfusion(&["singvec", "validate", "--q", "3"]));
    for key in ["q", "proportional", "bsa_terms", "kernel_terms"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let d = json(&nsfusion(&["density", "project", "--q", "3", "--r", "5"]));
    assert_eq!(d["matches_zhu"], true);
    for key in ["q", "r", "C1", "C2", "closed_form_orientation"] {
        assert!(d.get(key).is_some(), "{key}");
    }
}

#[test]
fn text_output_and_output_file() {
    let out = nsfusion(&["--format", "text", "singvec", "compute", "--q", "3"]);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "-1 * G(-3/2) ;\n1 * G(-1/2)L(-1) ;\n"
    );
    let path = std::env::temp_dir().join(format!("nsfusion-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = nsfusion(&["zhu", "qpoly", "--q", "3", "--r", "3", "--output", p]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["Q2_roots"], serde_json::json!([1, 5]));
    let _ = std::fs::remove_file(path);
}
