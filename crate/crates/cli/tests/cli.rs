use std::process::{Command, Output};

use serde_json::Value;

fn latticelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latticelab")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = latticelab(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn cubic_report_matches_golden_files() {
    let text = latticelab(&["cubic", "check", "--all"]);
    assert_eq!(stdout(&text), include_str!("golden/cubic_check_all.txt"));
    let parallel = latticelab(&["--threads", "6", "cubic", "check", "--all", "--json"]);
    assert_eq!(stdout(&parallel), include_str!("golden/cubic_check_all.json"));
}

#[test]
fn rank2_enumeration() {
    let out = latticelab(&["rank2", "enum", "--det", "27", "--neg", "--even"]);
    assert_eq!(stdout(&out), "-(2^1 14)\n-(6^3 6)\n");
    let v = json(&["rank2", "reduce", "(14^-1 2)"]);
    assert_eq!(v["reduced"], "(2^1 14)");
    let v = json(&["rank2", "autorders", "-(6^3 6)"]);
    assert_eq!(v["orders"], serde_json::json!([1, 2, 3, 6]));
}

#[test]
fn nikulin_subcommands() {
    let v = json(&["nikulin", "exists", "--sig", "0,2", "--form", "3^+1 9^+1"]);
    assert_eq!(v["exists"], true);
    assert_eq!(v["failed_condition"], Value::Null);
    let v = json(&["nikulin", "exists", "--sig", "0,2", "--form", "2_II^-2 3^+2 7^-1"]);
    assert_eq!(v["failed_condition"], 4);
    let v = json(&["nikulin", "embed", "--sig", "6,0", "--form", "3^+1", "--into", "8,0"]);
    assert_eq!(v["complement"]["symbol"], "3^-1");
    assert_eq!(v["complement"]["signature"], serde_json::json!([2, 0]));
}

#[test]
fn forms_and_glue() {
    let v = json(&["dform", "of", "--name", "E6"]);
    assert_eq!(v["symbol"], "3^+1");
    assert_eq!(v["signature_mod8"], 6);
    let v = json(&["dform", "iso", "2_1^+1", "2_7^+1"]);
    assert_eq!(v["isomorphic"], false);
    let v = json(&["glue", "isotropic", "--form", "3^-2"]);
    assert_eq!(v["subgroups"].as_array().unwrap().len(), 3);
    let v = json(&["saturate", "--s", "3^-2 9^-1", "--root", "E6"]);
    assert!(v["witnesses"].as_array().unwrap().iter().any(|w| w["symbol"] == "3^+1 9^-1"));
    let v = json(&["lattice", "shortvec", "--name", "E8", "--norm", "2"]);
    assert_eq!(v["count"], 120);
}

#[test]
fn table_subcommands() {
    let v = json(&["k3", "check", "--degree", "2"]);
    assert_eq!(v["pass_rows"], serde_json::json!([3, 7, 9, 11]));
    let v = json(&["nonsymplectic", "--row", "1"]);
    assert_eq!(v["classes"][0]["n_bar"], 6);
    assert_eq!(v["classes"][0]["total_order"], 174960);
    let v = json(&["uniqueness", "--row", "1"]);
    assert!(!v["witnesses"].as_array().unwrap().is_empty());
    let v = json(&["family-dim", "--order", "2", "--weights", "0,0,0,0,1,1", "--w0", "0"]);
    assert_eq!(v["dimension"], 12);
    let v = json(&["symplectic-check", "--order", "9", "--weights", "0,6,3,1,4,7", "--w0", "6"]);
    assert_eq!(v["symplectic"], true);
}

#[test]
fn exit_codes() {
    let usage = latticelab(&["rank2", "enum"]);
    assert_eq!(usage.status.code(), Some(2));
    let usage = latticelab(&["family-dim", "--order", "2", "--weights", "0,1", "--w0", "0"]);
    assert_eq!(usage.status.code(), Some(2));
    let domain = latticelab(&["lattice", "info", "--gram", "[[1,2],[3,4]]"]);
    assert_eq!(domain.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&domain.stderr).contains("NonSymmetric"));
    let domain = latticelab(&["nonsymplectic", "--row", "9", "--json"]);
    assert_eq!(domain.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&domain.stdout).unwrap();
    assert_eq!(v["error"], "InvalidInput");
    let domain = latticelab(&["lattice", "shortvec", "--name", "U", "--norm", "2"]);
    assert_eq!(domain.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&domain.stderr).contains("IndefiniteLattice"));
}

#[test]
fn data_directory_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_latticelab"))
        .args(["cubic", "check", "--all"])
        .env("LATTICELAB_DATA", "/nonexistent-latticelab-data")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("DataFileMissing"));
}
