use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn swancalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swancalc"))
        .args(args)
        .env_remove("SWANCALC_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn write_catalog(dir: &Path, catalog: &Value) -> String {
    let path = dir.join("catalog.json");
    std::fs::write(&path, serde_json::to_string_pretty(catalog).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn as_entry(id: &str, p: u64, n: usize) -> Value {
    let mut num = vec![0; n + 1];
    num[n] = 1;
    json!({
        "id": id,
        "kind": "curve-cover",
        "checks": ["swan"],
        "parameters": {"model": "cover", "field": p.to_string(), "boundary": ["inf"],
                       "layers": [{"artin_schreier": {"num": num}}]},
        "expected": [{"check": "swan", "key": "swan_degree", "value": n, "provenance": "pole order"}]
    })
}

#[test]
fn builtin_catalog_validates() {
    let o = swancalc(&["catalog", "validate"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).is_empty());
    let count: usize = stdout(&o).trim().rsplit(' ').nth(1).unwrap().parse().unwrap();
    assert!(count >= 25);
}

#[test]
fn valid_file_has_no_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_catalog(dir.path(), &json!({"schema_version": 1, "entries": [as_entry("a", 3, 2)]}));
    let o = swancalc(&["catalog", "validate", &path]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).is_empty());
}

#[test]
fn duplicate_id_names_both_entries() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = json!({"schema_version": 1, "entries": [as_entry("twin", 3, 2), as_entry("other", 2, 1), as_entry("twin", 5, 3)]});
    let path = write_catalog(dir.path(), &catalog);
    let o = swancalc(&["catalog", "validate", &path]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("duplicate id 'twin': entries 0 and 2"), "{err}");
}

#[test]
fn pole_order_divisible_by_p_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_catalog(dir.path(), &json!({"schema_version": 1, "entries": [as_entry("bad", 3, 3)]}));
    let o = swancalc(&["catalog", "validate", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("pole order must be prime to p"), "{}", stderr(&o));
    // running the same file is an input error too
    let o = swancalc(&["run", "--catalog", &path, "--all"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn local_pole_order_divisible_by_p_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let entry = json!({"id": "loc", "kind": "local", "checks": ["swan"],
                       "parameters": {"model": "artin_schreier", "field": "2", "low": -4, "coeffs": [1]}});
    let path = write_catalog(dir.path(), &json!({"schema_version": 1, "entries": [entry]}));
    let o = swancalc(&["catalog", "validate", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("pole order must be prime to p"));
}

#[test]
fn schema_and_check_errors_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let mut e = as_entry("x", 3, 2);
    e["checks"] = json!(["swan", "laumon"]);
    e["expected"][0]["provenance"] = json!("");
    let path = write_catalog(dir.path(), &json!({"schema_version": 2, "entries": [e]}));
    let o = swancalc(&["catalog", "validate", &path]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("schema_version 2"), "{err}");
    assert!(err.contains("check 'laumon' does not apply"), "{err}");
    assert!(err.contains("has no provenance"), "{err}");
}

#[test]
fn gos_example() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("r.json");
    let o = swancalc(&["run", "--entry", "as-p3-n2", "--check", "gos", "--json", json_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r = read_json(&json_path);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["precision"], 64);
    let reports = r["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["entry"], "as-p3-n2");
    assert_eq!(reports[0]["check"], "gos");
    assert_eq!(reports[0]["computed"]["chi_c"], -1);
    assert_eq!(reports[0]["oracle"]["chi_c"], -1);
    assert_eq!(reports[0]["pass"], true);
    assert!(stdout(&o).starts_with("PASS as-p3-n2 gos"));
}

#[test]
fn kummer_swan_class_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("r.json");
    let o = swancalc(&["run", "--entry", "kummer-e4", "--check", "swan", "--quiet", "--json", json_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let r = &read_json(&json_path)["reports"][0];
    assert_eq!(r["computed"]["swan_class"], json!({}));
    assert_eq!(r["computed"]["swan_degree"], 0);
    assert_eq!(r["pass"], true);
}

#[test]
fn failed_expectation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let mut e = as_entry("wrong", 3, 2);
    e["expected"][0]["value"] = json!(5);
    let path = write_catalog(dir.path(), &json!({"schema_version": 1, "entries": [e]}));
    let json_path = dir.path().join("r.json");
    let o = swancalc(&["run", "--catalog", &path, "--all", "--json", json_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r = &read_json(&json_path)["reports"][0];
    assert_eq!(r["pass"], false);
    assert_eq!(r["mismatches"], json!(["expected swan_degree"]));
}

#[test]
fn unknown_entry_and_unlisted_check_are_input_errors() {
    assert_eq!(swancalc(&["run", "--entry", "no-such-entry"]).status.code(), Some(2));
    assert_eq!(swancalc(&["run", "--entry", "kummer-e4", "--check", "laumon"]).status.code(), Some(2));
    assert_eq!(swancalc(&["run", "--all", "--check", "nonsense"]).status.code(), Some(2));
    assert_eq!(swancalc(&["run"]).status.code(), Some(2));
}

#[test]
fn reports_are_sorted_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let c = dir.path().join("c.json");
    let args = |p: &Path| vec!["run", "--all", "--field", "3", "--quiet", "--json"].into_iter().chain([p.to_str().unwrap()]).map(String::from).collect::<Vec<_>>();
    for p in [&a, &b] {
        let v = args(p);
        assert_eq!(swancalc(&v.iter().map(String::as_str).collect::<Vec<_>>()).status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let v = args(&c);
    let o = Command::new(env!("CARGO_BIN_EXE_swancalc"))
        .args(&v)
        .env("SWANCALC_PRECISION", "128")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let (ra, rc) = (read_json(&a), read_json(&c));
    assert_eq!(rc["precision"], 128);
    assert_eq!(ra["reports"], rc["reports"]);

    let keys: Vec<(String, String)> = ra["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["entry"].as_str().unwrap().into(), r["check"].as_str().unwrap().into()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(keys.iter().any(|k| k.0 == "as-p3-n2"));
    assert!(keys.iter().all(|k| !k.0.starts_with("as-p2") && !k.0.starts_with("as-p5")));
}
