use std::process::{Command, Output};

use serde_json::Value;

fn dakl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dakl"))
        .args(args)
        .env_remove("DAKL_CONFIG")
        .env_remove("DAKL_TYPE")
        .env_remove("DAKL_RANK")
        .env_remove("DAKL_MATRIX")
        .env_remove("DAKL_WINDOW")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn spherical_rpoly_text_shows_the_path_sum() {
    let o = dakl(&["rpoly", "spherical", "Lambda0+delta", "Lambda0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "q(q - 1) + q^2(q - 1) = q^3 - q\n");
}

#[test]
fn spherical_rpoly_json_terms() {
    let o = dakl(&["rpoly", "spherical", "Lambda0+delta", "Lambda0", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"var": "q", "terms": [[1, -1], [3, 1]]}));
    assert!(stdout(&o).find("\"var\"").unwrap() < stdout(&o).find("\"terms\"").unwrap());
}

#[test]
fn specialization_evaluates_at_q() {
    let o = dakl(&["rpoly", "spherical", "Lambda0+delta", "Lambda0", "--q", "3"]);
    assert_eq!(stdout(&o), "24\n");
    let o = dakl(&["rpoly", "spherical", "Lambda0+delta", "Lambda0", "--q", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], 24);
    assert!(!dakl(&["rpoly", "spherical", "Lambda0", "Lambda0", "--q", "1"]).status.success());
}

#[test]
fn interval_dot_has_nine_nodes_and_thirteen_edges() {
    let o = dakl(&["interval", "pi[Lambda0]", "pi[Lambda0+delta]", "--format", "dot"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("digraph"));
    assert_eq!(s.matches("[label=").count(), 9);
    assert_eq!(s.matches(" -> ").count(), 13);
}

#[test]
fn interval_json_labels_reparse() {
    let o = dakl(&["interval", "pi[Lambda0]", "pi[Lambda0+delta]", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let labels: Vec<&str> = v["elements"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(labels.len(), 9);
    for l in labels {
        let o = dakl(&["interval", l, l, "--format", "json"]);
        assert!(o.status.success(), "{l}");
        let w: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(w["elements"], serde_json::json!([l]));
    }
}

#[test]
fn parabolic_interval_is_ungraded() {
    let o = dakl(&["interval", "pi[Lambda0]", "pi[Lambda0+delta]", "--parabolic", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 4);
    assert_eq!(v["graded"], false);
}

#[test]
fn chains_lists_six() {
    let o = dakl(&["chains", "pi[Lambda0+delta]", "pi[Lambda0]", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);
}

#[test]
fn hecke_paths_json_round_trips() {
    let o = dakl(&["hecke-paths", "spherical", "Lambda0+delta", "Lambda0", "--format", "json"]);
    let s = stdout(&o);
    let v: Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["paths"].as_array().unwrap().len(), 2);
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["ppoly", "pi[Lambda0]", "pi[Lambda0]*s0*s1", "--format", "json"];
    assert_eq!(dakl(&args).stdout, dakl(&args).stdout);
}

#[test]
fn classical_kl_of_s4_has_one_plus_q() {
    let o = dakl(&["classical-kl", "A", "3", "--max-len", "6", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let plus = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["result"]["p"]["terms"] == serde_json::json!([[0, 1], [1, 1]]))
        .count();
    assert!(plus > 0);
}

#[test]
fn parse_errors_report_position() {
    let o = dakl(&["interval", "pi[Lambda0+gamma]", "s0"]);
    assert_eq!(o.status.code(), Some(2));
    let e = String::from_utf8(o.stderr).unwrap();
    assert!(e.contains("position 11") && e.contains("'Lambda0', 'delta' or 'alpha<i>'"), "{e}");
}

#[test]
fn config_from_file_and_environment() {
    let dir = std::env::temp_dir().join(format!("dakl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a2.json");
    std::fs::write(&path, r#"{"cartan": {"type": "A", "rank": 2}, "window": {"d": 6, "m": 6, "h": 40}}"#).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_dakl"))
        .args(["interval", "pi[Lambda0]", "pi[Lambda0]*s1*s2", "--format", "json"])
        .env("DAKL_CONFIG", &path)
        .output()
        .unwrap();
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 4);
    let bad = dakl(&["interval", "pi[Lambda0]", "s0", "--type", "B", "--rank", "2"]);
    assert_eq!(bad.status.code(), Some(2));
    let bad = dakl(&["interval", "pi[Lambda0]", "s0", "--window", "0,1,1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn check_passes() {
    let o = dakl(&["check"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let s = stdout(&o);
    assert!(!s.contains("FAIL"));
    assert!(s.trim_end().ends_with("checks executed, 0 failed"));
    assert!(!s.contains("\n0 checks"));
}
