use std::process::Command;

use serde_json::Value;

fn run(args: &[&str], env: &[(&str, &str)]) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cqm-audit"));
    cmd.args(args).env_remove("CQM_AUDIT_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("valid JSON on stdout")
}

#[test]
fn quant_c_audit_has_five_passing_sections() {
    let (code, out) = run(&["audit", "--theory", "quant-c", "--max-dim", "3", "--seed", "7", "--samples", "40"], &[]);
    assert_eq!(code, 0);
    let v = json(&out);
    let ps = v["principles"].as_array().unwrap();
    assert_eq!(ps.len(), 5);
    assert!(ps.iter().all(|p| p["status"] == "pass"));
}

#[test]
fn rel_audit_marks_the_expected_failure() {
    let (code, out) = run(&["audit", "--theory", "rel", "--format", "md", "--samples", "40"], &[]);
    assert_eq!(code, 0);
    assert!(out.contains("strong-purification: fail (expected)"));
    assert!(!out.contains("UNEXPECTED"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["audit", "--theory", "bogus"], &[]).0, 2);
    assert_eq!(run(&["audit", "--max-dim", "0"], &[]).0, 2);
    assert_eq!(run(&["audit", "--format", "yaml"], &[]).0, 2);
    assert_eq!(run(&["oracle-rel", "--max-dim", "3"], &[]).0, 2);
    assert_eq!(run(&["audit"], &[("CQM_AUDIT_SEED", "seven")]).0, 2);
}

#[test]
fn reconstruct_names_the_target() {
    let (code, out) = run(&["reconstruct", "--theory", "quant-c", "--samples", "30"], &[]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["target"], "Quant over D(R)[i]");
    let (_, out) = run(&["reconstruct", "--theory", "quant-r", "--samples", "30"], &[]);
    assert_eq!(json(&out)["target"], "Quant over D(R)");
    let (_, out) = run(&["reconstruct", "--theory", "class", "--samples", "30"], &[]);
    let v = json(&out);
    assert!(v["target"].is_null() && v["caveat"].is_string());
}

#[test]
fn oracle_counts_relations_and_finds_a_counterexample() {
    let (code, out) = run(&["oracle-rel", "--max-dim", "2"], &[]);
    assert_eq!(code, 0);
    let v = json(&out);
    let two_two = v["hom_sets"]
        .as_array()
        .unwrap()
        .iter()
        .find(|h| h["in"] == 2 && h["out"] == 2)
        .unwrap();
    assert_eq!(two_two["relations"], 16);
    assert_eq!(v["counterexample"]["kind"], "no-purification");
}

#[test]
fn environment_seed_overrides_the_flag() {
    let (_, out) = run(&["audit", "--theory", "class", "--seed", "1", "--samples", "20"], &[("CQM_AUDIT_SEED", "9")]);
    assert_eq!(json(&out)["config"]["seed"], 9);
}

#[test]
fn reports_can_be_written_to_a_file() {
    let path = std::env::temp_dir().join(format!("cqm-audit-{}.md", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out) = run(&["audit", "--theory", "class", "--samples", "20", "--format", "md", "--out", p], &[]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("# Audit: class"));
}
