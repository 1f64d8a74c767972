use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn hodgecalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodgecalc")).args(args).env_remove("HODGECALC_SEED").output().unwrap()
}

fn hodgecalc_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hodgecalc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn metric_poly_passes_on_the_dollar_bill() {
    let out = hodgecalc(&["metric-poly", "--fixture", "dollar-bill"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["status"], "PASS");
    assert_eq!(r["command"], "metric-poly");
    assert_eq!(r["inputsDigest"].as_str().unwrap().len(), 64);
    assert!(r.get("timings").is_none());
}

#[test]
fn stratum_map_prints_the_monomial() {
    let out = hodgecalc(&["stratum-map", "--fixture", "dollar-bill", "--stratum", "1", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("t2*t3"), "{text}");
    assert!(text.lines().next().unwrap().starts_with("command"));
}

#[test]
fn input_file_and_fixture_agree() {
    let path = std::env::temp_dir().join(format!("hodgecalc-db-{}.json", std::process::id()));
    std::fs::write(&path, hodgecalc_core::fixtures::document_text("dollar-bill").unwrap()).unwrap();
    let a = hodgecalc(&["validate", "--input", path.to_str().unwrap()]);
    let b = hodgecalc(&["validate", "--fixture", "dollar-bill"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn stdin_input_is_read() {
    let text = hodgecalc_core::fixtures::document_text("dollar-bill").unwrap();
    let out = hodgecalc_stdin(&["bigrading", "--input", "-"], text);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["status"], "PASS");
}

#[test]
fn output_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("hodgecalc-out-{}.json", std::process::id()));
    let out = hodgecalc(&["segre", "--degree", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written["findings"]["polynomial"], "c1^2 - c2");
}

#[test]
fn malformed_input_exits_two() {
    let out = hodgecalc_stdin(&["validate", "--input", "-"], "{ not json");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let out = hodgecalc(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));

    let out = hodgecalc(&["validate", "--fixture", "no-such-fixture"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failed_check_exits_one() {
    // Moving F^1 onto the image of the nilpotents breaks the mixed Hodge
    // structure; the document still parses.
    let mut doc: Value = serde_json::from_str(hodgecalc_core::fixtures::document_text("dollar-bill").unwrap()).unwrap();
    doc["payload"]["F"][0] = serde_json::json!([["1", "0", "0", "0"], ["0", "1", "0", "0"]]);
    let out = hodgecalc_stdin(&["validate", "--input", "-"], &doc.to_string());
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "FAIL");
    assert_eq!(r["findings"]["polarization"]["mixedHodgeStructure"], false);
}

#[test]
fn seeds_are_respected() {
    let a = hodgecalc(&["horizontal", "--fixture", "weight2-normal-form", "--seed", "3"]);
    let b = Command::new(env!("CARGO_BIN_EXE_hodgecalc"))
        .args(["horizontal", "--fixture", "weight2-normal-form"])
        .env("HODGECALC_SEED", "3")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timings_are_opt_in() {
    let out = hodgecalc(&["schur", "--partition", "1,1", "--timings"]);
    let r = report(&out);
    assert!(r["timings"].is_object());
    assert_eq!(r["findings"]["polynomial"], "c1^2 - c2");
}
