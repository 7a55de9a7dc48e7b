use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn logdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logdiv"))
        .args(args)
        .env_remove("LOGDIV_BUDGET")
        .output()
        .expect("run logdiv")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares `--json -` output with a stored report.
fn check_golden(args: &[&str], name: &str) {
    let mut full = args.to_vec();
    full.extend(["--json", "-"]);
    let out = logdiv(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let want = std::fs::read_to_string(golden(name)).unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout), want, "{name}");
}

#[test]
fn classify_cusp_matches_golden() {
    check_golden(&["classify", "x^2 - y^3"], "classify_cusp.json");
}

#[test]
fn bsp_three_lines_matches_golden() {
    check_golden(&["bsp", "x*y*(x+y)"], "bsp_three_lines.json");
}

#[test]
fn dual_xy_matches_golden() {
    check_golden(&["dual", "x*y"], "dual_xy.json");
}

#[test]
fn corpus_matches_golden() {
    check_golden(&["corpus"], "corpus.json");
}

#[test]
fn json_is_deterministic() {
    let a = logdiv(&["analyze", "x*y*(x+y)", "--json", "-"]);
    let b = logdiv(&["analyze", "x*y*(x+y)", "--json", "-"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    for key in ["input", "divisor", "classification", "bernstein", "duality", "budget"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v.get("timings").is_none());
}

#[test]
fn timings_only_on_request() {
    let out = logdiv(&["classify", "x*y", "--timings", "--json", "-"]);
    assert!(stdout_json(&out).get("timings").is_some());
}

#[test]
fn json_file_and_text_output() {
    let dir = std::env::temp_dir().join(format!("logdiv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let out = logdiv(&["bsp", "x*y", "--json", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("(s+1)^2"), "{text}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["bernstein"]["b"], "(s+1)^2");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn symmetry_exit_codes() {
    let yes = logdiv(&["symmetry", "--poly", "(s+1)*(s+2/3)*(s+4/3)"]);
    assert_eq!(code(&yes), 0);
    let no = logdiv(&["symmetry", "--poly", "s+2"]);
    assert_eq!(code(&no), 1);
    let shifted = logdiv(&["symmetry", "--poly", "(s+1)*(s+2)", "--shift", "3"]);
    assert_eq!(code(&shifted), 0);
    let from_h = logdiv(&["symmetry", "x^2 - y^3", "--json", "-"]);
    assert_eq!(code(&from_h), 0);
}

#[test]
fn bad_input_exits_2() {
    for args in [&["classify", "x^2"][..], &["classify", "x^^2"], &["bsp", "x*y", "--vars", "x"], &["classify", "0"]] {
        let out = logdiv(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"), "{args:?}");
    }
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = logdiv(&["analyze", "x^4 + y^5 + x*y^4", "--max-pairs", "5", "--json", "-"]);
    assert_eq!(code(&out), 3);
    let v = stdout_json(&out);
    assert!(v["bernstein"].get("not_certified").is_some(), "{v}");
    let env = Command::new(env!("CARGO_BIN_EXE_logdiv"))
        .args(["bsp", "x^2 - y^3"])
        .env("LOGDIV_BUDGET", "max_pairs=3")
        .output()
        .unwrap();
    assert_eq!(code(&env), 3);
    // flags override the environment
    let flag = Command::new(env!("CARGO_BIN_EXE_logdiv"))
        .args(["bsp", "x^2 - y^3", "--max-pairs", "100000"])
        .env("LOGDIV_BUDGET", "max_pairs=3")
        .output()
        .unwrap();
    assert_eq!(code(&flag), 0);
}

#[test]
fn corpus_negative_control() {
    let dir = std::env::temp_dir().join(format!("logdiv-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wrong.json");
    let entries = serde_json::json!([{
        "name": "wrong-b",
        "h": "x*y",
        "vars": ["x", "y"],
        "expected_flags": {"Koszul": true},
        "expected_b": "(s+1)*(s+2)",
        "provenance": "deliberately wrong expectation"
    }]);
    std::fs::write(&path, entries.to_string()).unwrap();
    let out = logdiv(&["corpus", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL"), "{text}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn corpus_filter() {
    let out = logdiv(&["corpus", "--filter", "cusp", "--json", "-"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["entries"].as_array().unwrap().len(), 1);
    let empty = logdiv(&["corpus", "--filter", "no-such-entry"]);
    assert_eq!(code(&empty), 0);
    assert!(String::from_utf8_lossy(&empty.stderr).contains("no corpus entries"));
}

#[test]
fn stage_commands_run() {
    for args in [
        &["logderiv", "x*y*(x+y)"][..],
        &["spencer", "x^2 - y^3", "--q", "s+1"],
        &["annihilator", "x^2 - y^3"],
        &["dual", "x*y", "--q", "2*s"],
    ] {
        let mut full = args.to_vec();
        full.extend(["--json", "-"]);
        let out = logdiv(&full);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        stdout_json(&out);
    }
}
