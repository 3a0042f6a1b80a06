//! The `divfield` binary: exit codes, JSON schema, determinism and fixture files.

use serde_json::Value;
use std::io::Write as _;
use std::process::{Command, Output};

fn divfield(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_divfield")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = divfield(&full);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", String::from_utf8_lossy(&o.stdout)));
    (code(&o), v)
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../schema/run_report.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

fn assert_valid(v: &Value) {
    let errors: Vec<String> = schema().iter_errors(v).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

fn temp_fixtures(name: &str, body: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("divfield-{}-{name}.txt", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path
}

#[test]
fn classify_11a1_level_5() {
    let (c, v) = json(&["classify", "--curve", "0,-1,1,-10,-20", "--n", "5"]);
    assert_eq!(c, 0);
    assert_valid(&v);
    let r = &v["reports"][0];
    assert_eq!(r["group"], "Z/4");
    assert_eq!(r["cyclotomic"], true);
    assert_eq!(r["curve"], serde_json::json!(["0", "-1", "1", "-10", "-20"]));
}

#[test]
fn classify_15a1_all_levels() {
    let (c, v) = json(&["classify", "--label", "15a1", "--n", "all"]);
    assert_eq!(c, 0);
    assert_valid(&v);
    let abelian: Vec<u64> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["verdict"] == "Abelian")
        .map(|r| r["n"].as_u64().unwrap())
        .collect();
    assert_eq!(abelian, vec![2, 4, 8]);
}

#[test]
fn exit_codes() {
    let singular = divfield(&["classify", "--curve", "0,0,0,0,0"]);
    assert_eq!(code(&singular), 2);
    assert!(String::from_utf8_lossy(&singular.stderr).contains("SingularCurve"));
    assert_eq!(code(&divfield(&["classify", "--curve", "0,0,1,-1,-10,-20"])), 2);
    assert_eq!(code(&divfield(&["classify", "--curve", "0,x,1,-10,-20"])), 2);
    assert_eq!(code(&divfield(&["classify", "--label", "99z9"])), 3);
    assert_eq!(code(&divfield(&["classify", "--label", "NoSuchFamily@2"])), 3);
    assert_eq!(code(&divfield(&["classify", "--label", "11a1", "--n", "13"])), 2);
    assert_eq!(code(&divfield(&["audit", "groups", "--p", "4"])), 2);
    assert_eq!(code(&divfield(&["tables", "5"])), 2);
    assert_eq!(code(&divfield(&["frobnicate"])), 2);
    assert_eq!(code(&divfield(&["--help"])), 0);
}

#[test]
fn audits_pass() {
    let (c, v) = json(&["audit", "groups", "--p", "3"]);
    assert_eq!(c, 0);
    assert_valid(&v);
    assert!(v["reports"].as_array().unwrap().iter().all(|r| r["counterexamples"].as_array().unwrap().is_empty()));
    let (c, v) = json(&["audit", "identities"]);
    assert_eq!(c, 0);
    assert_valid(&v);
    let (c, v) = json(&["--samples", "25", "audit", "families", "--id", "X58i"]);
    assert_eq!(c, 0);
    assert_valid(&v);
    assert!(v["reports"][0]["cases"].as_u64().unwrap() >= 25);
}

#[test]
fn output_is_deterministic_apart_from_timing() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing");
        serde_json::to_string(&v).unwrap()
    };
    for args in [&["classify", "--label", "14a1", "--n", "6"][..], &["tables", "1"], &["family", "list"]] {
        let (_, a) = json(args);
        let (_, b) = json(args);
        assert_valid(&a);
        assert_eq!(strip(a), strip(b), "{args:?}");
    }
}

#[test]
fn table_three_with_external_33a1() {
    // test-only database entry, not bundled
    let path = temp_fixtures("33a1", "# external\n33a1,1,1,0,-11,0\n");
    let (c, v) = json(&["--fixtures", path.to_str().unwrap(), "tables", "3"]);
    assert_eq!(c, 0);
    assert_valid(&v);
    let row = v["reports"].as_array().unwrap().iter().find(|r| r["row"].as_str().unwrap().ends_with("33a1")).unwrap();
    assert_eq!(row["status"], "agree", "{row}");
    assert!(row["computed"].as_str().unwrap().starts_with("(Z/2)^3"));

    // without the file the row is skipped, not failed
    let (c, v) = json(&["tables", "3"]);
    assert_eq!(c, 0);
    let row = v["reports"].as_array().unwrap().iter().find(|r| r["row"].as_str().unwrap().ends_with("33a1")).unwrap();
    assert_eq!(row["status"], "skipped");
    std::fs::remove_file(path).ok();
}

#[test]
fn wrong_coefficients_fail_the_diff() {
    let path = temp_fixtures("wrong", "33a1,0,0,0,1,0\n");
    let (c, v) = json(&["--fixtures", path.to_str().unwrap(), "tables", "3"]);
    assert_eq!(c, 1);
    assert!(v["reports"].as_array().unwrap().iter().any(|r| r["status"] == "disagree"));
    std::fs::remove_file(path).ok();

    let bad = temp_fixtures("malformed", "33a1,1,1,0\n");
    assert_eq!(code(&divfield(&["--fixtures", bad.to_str().unwrap(), "tables", "3"])), 2);
    std::fs::remove_file(bad).ok();
}

#[test]
fn table_four_erratum_row() {
    let (c, v) = json(&["tables", "4"]);
    assert_eq!(c, 0);
    assert_valid(&v);
    let row = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["row"].as_str().unwrap().ends_with("15a1") && r["n"] == 8)
        .unwrap();
    assert_eq!(row["status"], "agree-with-erratum");
    assert!(row["note"].as_str().unwrap().contains("erratum"));
}

#[test]
fn family_commands() {
    let (c, v) = json(&["family", "instantiate", "--id", "X(3)", "--t", "2"]);
    assert_eq!(c, 0);
    assert_valid(&v);
    assert!(v.to_string().contains("-864") && v.to_string().contains("-5616"), "{v}");
    assert_eq!(code(&divfield(&["family", "instantiate", "--id", "X58b", "--t", "1"])), 2);
    assert_eq!(code(&divfield(&["family", "instantiate", "--id", "X999", "--t", "1"])), 3);
    let (c, v) = json(&["--samples", "3", "family", "verify", "--id", "Et6"]);
    assert_eq!(c, 0);
    assert_valid(&v);
}
