use std::path::PathBuf;
use std::process::Command;

use ncpoisson_cli::{run, EXIT_CHECK_FAILED, EXIT_OK, EXIT_PARSE, EXIT_USAGE, JOBS_ENV};

fn spec(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/specs")
        .join(format!("{name}.spec"))
        .display()
        .to_string()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn binary(args: &[&str], jobs_env: Option<&str>) -> std::process::Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ncpoisson"));
    cmd.args(args).env_remove(JOBS_ENV);
    if let Some(j) = jobs_env {
        cmd.env(JOBS_ENV, j);
    }
    cmd.output().unwrap()
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("ncpoisson-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn validate_bundled_spec() {
    let out = binary(&["validate", &spec("sph4")], None);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], serde_json::json!(true));
}

#[test]
fn mutated_spec_fails_validation_and_poisson() {
    let out = run(["ncpoisson", "validate", &spec("sph4-mutated")]);
    assert_eq!(out.code, EXIT_CHECK_FAILED);
    let out = run(["ncpoisson", "poisson", &spec("sph4-mutated"), "--max-weight", "3"]);
    assert_eq!(out.code, EXIT_CHECK_FAILED);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let failing: Vec<&str> = v["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == serde_json::json!(false))
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failing.contains(&"differential"), "{failing:?}");
    assert!(out.stderr.contains("differential"));
}

#[test]
fn hc_on_zero4() {
    let out = binary(&["hc", &spec("zero4"), "--max-weight", "3", "--degrees", "-2..6"], None);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let text = v.to_string();
    assert!(text.contains("truncated HC (weight <= 3)"), "{text}");
}

#[test]
fn bracket_outputs_all_parts() {
    let out = run([
        "ncpoisson",
        "bracket",
        &spec("sph4"),
        "--f",
        &data("sph4_f.json"),
        "--g",
        &data("sph4_g.json"),
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    for key in ["double_bracket", "bracket", "cyclic_average", "inputs_cyclic"] {
        assert!(!v[key].is_null(), "missing {key}");
    }
}

#[test]
fn unknown_field_is_a_parse_error_only_when_strict() {
    let text = std::fs::read_to_string(spec("sph2")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["colour"] = serde_json::json!("blue");
    let path = scratch("extra-field.spec", &v.to_string());
    let strict = run(["ncpoisson", "validate", &path]);
    assert_eq!(strict.code, EXIT_PARSE);
    assert!(strict.stderr.contains("colour"), "{}", strict.stderr);
    let lax = run(["ncpoisson", "--no-strict", "validate", &path]);
    assert_eq!(lax.code, EXIT_OK, "{}", lax.stderr);
}

#[test]
fn malformed_json_is_a_parse_error() {
    let path = scratch("broken.spec", "{\"name\": ");
    let out = binary(&["validate", &path], None);
    assert_eq!(out.status.code(), Some(EXIT_PARSE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn usage_errors() {
    assert_eq!(run(["ncpoisson"]).code, EXIT_USAGE);
    assert_eq!(run(["ncpoisson", "frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(["ncpoisson", "hc", &spec("zero4"), "--degrees", "5..1"]).code, EXIT_USAGE);
    assert_eq!(run(["ncpoisson", "--help"]).code, EXIT_OK);
}

#[test]
fn jobs_env_leaves_output_unchanged() {
    let flag = binary(&["--jobs", "3", "hc", &spec("zero4"), "--max-weight", "2"], None);
    let env = binary(&["--jobs", "3", "hc", &spec("zero4"), "--max-weight", "2"], Some("1"));
    assert_eq!(flag.status.code(), Some(EXIT_OK));
    assert_eq!(env.status.code(), Some(EXIT_OK));
    assert_eq!(flag.stdout, env.stdout);
}
