//! Every JSON report validates against its schema under `schemas/`, and the
//! exit codes follow the 0 / 1 / 2 split.

use std::path::PathBuf;

use contactlab::cli::{run_args, Outcome};
use serde_json::Value;

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../schemas/{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn run(args: &[&str]) -> Outcome {
    let mut full = vec!["contactlab", "--json"];
    full.extend_from_slice(args);
    run_args(full)
}

fn check(name: &str, args: &[&str], code: i32) -> Value {
    let out = run(args);
    assert_eq!(out.code, code, "{args:?}: {}", out.stderr);
    let value: Value = serde_json::from_str(&out.stdout).unwrap();
    let validator = schema(name);
    let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name} {args:?}: {errors:?}\n{value:#}");
    value
}

#[test]
fn report_schema() {
    let v = check("report", &["report", "--curve", "x0^2+x1^2-x2^2"], 0);
    assert_eq!(v["d_formula"], 4);
    assert_eq!(v["contact_residual_zero"], true);
    check("report", &["report", "--curve", "x0^2*x2 - x1^3 - x1^2*x2"], 0);
    check("report", &["report", "--curve", "x0 + 2*x1"], 0);
}

#[test]
fn dual_schema() {
    check("dual", &["dual", "--curve", "x0^2+x1^2-x2^2"], 0);
    let v = check("dual", &["dual", "--curve", "x0 - x2"], 0);
    assert_eq!(v["dual_point"], "[1, 0, -1]");
}

#[test]
fn lift_schema() {
    let v = check("lift", &["lift", "--curve", "x0^2+x1^2-x2^2", "--point", "[3, 4, 5]"], 0);
    assert_eq!(v["tangent"], "[3, 4, -5]");
}

#[test]
fn verify_schema() {
    let v = check("verify", &["verify", "--curve", "x0^2+x1^2-x2^2"], 0);
    assert_eq!(v["residual"], "0");
    assert_eq!(v["control_residual_zero"], false);
}

#[test]
fn lines_schema() {
    check("lines", &["lines", "--count", "40"], 0);
    let v = check("lines", &["lines", "--matrix", "1 2 3 4 5 7", "--count", "40", "--jobs", "2"], 0);
    assert_eq!(v["agreements"], 40);
}

#[test]
fn euler_schema() {
    let v = check("euler", &["euler", "--name", "CP3"], 0);
    assert_eq!(v["entries"][0]["pass"], true);
    check("euler", &["euler"], 0);
}

#[test]
fn catalog_schema() {
    let v = check("catalog", &["catalog"], 0);
    assert_eq!(v["all_passed"], true);
}

#[test]
fn failing_euler_entry_exits_one() {
    let dir = std::env::temp_dir().join(format!("contactlab-euler-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("extra.json");
    std::fs::write(&file, r#"[{"name":"bad","chi_top":5,"chi_O":1,"c1_cubed":64}]"#).unwrap();
    let path = file.to_str().unwrap();
    let v = check("euler", &["euler", "--name", "bad", "--catalog", path], 1);
    assert_eq!(v["entries"][0]["pass"], false);
    check("euler", &["euler", "--catalog", path], 1);
    std::fs::write(&file, "not json").unwrap();
    assert_eq!(run(&["euler", "--catalog", path]).code, 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn input_errors_exit_two() {
    let out = run(&["report", "--curve", "x0^2 +"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("parse error at offset 7"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
    for args in [
        &["report", "--curve", "x0^2 + x1"][..],
        &["report", "--curve", "0"],
        &["lift", "--curve", "x0^2+x1^2-x2^2", "--point", "[1, 2, 3]"],
        &["lift", "--curve", "x0^2+x1^2-x2^2", "--point", "[1, 2]"],
        &["lines", "--matrix", "1 0 0 0 0 0"],
        &["lines", "--matrix", "1 0 x 0 0 1"],
        &["euler", "--name", "nowhere"],
        &["dual", "--curve", "x0^2+x1^2-x2^2", "--max-degree", "0"],
        &["report", "--curve", "x0", "--tol", "0"],
        &["unknown-command"],
    ] {
        assert_eq!(run(args).code, 2, "{args:?}");
    }
}

#[test]
fn math_failures_exit_one() {
    // Tacnode: outside the supported singularities.
    assert_eq!(run(&["report", "--curve", "x1^2*x2^2 - x0^4 - x1^4"]).code, 1);
    // Quartic beyond a degree cap of 3.
    assert_eq!(run(&["dual", "--curve", "x0^4 + x1^4 - x2^4", "--max-degree", "3"]).code, 1);
}

#[test]
fn text_output_is_key_value() {
    let out = run_args(["contactlab", "report", "--curve", "x0^2+x1^2-x2^2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.lines().any(|l| l == "d_formula: 4"), "{}", out.stdout);
    assert!(out.stdout.lines().all(|l| l.contains(": ")));
}

#[test]
fn seed_from_environment_matches_flag() {
    let a = run_args(["contactlab", "--json", "--seed", "17", "report", "--curve", "x0^2*x2 - x1^3 - x1^2*x2"]);
    let b = run_args(["contactlab", "--json", "--seed", "17", "report", "--curve", "x0^2*x2 - x1^3 - x1^2*x2"]);
    assert_eq!(a, b);
}
