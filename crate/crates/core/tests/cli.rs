use std::path::PathBuf;

use hyperlines::catalog::EXAMPLE41;
use hyperlines::cli::{run, EXIT_OK, EXIT_PROBE_ERROR, EXIT_VERIFY_FAILED};
use hyperlines::exactcore::{parse_polynomial, print_polynomial};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn call(args: &[&str]) -> (i32, Value, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<&str> = std::iter::once("hyperlines").chain(args.iter().copied()).collect();
    let code = run(argv, &mut out, &mut err);
    let json = serde_json::from_slice(&out).unwrap_or(Value::Null);
    (code, json, String::from_utf8(err).unwrap())
}

fn tmp(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("hyperlines-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).display().to_string()
}

#[test]
fn fixture_file_matches_the_constant() {
    let text = std::fs::read_to_string(data("example41.txt")).unwrap();
    assert_eq!(parse_polynomial(text.trim()).unwrap(), parse_polynomial(EXAMPLE41).unwrap());
}

#[test]
fn parse_examples() {
    let f = parse_polynomial("x0^3 + x1^3").unwrap();
    assert_eq!(print_polynomial(&f), "x0^3 + x1^3");
    let e = parse_polynomial("x5 + 1").unwrap_err();
    assert!(e.to_string().contains("unknown variable"), "{e}");
}

#[test]
fn lines_at_origin_of_fixture() {
    let (code, j, _) = call(&["probe", "lines-at", "--eq", &data("example41.txt"), "--point", "1,0,0,0,0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(j["result"]["distinct"], 3);
    assert_eq!(j["result"]["total"], 6);
    assert_eq!(j["seed"], 0);
    assert_eq!(j["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(j["command"], "probe lines-at");
}

#[test]
fn fixture_probes() {
    let eq = data("example41.txt");
    let line = "1,0,0,0,0;0,1,0,0,0";
    let (code, j, _) = call(&["probe", "reduced", "--eq", &eq, "--line", line]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(j["result"][0]["reduced"], false);
    assert_eq!(j["result"][0]["length"], 4);
    let (_, j, _) = call(&["probe", "sing-on-line", "--eq", &eq, "--line", line]);
    assert_eq!(j["result"][0]["length"], 2);
    let (_, j, _) = call(&["probe", "f2-rank", "--eq", &eq, "--point", "1,0,0,0,0"]);
    assert_eq!(j["f2_rank"], 2);
    let (_, j, _) = call(&["probe", "mu", "--eq", &eq, "--line", line, "--seed", "3"]);
    assert_eq!(j["mu"], 3);
    assert_eq!(j["seed"], 3);
}

#[test]
fn catalog_build_then_mu() {
    let path = tmp("ci22.json");
    let (code, j, _) = call(&["catalog", "build", "ci22", "--seed", "7", "--out", &path]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(j["name"], "ci22");
    let (code, j, _) = call(&["probe", "mu", "--eq", &path, "--seed", "7"]);
    assert_eq!(code, EXIT_OK, "{j}");
    assert_eq!(j["result"]["mu"], 4);
    assert_eq!(j["case"], 2);
    let report = tmp("ci22-report.json");
    let (_, j, _) = call(&["probe", "all", "--eq", &path, "--seed", "7", "--out", &report]);
    assert_eq!(j["mubar"], 2);
    let (code, j, _) = call(&["classify", &report]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(j["case"], 2);
    assert_eq!(j["failed"].as_array().unwrap().len(), 0);
}

#[test]
fn errors_are_reported_in_json() {
    let (code, j, _) = call(&["probe", "lines-at", "--eq", "/nonexistent/eq.txt", "--point", "1,0,0,0,0"]);
    assert_eq!(code, EXIT_PROBE_ERROR);
    assert!(j["error"].is_string());
    let (code, j, _) = call(&["catalog", "build", "no_such_family"]);
    assert_eq!(code, EXIT_PROBE_ERROR);
    assert!(j["error"].is_string());
    let (code, j, _) = call(&["probe", "mu", "--eq", &data("example41.txt"), "--bogus"]);
    assert_eq!(code, EXIT_PROBE_ERROR);
    assert!(j["error"].is_string());
}

#[test]
fn raw_equation_without_rational_data() {
    let (code, j, _) = call(&["probe", "mu", "--eq", &data("example41.txt")]);
    assert_eq!(code, EXIT_PROBE_ERROR);
    assert!(j["error"].as_str().unwrap().len() > 0);
}

#[test]
fn verify_filter_and_negative_control() {
    let (code, j, table) = call(&["verify", "--filter", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(j["criteria"].as_array().unwrap().len(), 1);
    assert!(table.starts_with("PASS 1."));
    let bad = tmp("mutated.txt");
    std::fs::write(&bad, hyperlines::suite::mutate_coefficient(EXAMPLE41).unwrap()).unwrap();
    let (code, j, _) = call(&["verify", "--filter", "1", "--eq", &bad]);
    assert_eq!(code, EXIT_VERIFY_FAILED);
    assert_eq!(j["first_failure"], "1. example41 fan structure");
}

#[test]
fn verify_filter_by_tag() {
    let (_, j, _) = call(&["verify", "--filter", "schubert", "--seed", "7"]);
    let idx: Vec<u64> = j["criteria"].as_array().unwrap().iter().map(|c| c["index"].as_u64().unwrap()).collect();
    assert_eq!(idx, [8]);
}

#[test]
fn identical_seeds_give_identical_output() {
    let args = ["probe", "lines-at", "--eq", &data("example41.txt"), "--point", "1,2,0,1,3", "--seed", "5"];
    let (_, a, _) = call(&args);
    let (_, b, _) = call(&args);
    assert_eq!(a.to_string(), b.to_string());
}
