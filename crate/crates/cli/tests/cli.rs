use std::path::PathBuf;
use std::process::Command;

use rlr_cli::{run, Outcome};
use serde_json::Value;

fn rlr(args: &[&str]) -> Outcome {
    run(std::iter::once("rlr").chain(args.iter().copied()))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn lambda_table_reproduces_the_printed_columns() {
    let out = rlr(&["lambda-table", "--p", "3,5,7", "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json(&out);
    let cols: Vec<Vec<u64>> = v["data"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["lambda"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect())
        .collect();
    assert_eq!(cols, vec![vec![2, 2, 2], vec![2, 2, 3, 3, 1], vec![2, 2, 5, 5, 2, 2, 6]]);
    assert_eq!(v["seed"], 1);

    let csv = rlr(&["lambda-table", "--p", "3,5", "--format", "csv"]).stdout;
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "# lambda-table seed=1");
    assert_eq!(lines[1], "i,p=3,p=5");
    assert_eq!(lines[4], "lambda_2,2,3");
    assert_eq!(lines[6], "lambda_4,,1");
}

#[test]
fn gamma_outside_the_triangle_is_zero() {
    let out = rlr(&["gamma", "--k", "3", "--j", "5", "--format", "json"]);
    assert_eq!(out.code, 0);
    assert_eq!(json(&out)["data"][0]["polynomial"], "0");

    let out = rlr(&["gamma", "--k", "3", "--case", "odd/odd", "--format", "csv"]);
    assert!(out.stdout.contains("3,1,odd/odd,x0*x1^2"), "{}", out.stdout);
    assert!(out.stdout.contains("3,2,odd/odd,0"));
}

#[test]
fn mu_table_simplified_rows() {
    let v = json(&rlr(&["mu-table", "--kmax", "10", "--format", "json"]));
    let row = |k: usize| v["data"][k - 3]["simplified"].clone();
    assert_eq!(row(5), serde_json::json!(["1", "2"]));
    assert_eq!(row(6), serde_json::json!(["2", "-1", "2"]));
    assert_eq!(row(10), serde_json::json!(["2", "-3", "8", "-2", "6"]));
    assert_eq!(v["ok"], true);
}

#[test]
fn appendix_suite_passes_at_three() {
    let out = rlr(&["verify-appendix", "--p", "3", "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let v = json(&out);
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["claims"].as_array().unwrap().iter().any(|c| c["id"] == "p3/gamma-2p-p-vanishes"));
}

#[test]
fn verify_commands_pass_by_default() {
    for args in [
        vec!["verify-hochschild", "--p", "3", "--kmax", "8", "--samples", "30"],
        vec!["verify-lr", "--p", "3", "--samples", "20"],
        vec!["verify-semidirect", "--p", "3", "--trials", "10", "--samples", "10"],
        vec!["pbw", "verify", "--words", "100", "--triples", "20"],
    ] {
        let out = rlr(&args);
        assert_eq!(out.code, 0, "{args:?}: {}{}", out.stdout, out.stderr);
        assert!(out.stdout.contains(" 0 fail"), "{args:?}");
    }
}

#[test]
fn center_path_is_not_applicable() {
    let v = json(&rlr(&["verify-semidirect", "--p", "3", "--trials", "5", "--samples", "5", "--format", "json"]));
    let claim = v["claims"].as_array().unwrap().iter().find(|c| c["id"] == "p3/witt(2)/lr/restricted").unwrap();
    assert_eq!(claim["verdict"], "not-applicable");
    assert_eq!(v["passed"], true);
}

#[test]
fn pbw_normal_form_from_a_bundle_file() {
    let path = fixture("example-2-1-p3.json");
    let p = path.to_str().unwrap();
    let v = json(&rlr(&["pbw", "nf", "--input", p, "--word", "x1 e2", "--format", "json"]));
    assert_eq!(v["data"]["normal_form"], "e2 x1 + e2");
    let v = json(&rlr(&["pbw", "nf", "--input", p, "--word", "x3 x1", "--lie-only", "--format", "json"]));
    assert_eq!(v["data"]["normal_form"], "x1 x3 + 2 x3");
    let out = rlr(&["pbw", "nf", "--input", p, "--word", "x3 x1 e2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.lines().last().unwrap().ends_with(" 0"));
}

#[test]
fn corrupted_bundle_exits_one_with_a_witness() {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(fixture("example-2-1-p3.json")).unwrap()).unwrap();
    // rho(x1)(e2) = e2 becomes 2 e2.
    v["anchor"][0] = serde_json::json!([0, 1, [[1, 2]]]);
    let path = std::env::temp_dir().join(format!("rlr-corrupt-{}.json", std::process::id()));
    std::fs::write(&path, v.to_string()).unwrap();
    let out = rlr(&["verify-lr", "--input", path.to_str().unwrap(), "--format", "json"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.code, 1, "{}", out.stderr);
    let r = json(&out);
    let failed: Vec<&Value> = r["claims"].as_array().unwrap().iter().filter(|c| c["verdict"] == "fail").collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c.get("witness").is_some()));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(rlr(&["no-such-command"]).code, 2);
    assert_eq!(rlr(&["lambda-table", "--p", "4"]).code, 2);
    assert_eq!(rlr(&["gamma", "--kmax", "40"]).code, 2);
    assert_eq!(rlr(&["gamma", "--j", "2"]).code, 2);
    assert_eq!(rlr(&["verify-lr", "--input", "/nonexistent/bundle.json"]).code, 2);
    assert_eq!(rlr(&["verify-lr", "--builtin", "witt(0"]).code, 2);
    assert_eq!(rlr(&["--help"]).code, 0);
}

#[test]
fn output_is_deterministic_and_echoes_the_seed() {
    let args = ["verify-lr", "--p", "3", "--builtin", "example-2-1", "--seed", "77", "--format", "json"];
    let a = rlr(&args);
    let b = rlr(&args);
    assert_eq!(a, b);
    assert_eq!(json(&a)["seed"], 77);
    let text = rlr(&["verify-lr", "--p", "3", "--builtin", "example-2-1", "--seed", "77"]).stdout;
    assert!(text.starts_with("verify-lr  seed=77\n"));
    let csv = rlr(&["verify-lr", "--p", "3", "--builtin", "example-2-1", "--seed", "77", "--format", "csv"]).stdout;
    assert!(csv.lines().nth(1).unwrap().starts_with("verify-lr,77,"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_rlr");
    let ok = Command::new(bin).args(["lambda-table", "--p", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("lambda_2  2"));
    let bad = Command::new(bin).args(["lambda-table", "--p", "9"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
