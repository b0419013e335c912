//! End-to-end runs of the `coreep` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use coreep::format;
use coreep_core::{CMatrix, C64};
use serde_json::Value;
use tempfile::TempDir;

fn coreep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coreep")).args(args).output().expect("run coreep")
}

fn put(dir: &TempDir, name: &str, rows: &[&[f64]]) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, format::matrix_json(&CMatrix::from_real_rows(rows))).unwrap();
    path.to_string_lossy().into_owned()
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(bytes)))
}

fn out_path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn read(path: &Path) -> CMatrix {
    format::read_matrix(path).unwrap()
}

#[test]
fn core_ep_of_idempotent() {
    let dir = TempDir::new().unwrap();
    let a = put(&dir, "a.json", &[&[1.0, 1.0], &[0.0, 0.0]]);
    let out = out_path(&dir, "x.json");
    let run = coreep(&["compute", "core-ep", "--in", &a, "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0));
    let x = read(&out);
    assert!((&x - &CMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]])).max_abs() <= 1e-12);
    let report = json(&std::fs::read(dir.path().join("x.report.json")).unwrap());
    assert_eq!(report["op"], "core-ep");
    assert_eq!(report["index"], 1);
    assert!(report["tolerances"]["eqTol"].is_number());
}

#[test]
fn every_route_on_stdout() {
    let dir = TempDir::new().unwrap();
    let a = put(&dir, "a.json", &[&[2.0, 1.0], &[0.0, 1.0]]);
    for route in ["r1", "r2", "r3", "all"] {
        let run = coreep(&["compute", "core-ep", "--in", &a, "--route", route]);
        assert_eq!(run.status.code(), Some(0), "{route}");
        let x = format::parse_matrix(&String::from_utf8(run.stdout).unwrap(), "stdout").unwrap();
        let want = CMatrix::from_real_rows(&[[0.5, -0.5], [0.0, 1.0]]);
        assert!((&x - &want).max_abs() <= 1e-12, "{route}");
        assert_eq!(json(&run.stderr)["route"], route);
    }
}

#[test]
fn drazin_of_nilpotent() {
    let dir = TempDir::new().unwrap();
    let n = put(&dir, "n.json", &[&[0.0, 1.0], &[0.0, 0.0]]);
    let out = out_path(&dir, "d.json");
    let run = coreep(&["compute", "drazin", "--in", &n, "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(read(&out).max_abs(), 0.0);
    assert_eq!(json(&std::fs::read(dir.path().join("d.report.json")).unwrap())["index"], 2);
}

#[test]
fn group_inverse_missing() {
    let dir = TempDir::new().unwrap();
    let n = put(&dir, "n.json", &[&[0.0, 1.0], &[0.0, 0.0]]);
    let run = coreep(&["compute", "group", "--in", &n]);
    assert_eq!(run.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&run.stderr).contains("no group inverse"));
}

#[test]
fn bc_inverse_three_operands() {
    let dir = TempDir::new().unwrap();
    let a = put(&dir, "a.json", &[&[2.0, 0.0], &[0.0, 0.0]]);
    let e = put(&dir, "e.json", &[&[1.0, 0.0], &[0.0, 0.0]]);
    let run = coreep(&["compute", "bc", "--in", &a, "--in2", &e, "--in3", &e]);
    assert_eq!(run.status.code(), Some(0));
    let x = format::parse_matrix(&String::from_utf8(run.stdout).unwrap(), "stdout").unwrap();
    assert!((&x - &CMatrix::from_real_rows(&[[0.5, 0.0], [0.0, 0.0]])).max_abs() <= 1e-12);

    let run = coreep(&["compute", "bc", "--in", &a, "--in2", &e]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("none.json");
    assert_eq!(coreep(&["compute", "mp", "--in", missing.to_str().unwrap()]).status.code(), Some(2));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"rows": 2, "cols": 2, "data": [[1, 0]]}"#).unwrap();
    assert_eq!(coreep(&["compute", "mp", "--in", bad.to_str().unwrap()]).status.code(), Some(2));

    let rect = put(&dir, "r.json", &[&[1.0, 2.0, 3.0]]);
    assert_eq!(coreep(&["compute", "drazin", "--in", &rect]).status.code(), Some(2));
    assert_eq!(coreep(&["compute", "nonsense"]).status.code(), Some(2));
    assert_eq!(coreep(&[]).status.code(), Some(2));
    let a = put(&dir, "a.json", &[&[1.0]]);
    assert_eq!(coreep(&["compute", "mp", "--in", &a, "--tol-eq", "-1"]).status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    assert_eq!(coreep(&["--help"]).status.code(), Some(0));
    assert_eq!(coreep(&["verify", "--help"]).status.code(), Some(0));
}

#[test]
fn block_worked_example() {
    let dir = TempDir::new().unwrap();
    let a = put(&dir, "a.json", &[&[2.0]]);
    let b = put(&dir, "b.json", &[&[1.0]]);
    let run = coreep(&["verify", "thm3.6", "--in", &a, "--in2", &b, "--in3", &b]);
    assert_eq!(run.status.code(), Some(0));
    let report = json(&run.stdout);
    assert_eq!(report["lawId"], "thm3.6");
    assert_eq!(report["conclusionHolds"], true);
    assert!(report["residuals"]["z_block"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn order_counterexample() {
    let dir = TempDir::new().unwrap();
    let a = put(&dir, "a.json", &[&[1.0, 0.0], &[0.0, 0.0]]);
    let b = put(&dir, "b.json", &[&[0.0, 0.0], &[0.0, 1.0]]);
    let out = out_path(&dir, "r.json");
    let run = coreep(&["verify", "order", "--in", &a, "--in2", &b, "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(1));
    let report = json(&std::fs::read(&out).unwrap());
    assert_eq!(report["conclusionHolds"], false);
    assert!(run.stdout.is_empty());
}

#[test]
fn vacuous_policy() {
    let dir = TempDir::new().unwrap();
    let a = put(&dir, "a.json", &[&[1.0, 0.0], &[0.0, 0.0]]);
    let b = put(&dir, "b.json", &[&[0.0, 1.0], &[0.0, 0.0]]);
    let args = ["verify", "thm3.3", "--in", &a, "--in2", &b, "--lambda", "2,0", "--mu", "1,0"];
    let run = coreep(&args);
    assert_eq!(run.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&run.stderr).contains("vacuous"));
    let report = json(&run.stdout);
    assert_eq!(report["vacuous"], true);
    assert_eq!(report["hypothesisSatisfied"], false);

    let mut strict = args.to_vec();
    strict.push("--strict-hypothesis");
    assert_eq!(coreep(&strict).status.code(), Some(1));
}

#[test]
fn operand_mismatch() {
    let dir = TempDir::new().unwrap();
    let a = put(&dir, "a.json", &[&[1.0, 0.0], &[0.0, 0.0]]);
    let small = put(&dir, "s.json", &[&[1.0]]);
    assert_eq!(coreep(&["verify", "order", "--in", &a]).status.code(), Some(2));
    assert_eq!(coreep(&["verify", "cor2.2", "--in", &a, "--in2", &a]).status.code(), Some(2));
    assert_eq!(coreep(&["verify", "order", "--in", &a, "--in2", &small]).status.code(), Some(2));
    assert_eq!(coreep(&["verify", "thm3.3", "--in", &a, "--in2", &a]).status.code(), Some(2));
    assert_eq!(coreep(&["verify", "lem3.4", "--in", &a]).status.code(), Some(2));
    assert_eq!(coreep(&["verify", "thm3.3", "--in", &a, "--in2", &a, "--lambda", "0,0", "--mu", "1"]).status.code(), Some(2));
}

#[test]
fn weights_with_negative_parts() {
    let dir = TempDir::new().unwrap();
    let a = put(&dir, "a.json", &[&[1.0, 0.0], &[0.0, -1.0]]);
    let b = put(&dir, "b.json", &[&[0.0, 1.0], &[1.0, 0.0]]);
    let run = coreep(&["verify", "thm3.3", "--in", &a, "--in2", &b, "--lambda", "-1,0", "--mu", "-1,0"]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let report = json(&run.stdout);
    assert_eq!(report["hypothesisSatisfied"], true);
    assert_eq!(report["conclusionHolds"], true);
}

#[test]
fn thm44_certificate_written() {
    let dir = TempDir::new().unwrap();
    let bundle = out_path(&dir, "pair.json");
    let run = coreep(&["gen", "order", "--dims", "1,1,1", "--seed", "3", "--out", bundle.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0));
    let pair = json(&std::fs::read(&bundle).unwrap());
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    std::fs::write(&a, pair["matrices"]["a"].to_string()).unwrap();
    std::fs::write(&b, pair["matrices"]["b"].to_string()).unwrap();
    let cert = out_path(&dir, "cert.json");
    let run = coreep(&[
        "verify",
        "thm4.4",
        "--in",
        a.to_str().unwrap(),
        "--in2",
        b.to_str().unwrap(),
        "--certificate",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let cert = json(&std::fs::read(&cert).unwrap());
    assert!(cert.as_object().is_some_and(|o| !o.is_empty()));
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "index", "--dim", "4", "--rank", "2", "--index", "2", "--seed", "11"];
    let first = coreep(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, coreep(&args).stdout);
    let bundle = json(&first.stdout);
    let a = format::parse_matrix(&bundle["matrices"]["a"].to_string(), "bundle").unwrap();
    assert_eq!(a.shape(), (4, 4));
    assert_eq!(coreep(&["gen", "index", "--dim", "2", "--rank", "2", "--index", "1"]).status.code(), Some(2));
}

#[test]
fn gen_kinds() {
    for args in [
        vec!["gen", "lambda", "--n", "3", "--root-order", "3"],
        vec!["gen", "lambda", "--n", "4", "--root-order", "2", "--singular"],
        vec!["gen", "lambda-nilpotent", "--n", "3", "--lambda", "0.5,0.25"],
        vec!["gen", "thm35", "--n", "2"],
        vec!["gen", "thm35-commuting"],
        vec!["gen", "block", "--r", "2", "--s", "2", "--mode", "range-b"],
        vec!["gen", "order", "--dims", "1,0,1"],
    ] {
        let run = coreep(&args);
        assert_eq!(run.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&run.stderr));
        assert!(json(&run.stdout)["matrices"].is_object());
    }
    assert_eq!(coreep(&["gen", "block", "--r", "2", "--s", "2"]).status.code(), Some(2));
}

#[test]
fn selftest_summary_shape_and_determinism() {
    let args = ["selftest", "2", "2..3", "--seed", "5"];
    let first = coreep(&args);
    let second = coreep(&args);
    assert_eq!(first.stdout, second.stdout);
    let summary = json(&first.stdout);
    let suites = summary["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 14);
    for s in suites {
        assert!(s["law"].is_string() && s["passes"].is_u64() && s["failures"].is_u64() && s["maxResidual"].is_number());
    }
    assert_eq!(summary["seed"], 5);
    let failures: u64 = suites.iter().map(|s| s["failures"].as_u64().unwrap()).sum();
    assert_eq!(first.status.code(), Some(if failures == 0 { 0 } else { 1 }));
    assert!(String::from_utf8_lossy(&first.stderr).contains("wall time"));
}

#[test]
fn selftest_scalar_algebra() {
    let run = coreep(&["selftest", "1", "1..1"]);
    let summary = json(&run.stdout);
    for s in summary["suites"].as_array().unwrap() {
        let law = s["law"].as_str().unwrap();
        // The n = 2 minimum of the thm3.5 generator keeps the weighted counterexample alive.
        if law != "thm3.5" {
            assert_eq!(s["failures"], 0, "{law}");
        }
    }
    assert_eq!(coreep(&["selftest", "0"]).status.code(), Some(2));
    assert_eq!(coreep(&["selftest", "3", "4..2"]).status.code(), Some(2));
}

#[test]
fn complex_input_round_trip() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("c.json");
    let m = CMatrix::from_rows(&[[C64::new(0.0, 1.0), C64::new(1.0, 0.0)], [C64::new(0.0, 0.0), C64::new(0.0, 0.0)]]);
    std::fs::write(&path, format::matrix_json(&m)).unwrap();
    let run = coreep(&["compute", "mp", "--in", path.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0));
    let x = format::parse_matrix(&String::from_utf8(run.stdout).unwrap(), "stdout").unwrap();
    let axa = coreep_core::CMatrix::product(&[&m, &x, &m]);
    assert!((&axa - &m).max_abs() <= 1e-12);
}
