//! End-to-end runs of the `zerofree` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zerofree"))
}

/// A scratch directory unique to one test.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("zerofree-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, file: &str, text: &str) -> String {
    let p = dir.join(file);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const TRIANGLE: &str = "graph 3\nedge 0 0 1\nedge 1 1 2\nedge 2 2 0\n";

#[test]
fn eval_routes_agree_on_the_triangle() {
    let dir = scratch("eval");
    let g = write(&dir, "c3.g", TRIANGLE);
    let v = json(&run(&["eval", &g, "--q", "3", "--v", "-1"]));
    assert_eq!(v["value"], "6");
    assert_eq!(v["agree"], true);
    let routes: Vec<&str> = v["records"].as_array().unwrap().iter().map(|r| r["route"].as_str().unwrap()).collect();
    assert_eq!(routes, ["expansion", "delcon", "coloring"]);
    // Non-integer q has no coloring route; it is reported as skipped.
    let v = json(&run(&["eval", &g, "--q", "3/4", "--v", "-1/2"]));
    assert_eq!(v["agree"], true);
    assert_eq!(v["skipped"].as_array().unwrap().len(), 1);
}

#[test]
fn eval_finds_the_bundle_zero() {
    let dir = scratch("bundle");
    let g = write(&dir, "k2.g", "graph 2\nedge 0 0 1\nedge 1 0 1\n");
    let v = json(&run(&["eval", &g, "--q", "3/4", "--v", "-1/2", "--route", "delcon"]));
    assert_eq!(v["value"], "0");
}

#[test]
fn poly_kinds() {
    let dir = scratch("poly");
    let g = write(&dir, "c3.g", TRIANGLE);
    let v = json(&run(&["poly", &g, "--chromatic"]));
    assert_eq!(v["coefficients"], serde_json::json!(["0", "2", "-3", "1"]));
    let v = json(&run(&["poly", &g, "--flow"]));
    assert_eq!(v["coefficients"], serde_json::json!(["-1", "1"]));
    assert!(!run(&["poly", &g]).status.success());
    assert!(!run(&["poly", &g, "--flow", "--chromatic"]).status.success());
}

#[test]
fn weight_maps() {
    let v = json(&run(&["map", "diamond", "--q", "32/27", "--v1", "-8/9"]));
    assert_eq!(v["value"], "-8/9");
    let v = json(&run(&["map", "ser", "--q", "32/27", "--v1", "-8/9", "--v2", "-8/9"]));
    assert_eq!(v["value"], "-4/3");
    let v = json(&run(&["map", "par", "--q", "1", "--v1", "-1/2", "--v2", "-1/2"]));
    assert_eq!(v["value"], "-3/4");
    let v = json(&run(&["map", "diamond", "--q", "2", "--v1", "-1"]));
    assert_eq!(v["value"], "inf");
}

#[test]
fn regions_output_is_stable() {
    let args = ["regions", "--q-grid", "1/8", "32/27", "1/8"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("q,-q/2,-3q/4,"));
    assert_eq!(text.lines().count(), 1 + 9);
}

#[test]
fn certify_exit_codes() {
    let args = ["certify", "--suite", "blocks", "--bounds", "quick", "--seed", "4"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let mut poisoned = args.to_vec();
    poisoned.push("--poison");
    let p = run(&poisoned);
    assert_eq!(p.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&p.stdout).unwrap();
    assert!(report.to_string().contains("violations"));
    assert_eq!(run(&["certify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn hunt_checks_its_region() {
    let bad = run(&["hunt", "--region", "e", "--q", "1/2", "--v", "-3"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("q > 32/27"));
    let v = json(&run(&["hunt", "--region", "e", "--q", "3/2", "--v", "-3", "--max-edges", "4"]));
    assert_eq!(v["region"], "e");
    assert!(v["findings"].as_array().unwrap().iter().all(|f| f["n"].as_u64().unwrap() >= 3));
}

#[test]
fn blocks_and_matroid_queries() {
    let dir = scratch("blocks");
    let g = write(&dir, "paw.g", "graph 4\nedge 0 0 1\nedge 1 1 2\nedge 2 2 0\nedge 3 2 3\n");
    let v = json(&run(&["blocks", &g]));
    assert_eq!((v["n"].as_u64(), v["c"].as_u64(), v["b"].as_u64()), (Some(4), Some(1), Some(2)));
    assert_eq!(v["bridges"], serde_json::json!([3]));
    let m = write(&dir, "u24.m", "uniform 2 4\n");
    let v = json(&run(&["matroid", &m, "rank", "--set", "0,1,2"]));
    assert_eq!(v["rank"], 2);
    let v = json(&run(&["matroid", &m, "connectivity"]));
    assert_eq!(v["two_connected"], true);
    write(&dir, "c3.g", TRIANGLE);
    let m = write(&dir, "c3.m", "graphic c3.g\n");
    let v = json(&run(&["matroid", &m, "dual"]));
    // Bases of the dual of C3's cycle matroid are the single edges.
    assert_eq!(v["bases"].as_array().unwrap().len(), 3);
}

#[test]
fn malformed_input_is_an_error() {
    let dir = scratch("bad");
    let g = write(&dir, "bad.g", "graph 2\nedge 0 0 5\n");
    let out = run(&["eval", &g, "--q", "2", "--v", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}
