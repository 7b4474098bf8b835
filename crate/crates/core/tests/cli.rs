use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("problems").join(name)
}

fn dfan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dfan")).args(args).output().expect("spawn dfan")
}

fn dfan_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dfan"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn dfan");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn reduce_reproduces_the_series_basis() {
    let series = problem("series.dfan");
    let v = json(&dfan(&["reduce", series.to_str().unwrap(), "--cap", "3"]));
    assert_eq!(v["verb"], "reduce");
    assert_eq!(v["result"]["basis"][0], "x2 + x1/y + x1^2/y^2 + x1^3/y^3");
    assert_eq!(v["result"]["h"], "y");
    assert_eq!(v["result"]["cap_certified"], 3);
}

#[test]
fn fan_of_a_single_derivation() {
    let v = json(&dfan(&["fan", problem("derivation.dfan").to_str().unwrap()]));
    let r = &v["result"];
    assert_eq!(r["cap_certified"], true);
    assert_eq!(r["cell_count"].as_u64().unwrap() as usize, r["cells"].as_array().unwrap().len());
    assert!(r["cells"].as_array().unwrap().iter().all(|c| c["basis"][0] == "dx1"));
}

#[test]
fn specialize_substitutes_parameters() {
    let v = json(&dfan(&["specialize", problem("series.dfan").to_str().unwrap(), "--at", "y=2"]));
    assert_eq!(v["result"]["ideal"][0], "2*x2 + x1 - x1*x2");
}

#[test]
fn certify_airy() {
    let v = json(&dfan(&["certify", problem("airy.dfan").to_str().unwrap()]));
    let r = &v["result"];
    assert_eq!(r["passed"], true);
    assert_eq!(r["h"], "y");
    assert_eq!(r["exceptional"][0]["at"][0], "0");
}

#[test]
fn compfan_airy_strata() {
    let v = json(&dfan(&["compfan", problem("airy.dfan").to_str().unwrap()]));
    let strata = v["result"]["strata"].as_array().unwrap();
    assert_eq!(strata.len(), 2);
    assert!(strata.iter().all(|s| s["verified"] == true));
}

#[test]
fn division_from_stdin() {
    let v = json(&dfan_stdin(&["div", "-"], "vars x1\nideal x1*dx1^2\nideal dx1\n"));
    assert_eq!(v["result"]["quotients"][0], "x1*dx1");
    assert_eq!(v["result"]["remainder"], "0");
}

#[test]
fn oracle_fan_at_a_point() {
    let v = json(&dfan(&["oracle-fan", problem("airy.dfan").to_str().unwrap(), "--at", "y=1", "--samples", "20"]));
    let groups = v["result"]["groups"].as_array().unwrap();
    assert!(!groups.is_empty());
}

#[test]
fn output_is_deterministic() {
    let series = problem("series.dfan");
    let a = dfan(&["fan", series.to_str().unwrap(), "--jobs", "1"]);
    let b = dfan(&["fan", series.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn syntax_errors_exit_2_with_position() {
    let out = dfan_stdin(&["sb", "-"], "vars x\nideal x + q\n");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("`q`") && err.contains("2:11"), "{}", err);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(dfan(&["sb", "/nonexistent/problem.dfan"]).status.code(), Some(2));
    let series = problem("series.dfan");
    assert_eq!(dfan(&["specialize", series.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(dfan_stdin(&["div", "-"], "vars x\nideal x\n").status.code(), Some(2));
}

#[test]
fn computation_errors_exit_1() {
    let out = dfan_stdin(&["gensb", "-"], "params y\nvars x\nq y\nideal y*dx\n");
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
}
