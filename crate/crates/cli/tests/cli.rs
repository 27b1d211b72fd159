use std::process::{Command, Output};

use serde_json::Value;

fn interlace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_interlace")).args(args).env_remove("INTERLACE_OUT_DIR").output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr_error(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    v["error"].clone()
}

#[test]
fn gap_of_one_by_one_is_one_half() {
    let v = stdout_json(&interlace(&["gue-gap", "--n", "1", "--s", "0"]));
    assert!((v["results"]["cdf"].as_f64().unwrap() - 0.5).abs() < 1e-8);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["spec"]["command"], "gue-gap");
}

#[test]
fn aztec_svg_covers_the_diamond() {
    let out = interlace(&["aztec-sample", "--order", "10", "--seed", "1", "--format", "svg"]);
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
    assert!(svg.contains("width=\"420\"") && svg.contains("height=\"420\""));
    assert!(svg.contains("<!-- seed: 1 -->"));
    assert_eq!(svg.matches("<rect class=").count(), 110);
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn identical_arguments_give_identical_bytes() {
    let args = ["tasep-sim", "--n", "6", "--t", "3", "--replicas", "40", "--seed", "19"];
    let a = interlace(&args);
    let b = interlace(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = interlace(&["tasep-sim", "--n", "6", "--t", "3", "--replicas", "40", "--seed", "20"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn csv_has_a_header_and_a_seed_column() {
    let out = interlace(&["minors", "--n", "3", "--replicas", "2", "--format", "csv", "--seed", "5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("replica,level,index,eigenvalue,seed"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2 * 6);
    assert!(rows.iter().all(|r| r.ends_with(",5")));
}

#[test]
fn serial_and_parallel_verify_agree() {
    let par = interlace(&["verify", "aztec-uniform", "--replicas", "2000"]);
    let ser = interlace(&["verify", "aztec-uniform", "--replicas", "2000", "--serial"]);
    let (a, b) = (stdout_json(&par), stdout_json(&ser));
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["results"]["reports"][0]["verdict"], "pass");
}

#[test]
fn underpowered_suite_is_inconclusive_and_succeeds() {
    let v = stdout_json(&interlace(&["verify", "tasep-green", "growth-marginal", "--replicas", "10"]));
    for r in v["results"]["reports"].as_array().unwrap() {
        assert_eq!(r["verdict"], "inconclusive");
    }
}

#[test]
fn failures_exit_nonzero_with_json_diagnostics() {
    let out = interlace(&["verify", "no-such-comparison", "--replicas", "10"]);
    assert_eq!(out.status.code(), Some(1));

    let out = interlace(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_error(&out)["kind"], "usage");

    let out = interlace(&["tasep-joint", "--n", "5", "--t", "2", "--sigma", "4,2", "--thresholds", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_error(&out)["kind"], "invalid-parameter");

    let out = interlace(&["growth-sim", "--t", "1", "--replicas", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn joint_query_accepts_negative_thresholds() {
    let v =
        stdout_json(&interlace(&["tasep-joint", "--n", "5", "--t", "2", "--sigma", "2,4", "--thresholds", "-1,-3"]));
    let p = v["results"]["probability"].as_f64().unwrap();
    assert!(p > 0.0 && p < 1.0);
}

#[test]
fn out_dir_variable_and_render_round_trip() {
    let dir = std::env::temp_dir().join(format!("interlace-cli-{}", std::process::id()));
    let status = Command::new(env!("CARGO_BIN_EXE_interlace"))
        .args(["growth-sim", "--n", "4", "--t", "2", "--seed", "3"])
        .env("INTERLACE_OUT_DIR", &dir)
        .status()
        .unwrap();
    assert!(status.success());
    let saved = dir.join("growth-sim-3.json");
    assert!(saved.exists());
    let out = interlace(&["render", "--input", saved.to_str().unwrap()]);
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.contains("<!-- seed: 3 -->"));
    assert!(svg.matches("<polygon class=").count() > 0);
    let direct = interlace(&["growth-sim", "--n", "4", "--t", "2", "--seed", "3", "--format", "svg"]);
    assert_eq!(String::from_utf8(direct.stdout).unwrap(), svg);
    std::fs::remove_dir_all(&dir).unwrap();
}
