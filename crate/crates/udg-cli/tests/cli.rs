use std::path::PathBuf;
use std::process::{Command, Output};

use udg::graph::UnitDistanceGraph;
use udg::{build, ConstructionId};

fn udg_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_udg"))
}

fn run(args: &[&str]) -> Output {
    udg_bin()
        .args(args)
        .output()
        .expect("binary should launch")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("udg-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn build_h_writes_graph_json_to_stdout() {
    let out = run(&["build", "H"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let g = UnitDistanceGraph::from_json(&stdout(&out)).expect("valid graph JSON");
    assert_eq!(g.vertex_count(), 7);
    assert_eq!(g.edge_count(), 12);
}

#[test]
fn build_unknown_name_is_a_usage_error() {
    let out = run(&["build", "X"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("valid names"), "stderr: {err}");
    assert!(err.contains("MOSER"), "stderr: {err}");
}

#[test]
fn build_l_to_file_round_trips() {
    let path = temp_path("l.json");
    let out = run(&["build", "L", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(&path).expect("file written");
    let g = UnitDistanceGraph::from_json(&text).expect("valid graph JSON");
    assert_eq!(g.vertex_count(), 121);
    assert_eq!(g.h_copies().len(), 52);
    let _ = std::fs::remove_file(&path);
}

#[test]
fn stats_reports_feature_counts() {
    let out = run(&["stats", "MOSER"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("JSON stats");
    assert_eq!(v["vertices"], 7);
    assert_eq!(v["edges"], 11);
    assert_eq!(v["spindles"], 1);
}

#[test]
fn check_h_classes_passes() {
    let out = run(&["check", "h-classes"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("JSON report");
    assert_eq!(v["pass"], true);
    assert_eq!(v["detail"]["classes"], 4);
    assert_eq!(v["detail"]["with_triple"], 2);
    assert!(stderr(&out).contains("PASS"));
}

#[test]
fn check_unknown_property_is_a_usage_error() {
    let out = run(&["check", "q-classes"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("valid properties"));
}

#[test]
fn check_m_property_fails_on_the_unreinforced_graph() {
    let path = temp_path("w.json");
    std::fs::write(&path, build(ConstructionId::W).to_json()).unwrap();
    let out = run(&["check", "m-property", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("JSON report");
    assert_eq!(v["pass"], false);
    assert!(stderr(&out).contains("FAIL"));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn check_rejects_corrupt_graph_files_cleanly() {
    let path = temp_path("corrupt.json");
    std::fs::write(&path, "{\"vertices\": []").unwrap();
    let out = run(&["check", "l-property", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error"));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn cnf_output_is_byte_reproducible() {
    let first = run(&["cnf", "H", "--k", "4"]);
    let second = run(&["cnf", "H", "--k", "4"]);
    assert!(first.status.success());
    let text = stdout(&first);
    assert_eq!(text, stdout(&second));
    assert!(text.starts_with("p cnf 28 55\n"), "got: {}", &text[..20]);
}

#[test]
fn cnf_applies_constraints_from_file() {
    let path = temp_path("constraints.json");
    std::fs::write(&path, r#"[{"fix_colour":{"vertex":0,"colour":1}}]"#).unwrap();
    let out = run(&[
        "cnf",
        "H",
        "--k",
        "4",
        "--constraints",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).starts_with("p cnf 28 56\n"));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn render_h_draws_every_vertex_and_edge() {
    let out = run(&["render", "H"]);
    assert!(out.status.success());
    let svg = stdout(&out);
    assert_eq!(svg.matches("<circle").count(), 7);
    assert_eq!(svg.matches("<line").count(), 12);
    assert!(svg.starts_with("<svg "));
    let again = run(&["render", "H"]);
    assert_eq!(svg, stdout(&again));
}

#[test]
fn render_rejects_an_improper_colouring() {
    let path = temp_path("bad-colouring.json");
    std::fs::write(&path, "[1,1,1,1,1,1,1]").unwrap();
    let out = run(&["render", "H", "--colouring", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("monochromatic"));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn render_fills_vertices_with_palette_colours() {
    let path = temp_path("colouring.json");
    std::fs::write(&path, "[3,2,2,1,3,3,2]").unwrap();
    let out = run(&["render", "H", "--colouring", path.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let svg = stdout(&out);
    assert!(!svg.contains("fill=\"#ccc\""));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn verify_all_fast_subset_passes() {
    let out = run(&["verify-all", "--skip-slow"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("JSON report");
    assert_eq!(v["pass"], true);
    let names: Vec<&str> = v["sections"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        ["fixtures", "h-classes", "j-linking", "k-diagonals", "l-property"]
    );
    assert!(v["skipped"]
        .as_array()
        .unwrap()
        .iter()
        .any(|s| s == "m-property"));
}
