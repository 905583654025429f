use std::path::Path;
use std::process::{Command, Output};

fn ggk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ggk")).args(args).env_remove("GGK_MAX_SECONDS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn triangle_is_strongly_polynomial() {
    let o = ggk(&["charideal", "--cycle", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("verdict: StronglyPolynomial"), "{}", text);
}

#[test]
fn json_output_parses() {
    let o = ggk(&["--json", "charideal", "--cycle", "4", "--twin"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["char_ideal"]["generators"].as_array().map(|a| a.len()), Some(1));
}

#[test]
fn irregular_graph_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p3.txt");
    std::fs::write(&path, "3\n1 2\n2 3\n").unwrap();
    let o = ggk(&["charideal", "--graph", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not regular"));
    assert_eq!(ggk(&["charideal", "--graph", "/nonexistent/graph"]).status.code(), Some(1));
}

#[test]
fn caps_exit_with_two() {
    let o = ggk(&["--max-pairs", "1", "charideal", "--cycle", "4", "--twin"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(ggk(&["cycles", "--n", "6"]).status.code(), Some(2));
}

#[test]
fn verify_reports_membership() {
    let ok = ggk(&["verify", "--poly", "x^2*y^2+x^2+y^2-x*y+2", "--cycle", "3"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = ggk(&["verify", "--poly", "x^2*y^2+x^2+y^2+x*y+2", "--cycle", "4"]);
    assert_eq!(bad.status.code(), Some(3));
    let degenerate = ggk(&["verify", "--poly", "x*y", "--cycle", "3"]);
    assert!(stdout(&degenerate).contains("standardness"));
}

#[test]
fn out_file_matches_stdout_and_runs_repeat() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c3.json");
    let args = ["--json", "--out", out.to_str().unwrap(), "charideal", "--cycle", "3"];
    let a = ggk(&args);
    let b = ggk(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let written = std::fs::read_to_string(&out).unwrap();
    let lhs: serde_json::Value = serde_json::from_str(&written).unwrap();
    let rhs: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(lhs, rhs);
    let leftovers = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 1);
    assert!(Path::new(&out).exists());
}

#[test]
fn explore_triangle() {
    let o = ggk(&["--json", "explore", "--poly", "x^2*y^2+x^2+y^2-x*y+2", "--seed", "0", "--target-cycle", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["vertices"].as_array().map(|a| a.len()), Some(3));
    assert_eq!(v["match"], serde_json::json!(true));
    let dot = ggk(&["explore", "--poly", "x+y", "--seed", "5", "--format", "dot"]);
    assert!(stdout(&dot).starts_with("graph"));
}

#[test]
fn sampling_is_reproducible() {
    let args = ["explore", "--poly", "x^2*y^2+x^2+y^2-x*y+2", "--target-cycle", "3", "--seeds", "10", "--rng-seed", "4"];
    let a = ggk(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, ggk(&args).stdout);
}

#[test]
fn selftest_passes() {
    assert_eq!(ggk(&["selftest"]).status.code(), Some(0));
}
