use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_borel-hilb"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn json(args: &[&str], stdin: Option<&str>) -> Value {
    let out = run(args, stdin);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const SEVEN: &str = r#"{"n":2,"generators":[[3,0,0],[2,1,0],[1,2,0],[0,3,0],[2,0,1]]}"#;

#[test]
fn gotzmann_numbers() {
    let v = json(&["gotzmann", "--poly", "3"], None);
    assert_eq!(v["macaulay"], serde_json::json!([3]));
    assert_eq!(v["gotzmann"], 3);
    let v = json(&["gotzmann", "--poly", "1,2"], None);
    assert_eq!(v["macaulay"], serde_json::json!([2, 2]));
    assert_eq!(v["gotzmann"], 2);
    let out = run(&["gotzmann", "--poly", "0"], None);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not a Hilbert polynomial"));
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn borel_points() {
    let v = json(&["enumerate-borel", "--poly", "3", "--n", "2"], None);
    assert_eq!(v["count"], 2);
    let sats: Vec<Value> = v["points"].as_array().unwrap().iter().map(|p| p["saturation"]["generators"].clone()).collect();
    assert!(sats.contains(&serde_json::json!([[1, 0, 0], [0, 3, 0]])));
    assert!(sats.contains(&serde_json::json!([[2, 0, 0], [1, 1, 0], [0, 2, 0]])));
    assert_eq!(json(&["enumerate-borel", "--poly", "1", "--n", "2"], None)["count"], 1);
    assert_eq!(json(&["enumerate-borel", "--poly", "1,2", "--n", "2"], None)["count"], 1);
}

#[test]
fn eigenvectors_from_stdin() {
    let v = json(&["eigenvectors", "--ideal", "-"], Some(SEVEN));
    assert_eq!(v["count"], 3);
    let families = v["families"].as_array().unwrap();
    let bf2 = families.iter().find(|f| f["K"] == serde_json::json!([0, -1, 1])).unwrap();
    let entries = bf2["vector"]["entries"].as_array().unwrap();
    let coef = |a: Value| entries.iter().find(|e| e["A"] == a).unwrap()["c"].clone();
    assert_eq!(coef(serde_json::json!([0, 3, 0])), "1");
    assert_eq!(coef(serde_json::json!([1, 2, 0])), "2/3");

    let out = run(&["eigenvectors", "--ideal", "-"], Some(r#"{"n":2,"generators":[[0,2,0]]}"#));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not Borel-fixed"));
}

#[test]
fn tangent_check() {
    let vector = r#"{"filter":{"m":3,"n":2,"members":[[3,0,0],[2,1,0],[2,0,1],[1,2,0],[0,3,0]]},
        "entries":[{"A":[1,2,0],"B":[1,1,1],"c":"2"},{"A":[0,3,0],"B":[0,2,1],"c":"3"}]}"#;
    let v = json(&["tangent-check", "--tangent", "-"], Some(vector));
    assert_eq!(v["is_tangent"], true);
    assert_eq!(v["is_borel_eigenvector"], true);
    assert_eq!(v["K"], serde_json::json!([0, -1, 1]));
    let off = vector.replace(r#""c":"3""#, r#""c":"2""#);
    assert_eq!(json(&["tangent-check", "--tangent", "-"], Some(&off))["is_borel_eigenvector"], false);
}

#[test]
fn degenerate_points_and_conic() {
    let dir = std::env::temp_dir().join(format!("borel-hilb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let points = dir.join("points.txt");
    std::fs::write(&points, "# three points\n1 2 3\n4 -1 2\n0 5 1\n").unwrap();
    let p = points.to_str().unwrap();
    let v = json(&["degenerate", "--points", p, "--seed", "3"], None);
    assert_eq!(v["borel_fixed_limit"], true);
    assert_eq!(v["borel_eigenvector_tangent"], true);
    assert_eq!(v["tangent_verified"], true);

    let again = run(&["degenerate", "--points", p, "--seed", "3"], None);
    let first = run(&["degenerate", "--points", p, "--seed", "3"], None);
    assert_eq!(again.stdout, first.stdout);

    let out = run(&["degenerate", "--points", p, "--weight", "1,1,0"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("weight does not distinguish"));

    let conic = r#"{"n":2,"generators":["x0^2 + 2*x1^2 - x0*x2 + 3*x1*x2 + x2^2"]}"#;
    let v = json(&["degenerate", "--ideal", "-", "--poly", "1,2"], Some(conic));
    assert_eq!(v["K"], serde_json::json!([-1, 1, 0]));
    assert_eq!(v["limit"]["members"], serde_json::json!([[2, 0, 0]]));

    let fan = json(&["fan", "--ideal", "-", "--poly", "1,2", "--trials", "10", "--seed", "1"], Some(conic));
    assert_eq!(fan["records"].as_array().unwrap().len(), 10);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn flip_and_poset() {
    let out = run(&["flip", "--monomial", "x0^2*x1^3*x3", "--m", "6", "--n", "3", "--output", "text"], None);
    assert_eq!(stdout(&out).trim(), "y1^2*y4");
    let out = run(&["flip", "--monomial", "x0^2", "--m", "3", "--n", "3"], None);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["poset", "--m", "2", "--n", "2", "--dot"], None);
    let dot = stdout(&out);
    assert_eq!(dot.lines().filter(|l| l.contains("[shape")).count(), 6);
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 6);
    let v = json(&["poset", "--m", "2", "--n", "2"], None);
    assert_eq!(v["size"], 6);
}

#[test]
fn internal_errors_exit_one() {
    let out = run(&["eigenvectors", "--ideal", "/nonexistent/ideal.json"], None);
    assert_eq!(out.status.code(), Some(1));
}
