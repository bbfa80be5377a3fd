use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_dalembert-reduce");

const RADIAL: &str = "y: x0\nz: sqrt(x1^2 + x2^2 + x3^2)\nrhat: 1\nqhat: 0\nshat: -1\nRhat: 0\nShat: -2/z\n";

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn reduce_writes_a_json_report() {
    let dir = TempDir::new().unwrap();
    let problem = write(&dir, "radial.txt", RADIAL);
    let out = dir.path().join("report.json");
    let o = run(&["reduce", "--problem", &problem, "--frame", "boosted", "--seed", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let j = json(&out);
    assert_eq!(j["meta"]["seed"], 5);
    assert_eq!(j["meta"]["n"], 3);
    assert_eq!(j["classification"]["type"], "hyperbolic");
    assert_eq!(j["reduced"]["coefficients"]["phi_z"], "-2/z");
}

#[test]
fn failed_check_exits_one() {
    let dir = TempDir::new().unwrap();
    let problem = write(&dir, "bad.txt", &RADIAL.replace("shat: -1", "shat: 1"));
    assert_eq!(run(&["reduce", "--problem", &problem]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.txt", "");
    let o = run(&["reduce", "--problem", &empty]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing required key: y"));
    let unknown = write(&dir, "unknown.txt", "y: x0\nzz: x3\n");
    let o = run(&["reduce", "--problem", &unknown]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(run(&["reduce", "--problem", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(run(&["check-compat", "--case", "spherical", "--problem", &empty]).status.code(), Some(2));
    assert_eq!(run(&["lemmas", "--problem", &empty, "--kmax", "0"]).status.code(), Some(2));
}

#[test]
fn compat_and_lemmas_on_the_light_cone() {
    let dir = TempDir::new().unwrap();
    let compat = write(&dir, "t2.txt", "h: 2\nPhi: (w - v)^2\nPsi: (w - v)^2\nV: 4/(w - v)\nW: -4/(w - v)\n");
    assert_eq!(run(&["check-compat", "--case", "hyperbolic", "--problem", &compat]).status.code(), Some(0));
    let lemmas = write(
        &dir,
        "lemmas.txt",
        "v: x0 - sqrt(x1^2 + x2^2 + x3^2)\nw: x0 + sqrt(x1^2 + x2^2 + x3^2)\nh: 2\nPhi: (w - v)^2\nPsi: (w - v)^2\n",
    );
    let o = run(&["lemmas", "--problem", &lemmas, "--kmax", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let first = write(&dir, "fo.txt", "V: v\nW: 0\n");
    let o = run(&["check-compat", "--case", "first-order", "--problem", &first]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn catalog_and_lift() {
    let o = run(&["catalog", "run", "--frame", "boosted", "--phi", "cos(u)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("4/4 entries pass"));
    let dir = TempDir::new().unwrap();
    let lift = write(&dir, "lift.txt", "y: x0\nz: x3\nrhat: 1\nqhat: 0\nshat: -1\nRhat: 0\nShat: 0\nphi: sin(y + z)\n");
    assert_eq!(run(&["lift", "--problem", &lift]).status.code(), Some(0));
}

#[test]
fn same_seed_same_bytes() {
    let dir = TempDir::new().unwrap();
    let problem = write(&dir, "radial.txt", RADIAL);
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("r{i}.json"))).collect();
    for p in &paths {
        run(&["reduce", "--problem", &problem, "--seed", "42", "--out", p.to_str().unwrap()]);
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
}
