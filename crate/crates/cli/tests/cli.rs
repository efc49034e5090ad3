use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ginv::fixtures;
use ginv::io::{parse_matrix, write_matrix};
use ginv::Mat;
use serde_json::Value;
use tempfile::TempDir;

fn ginv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ginv")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, m: &Mat) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, write_matrix(m)).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn entry(report: &Value, name: &str) -> Mat {
    let e = report["inverses"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == name)
        .unwrap_or_else(|| panic!("no {name}"));
    parse_matrix(&e["matrix"].to_string()).unwrap()
}

fn max_abs_diff(a: &Mat, b: &Mat) -> f64 {
    a.to_row_major()
        .iter()
        .zip(b.to_row_major())
        .map(|(p, q)| (p - q).norm())
        .fold(0.0, f64::max)
}

#[test]
fn compute_fixture_with_supplied_x() {
    let dir = TempDir::new().unwrap();
    let f = fixtures::wmpd_not_wcep();
    let a = write(&dir, "a.json", &f.a);
    let x = write(&dir, "x.json", &f.x);
    let out = ginv(&["compute", s(&a), "--x", s(&x), "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["x"]["supplied"], true);
    assert!(max_abs_diff(&entry(&r, "weak_cmp"), f.expected("weak_cmp").unwrap()) <= 1e-10);
    assert!(max_abs_diff(&entry(&r, "moore_penrose"), &f.pinv) <= 1e-10);
}

#[test]
fn compute_identity() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "i.json", &Mat::identity(3));
    let out = ginv(&["compute", s(&a), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    for e in r["inverses"].as_array().unwrap() {
        let m = parse_matrix(&e["matrix"].to_string()).unwrap();
        assert!(max_abs_diff(&m, &Mat::identity(3)) <= 1e-12, "{}", e["name"]);
    }
}

#[test]
fn compute_core_ep_fixture_and_out_file() {
    let dir = TempDir::new().unwrap();
    let f = fixtures::core_ep_not_wcep();
    let a = write(&dir, "a.json", &f.a);
    let out_path = dir.path().join("report.json");
    let out = ginv(&["compute", s(&a), "--json", "--out", s(&out_path)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(r["fingerprint"]["index"], 2);
    assert_eq!(r["classes"]["core_ep"], true);
    assert!(max_abs_diff(&entry(&r, "drazin"), f.expected("drazin").unwrap()) <= 1e-10);
}

#[test]
fn compute_text_summary() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &fixtures::wmpd_not_wcep().a);
    let out = ginv(&["compute", s(&a)]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("4x4 rank 2 index 2"));
    assert!(text.contains("weak_cmp"));
}

#[test]
fn rejected_member_exits_2() {
    let dir = TempDir::new().unwrap();
    let f = fixtures::wmpd_not_wcep();
    let a = write(&dir, "a.json", &f.a);
    let bad = write(&dir, "p.json", &f.pinv);
    let out = ginv(&["compute", s(&a), "--x", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("minimal rank"));
}

#[test]
fn input_errors_exit_1() {
    let dir = TempDir::new().unwrap();
    let garbage = dir.path().join("g.json");
    std::fs::write(&garbage, "{not json").unwrap();
    assert_eq!(ginv(&["compute", s(&garbage)]).status.code(), Some(1));
    assert_eq!(ginv(&["compute", "/nonexistent/a.json"]).status.code(), Some(1));
    let rect = write(&dir, "r.json", &Mat::zeros(2, 3));
    assert_eq!(ginv(&["compute", s(&rect)]).status.code(), Some(1));
    let short = dir.path().join("s.json");
    std::fs::write(&short, r#"{"rows":2,"cols":2,"data":[[1,0]]}"#).unwrap();
    assert_eq!(ginv(&["classify", s(&short)]).status.code(), Some(1));
    let i = write(&dir, "i.json", &Mat::identity(2));
    assert_eq!(ginv(&["compute", s(&i), "--tol-eq=-1"]).status.code(), Some(1));
    assert_eq!(ginv(&["compute", s(&i), "--tol-eq", "-1"]).status.code(), Some(1));
    assert_eq!(ginv(&["compute"]).status.code(), Some(1));
    assert_eq!(ginv(&["verify", "nope"]).status.code(), Some(1));
}

#[test]
fn bare_real_array_is_accepted() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("a.json");
    std::fs::write(&p, "[[2, 0], [0, 0]]").unwrap();
    let out = ginv(&["compute", s(&p), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["fingerprint"]["rank"], 1);
}

#[test]
fn classify_fixtures() {
    let dir = TempDir::new().unwrap();
    let f = fixtures::core_ep_not_wcep();
    let a = write(&dir, "a.json", &f.a);
    let x = write(&dir, "x.json", &f.x);
    let out = ginv(&["classify", s(&a), "--x", s(&x), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["classes"]["core_ep"], true);
    assert_eq!(r["checks"]["wcep"]["lhs"], false);
    assert_eq!(r["checks"]["wcep"]["rhs"], false);
}

#[test]
fn verify_generated_suites() {
    let out = ginv(&["verify", "all", "--n", "100", "--size", "6", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let reports = json(&out);
    assert_eq!(reports.as_array().unwrap().len(), 10);
    for r in reports.as_array().unwrap() {
        assert_eq!(r["trials"], 100);
        assert!(r["failures"].as_array().unwrap().is_empty());
    }
}

#[test]
fn verify_zero_trials_is_vacuous() {
    let out = ginv(&["verify", "main", "--n", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("0/0"));
}

#[test]
fn verify_injected_fixture() {
    let out = ginv(&["verify", "wcep", "--fixture", "wmpd-not-wcep", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r[0]["passed"], true);
    assert_eq!(r[0]["detail"]["wcep"]["lhs"], false);
    assert_eq!(r[0]["detail"]["wcep"]["rhs"], false);

    let dir = TempDir::new().unwrap();
    let f = fixtures::wmpd_not_wcep();
    let a = write(&dir, "a.json", &f.a);
    let x = write(&dir, "x.json", &f.x);
    let out = ginv(&["verify", "all", "--a", s(&a), "--x", s(&x), "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out).as_array().unwrap().len(), 10);
}

#[test]
fn verify_injected_non_member_exits_2() {
    let dir = TempDir::new().unwrap();
    let f = fixtures::wmpd_not_wcep();
    let a = write(&dir, "a.json", &f.a);
    let p = write(&dir, "p.json", &f.pinv);
    let out = ginv(&["verify", "wcep", "--a", s(&a), "--x", s(&p)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

fn sampled(out: &Output) -> Vec<(Mat, Value)> {
    json(out)
        .as_array()
        .unwrap()
        .iter()
        .map(|m| (parse_matrix(&m["matrix"].to_string()).unwrap(), m["certificate"].clone()))
        .collect()
}

#[test]
fn sample_examples() {
    let dir = TempDir::new().unwrap();
    let i = write(&dir, "i.json", &Mat::identity(3));
    let out = ginv(&["sample", s(&i), "--seed", "99"]);
    assert_eq!(out.status.code(), Some(0));
    let v = sampled(&out);
    assert_eq!(v.len(), 1);
    assert!(max_abs_diff(&v[0].0, &Mat::identity(3)) <= 1e-12);

    let z = write(&dir, "z.json", &Mat::zeros(3, 3));
    let v = sampled(&ginv(&["sample", s(&z), "--side", "right"]));
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].0.frobenius_norm(), 0.0);

    let a = write(&dir, "a.json", &fixtures::wmpd_not_wcep().a);
    let v = sampled(&ginv(&["sample", s(&a), "--count", "3", "--seed", "5"]));
    assert_eq!(v.len(), 3);
    for (_, cert) in &v {
        assert_eq!(cert["valid"], true);
        assert_eq!(cert["side"], "left");
    }
    assert!(max_abs_diff(&v[0].0, &v[1].0) > 1e-6);
}
