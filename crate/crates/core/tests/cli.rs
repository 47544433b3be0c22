use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn tracediv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tracediv"))
        .args(args)
        .env_remove("TRACEDIV_WORKERS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = tracediv(&all);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn simplex_with_oracle_passes() {
    let out = tracediv(&["valuation", "--matrix", &data("simplex.toml"), "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&["valuation", "--matrix", &data("simplex.toml"), "--oracle"]);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["tower"]["order"], 8);
}

#[test]
fn bad_input_exits_two_with_position() {
    let out = tracediv(&["valuation", "--matrix", &data("bad_entry.toml")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 6, column 17"), "{err}");
    let out = tracediv(&["valuation", "--matrix", "/nonexistent/matrix.toml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn abelian_cross_checks() {
    let v = json(&["abelian", "--spec", &data("cyclic_31.toml"), "--oracle", "--mceliece"]);
    assert_eq!(v["verdict"], "pass");
    let v = json(&["abelian", "--spec", &data("abelian_3x5.toml"), "--oracle", "--expand-cosets"]);
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn artin_schreier_modes() {
    let v = json(&["artin-schreier", "--poly", &data("quadric_f4.toml")]);
    assert_eq!(v["verdict"], "pass");
    let out = tracediv(&["artin-schreier", "--search-extremal", "2", "2", "--p", "2", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&["artin-schreier", "--search-extremal", "3", "1", "--p", "2", "--m", "2", "--budget", "1"]);
    assert_eq!(v["verdict"], "inconclusive");
    let v = json(&["artin-schreier", "--program", "1,2", "--k", "2", "--p", "2", "--m", "2"]);
    assert!(v["results"].is_object());
}

#[test]
fn verify_suite_rows_and_csv() {
    let out = tracediv(&["--format", "csv", "verify", "--stickelberger", "--q", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.records().count(), 8);
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let args = ["--seed", "7", "verify", "--oracle-equivalence", "--cases", "40"];
    let strip = |mut v: serde_json::Value| {
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let a = strip(json(&args));
    let mut with_workers = vec!["--workers", "3"];
    with_workers.extend_from_slice(&args);
    let mut b = strip(json(&with_workers));
    assert_eq!(a["seed"], 7);
    b.as_object_mut().unwrap().insert("workers".into(), a["workers"].clone());
    assert_eq!(a, b);
}
