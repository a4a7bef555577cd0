use std::process::{Command, Output};

use serde_json::Value;

fn superlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superlie")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_exit_codes() {
    let out = superlie(&["verify", "ksle5-10", "+"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    assert_eq!(rep["failed"], 0);
    assert_eq!(rep["exact"], rep["rows"].as_array().unwrap().len());

    assert_eq!(superlie(&["verify", "mb4-5", "-"]).status.code(), Some(0));
    assert_eq!(superlie(&["verify", "nosuch", "+"]).status.code(), Some(2));
    assert_eq!(superlie(&["verify", "ksle5-10", "sideways"]).status.code(), Some(2));
    // One weight row of the as table cannot hold as printed.
    let out = superlie(&["verify", "as", "weights"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["failed"], 1);
}

#[test]
fn missing_data_directory_is_a_config_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_superlie"))
        .args(["list"])
        .env("SUPERLIE_DATA", "/nonexistent/superlie-data")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn prolong_reports() {
    let out = superlie(&["prolong", "vle4-3", "--r", "0", "--max", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    assert_eq!((rep["negative"]["even"].as_u64(), rep["negative"]["odd"].as_u64()), (Some(4), Some(3)));
    assert!(rep["dims"].as_array().unwrap().iter().all(|d| d["degree"].as_i64().unwrap() <= 0));

    let rep = json(&superlie(&["prolong", "kas", "--r", "0", "--max", "3"]));
    let modules: Vec<&str> = rep["modules"].as_array().unwrap().iter().map(|m| m["name"].as_str().unwrap()).collect();
    assert_eq!(modules, ["g11eta", "g11xi", "g12"]);
    assert_eq!(rep["direct_sum"], true);
    let partial = rep["partial"].as_array().unwrap();
    assert!(partial.iter().all(|d| d["odd"].as_u64().unwrap() + d["even"].as_u64().unwrap() > 0));
}

#[test]
fn homology_reports() {
    let out = superlie(&["h2", "ksle5-10", "-", "--max", "6"]);
    assert_eq!(out.status.code(), Some(0));
    for row in json(&out)["rows"].as_array().unwrap() {
        assert_eq!(row["h2"], row["printed"]);
    }

    let rep = json(&superlie(&["h2", "heisenberg2", "--max", "4"]));
    let sum = |k: &str| rep["rows"].as_array().unwrap().iter().map(|r| r[k].as_u64().unwrap()).sum::<u64>();
    assert_eq!((sum("h1"), sum("h2")), (2, 2));

    let rep = json(&superlie(&["h2", "abelian2"]));
    let h2: u64 = rep["rows"].as_array().unwrap().iter().map(|r| r["h2"].as_u64().unwrap()).sum();
    assert_eq!(h2, 1);
}

#[test]
fn reports_are_deterministic() {
    let a = superlie(&["verify", "as", "cross"]);
    let b = superlie(&["verify", "as", "cross"]);
    assert_eq!(a.stdout, b.stdout);
    let a = superlie(&["h2", "mb4-5", "+", "--max", "4"]);
    let b = superlie(&["h2", "mb4-5", "+", "--max", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn pretty_output() {
    let out = superlie(&["--pretty", "h2", "vle4-3", "-"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("vle4-3 -: homology through degree 8"));
    assert!(text.contains("degree  H1  H2"));
    let out = superlie(&["--format", "pretty", "verify", "as", "cross"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("table sign map: negate"));
}
