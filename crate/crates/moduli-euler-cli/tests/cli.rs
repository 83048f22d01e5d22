//! End-to-end checks of the command-line surface: exact output strings,
//! exit codes, determinism, and the cache file.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moduli-euler"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf-8")
}

#[test]
fn chi_single_values() {
    assert_eq!(stdout(&["chi", "--g", "0", "--n", "10"]), "153946\n");
    assert_eq!(stdout(&["chi", "--g", "1", "--n", "1", "--kappa", "1"]), "5/12\n");
    assert_eq!(stdout(&["chi", "--g", "2", "--n", "6"]), "853541/720\n");
}

#[test]
fn chi_refined_output() {
    let out = stdout(&["chi", "--g", "2", "--n", "0", "--refined"]);
    assert_eq!(out, "-1/240 + 13/288 κ - 1/6 κ^2 + 5/24 κ^3\nt_exp: -2\n");
}

#[test]
fn chi_json_record_schema() {
    let out = stdout(&["chi", "--g", "2", "--n", "0", "--refined", "--json"]);
    let record: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    assert_eq!(record["g"], 2);
    assert_eq!(record["n"], 0);
    assert_eq!(record["t_exp"], -2);
    assert_eq!(record["kpoly"][1], "13/288");
    assert_eq!(record["value"], "119/1440");
    // The value string parses back to the identical rational.
    let v: moduli_euler::rat::Rat = record["value"].as_str().unwrap().parse().unwrap();
    assert_eq!(v, moduli_euler::rat::Rat::new(119, 1440));
}

#[test]
fn chi_evaluation_with_t() {
    // chi_{1,1}(t, kappa) carries t^{-1}: at t = 2, kappa = 1 the weighted
    // value is (5/12) / 2.
    assert_eq!(
        stdout(&["chi", "--g", "1", "--n", "1", "--kappa", "1", "--t", "2"]),
        "5/24\n"
    );
}

#[test]
fn chi_methods_agree() {
    for method in ["linear", "quadratic", "closed-form", "graph-oracle"] {
        assert_eq!(
            stdout(&["chi", "--g", "1", "--n", "2", "--method", method]),
            "1/2\n",
            "method {method}"
        );
    }
    assert_eq!(
        stdout(&["chi", "--g", "0", "--n", "6", "--method", "functional-eq"]),
        "34\n"
    );
}

#[test]
fn chi_decimal_marked() {
    let out = stdout(&["chi", "--g", "1", "--n", "1", "--decimal"]);
    assert!(out.contains("5/12"));
    assert!(out.contains("approx"));
}

#[test]
fn unstable_input_is_exit_2() {
    let out = run(&["chi", "--g", "0", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unstable"));
}

#[test]
fn oracle_budget_is_exit_3() {
    let out = run(&["oracle", "--g", "2", "--n", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["oracle", "--g", "2", "--n", "1", "--max-dim", "4"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn env_budget_fallback() {
    let out = Command::new(env!("CARGO_BIN_EXE_moduli-euler"))
        .args(["oracle", "--g", "2", "--n", "1"])
        .env("MODULI_EULER_MAX_DIM", "4")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn table_csv_format() {
    let out = stdout(&["table", "--g-max", "1", "--n-max", "3", "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "g,n,value,method");
    assert_eq!(lines[1], "0,3,1,linear");
    assert_eq!(lines[2], "1,1,5/12,linear");
    assert_eq!(lines[3], "1,2,1/2,linear");
    assert_eq!(lines[4], "1,3,17/12,linear");
}

#[test]
fn table_json_records() {
    let out = stdout(&["table", "--g-max", "0", "--n-max", "4"]);
    let records: Vec<serde_json::Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid JSON line"))
        .collect();
    assert_eq!(records.len(), 2);
    assert_eq!(records[1]["g"], 0);
    assert_eq!(records[1]["n"], 4);
    assert_eq!(records[1]["value"], "2");
    assert_eq!(records[1]["method"], "linear");
}

#[test]
fn output_is_deterministic() {
    let first = stdout(&["table", "--g-max", "2", "--n-max", "4", "--format", "csv"]);
    let second = stdout(&["table", "--g-max", "2", "--n-max", "4", "--format", "csv"]);
    assert_eq!(first, second);
    let a = stdout(&["oracle", "--g", "2", "--n", "0", "--catalog"]);
    let b = stdout(&["oracle", "--g", "2", "--n", "0", "--catalog"]);
    assert_eq!(a, b);
}

#[test]
fn oracle_outputs() {
    let out = stdout(&["oracle", "--g", "2", "--n", "0"]);
    assert!(out.contains("classes: 7"));
    assert!(out.contains("graph sum: -1/240 + 13/288 κ - 1/6 κ^2 + 5/24 κ^3"));
    let catalog = stdout(&["oracle", "--g", "1", "--n", "1", "--catalog"]);
    let records: Vec<serde_json::Value> = catalog
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid JSON line"))
        .collect();
    assert_eq!(records.len(), 2);
    assert!(records.iter().any(|r| r["aut"] == 2));
    let dot = stdout(&["oracle", "--g", "1", "--n", "1", "--dot"]);
    assert!(dot.contains("graph \"class0\""));
    let census = stdout(&["oracle", "--g", "2", "--n", "0", "--census"]);
    assert_eq!(census.trim(), "[[0,1],[1,2],[2,2],[3,2]]");
}

#[test]
fn gk_json_and_series() {
    let out = stdout(&["gk", "--k", "1"]);
    assert_eq!(
        out.trim(),
        r#"[{"partition":[1,1],"v0_power":0,"coeff":"1/2"},{"partition":[2],"v0_power":0,"coeff":"1/2"}]"#
    );
    let with_series = stdout(&["gk", "--k", "1", "--z-order", "4", "--check-series"]);
    assert!(with_series.contains("13/288"));
    assert!(with_series.contains("series_recursion_agrees: true"));
}

#[test]
fn closed_form_families() {
    let out = stdout(&["closed-form", "--family", "a", "--k", "1", "--order", "4"]);
    assert_eq!(out.trim(), r#"["0","0","0","0","1/8"]"#);
    let out = stdout(&["closed-form", "--family", "b", "--k", "0", "--order", "2"]);
    assert_eq!(out.trim(), r#"["0","-1/12","1/24"]"#);
    let out = stdout(&["closed-form", "--family", "agkp", "--g", "2", "--k", "0", "--p", "0", "--order", "2"]);
    assert_eq!(out.trim(), r#"["1","-2","3"]"#);
    let missing = run(&["closed-form", "--family", "agkp", "--k", "0", "--order", "2"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for suite in ["tables", "oracle", "shor"] {
        let out = run(&["verify", "--suite", suite]);
        assert_eq!(out.status.code(), Some(0), "suite {suite}");
        let text = String::from_utf8_lossy(&out.stdout).to_string();
        assert!(!text.contains("FAIL"), "suite {suite}: {text}");
    }
    let oracle = stdout(&["verify", "--suite", "oracle"]);
    assert!(oracle.contains("7 classes at (2,0)"));
    let unknown = run(&["verify", "--suite", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn cache_round_trip() {
    let dir = std::env::temp_dir().join(format!("moduli-euler-cache-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cache = dir.join("table.json");
    let cache_str = cache.to_str().unwrap();
    let first = stdout(&["chi", "--g", "2", "--n", "2", "--cache", cache_str]);
    assert!(cache.exists());
    let reused = stdout(&["chi", "--g", "2", "--n", "2", "--cache", cache_str]);
    assert_eq!(first, reused);
    assert_eq!(first, "413/720\n");
    std::fs::remove_dir_all(&dir).unwrap();
}
