use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn pregular(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pregular"))
        .args(args)
        .env_remove("PREGULAR_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = pregular(&full);
    let v = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (v, o.status.code().unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn invariants_of_a5_odd_part() {
    let (v, code) = json(&["invariants", "A(5)", "--pi-complement", "2"]);
    assert_eq!(code, 0);
    let row = &v["rows"][0];
    assert_eq!(row["d_pi"], "4/15");
    assert_eq!(row["d_pi_decimal"], "0.26667");
    assert_eq!(row["k"], 5);
}

#[test]
fn invariants_of_m11_two_part() {
    let (v, _) = json(&["invariants", "M(11)", "--pi", "2"]);
    assert_eq!(v["rows"][0]["k_pi"], 5);
    assert_eq!(v["rows"][0]["pi_part"], "16");
}

#[test]
fn trivial_group_has_d_one() {
    let (v, code) = json(&["invariants", "C(1)", "--pi", "2"]);
    assert_eq!((v["rows"][0]["d_pi"].as_str(), code), (Some("1/1"), 0));
}

#[test]
fn limit_exceeded_is_a_row_and_exit_3() {
    let o = pregular(&["invariants", "A(9)", "--limit", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("exceeds the configured limit of 1000"));
}

#[test]
fn env_limit_mirrors_the_flag() {
    let o = Command::new(env!("CARGO_BIN_EXE_pregular"))
        .args(["invariants", "A(9)"])
        .env("PREGULAR_LIMIT", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn config_file_sets_limits_and_flags_override() {
    let path = scratch("small.conf");
    std::fs::write(&path, "# tight\nlimit = 100\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(
        pregular(&["--config", p, "invariants", "A(5)"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        pregular(&["--config", p, "invariants", "A(6)"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        pregular(&["--config", p, "--limit", "1000", "invariants", "A(6)"])
            .status
            .code(),
        Some(0)
    );
    std::fs::write(&path, "speed = 3\n").unwrap();
    let o = pregular(&["--config", p, "invariants", "A(5)"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown key 'speed'"));
}

#[test]
fn bad_spec_reports_the_rule() {
    let o = pregular(&["invariants", "PSL(2,6)"]);
    assert_eq!(o.status.code(), Some(4));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("column 1: 6 is not a prime power"), "{err}");
}

#[test]
fn check_exit_codes() {
    let (v, code) = json(&["check", "3", "Frob(2)", "--p", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"][0]["sharp"], true);
    assert_eq!(v["rows"][0]["hypothesis"], false);

    let (v, code) = json(&["check", "2", "S(4)"]);
    assert_eq!(
        (code, v["rows"][0]["status"].as_str()),
        (0, Some("verified"))
    );

    let (v, code) = json(&["check", "1", "PGL(2,7)", "--p", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"][0]["status"], "hypothesis fails");
    assert_eq!(v["rows"][0]["sharp"], true);

    // The checkers report unreachable invariants as undecidable verdicts.
    let (v, code) = json(&["check", "4", "A(9)", "--limit", "100"]);
    assert_eq!(code, 2);
    assert_eq!(v["rows"][0]["status"], "undecidable");
    assert_eq!(pregular(&["check", "7", "A(5)"]).status.code(), Some(4));
}

#[test]
fn check_equality_case() {
    let (v, code) = json(&["check", "P63", "PGL(2,5)", "--p", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"][0]["status"], "proxy-verified");
}

#[test]
fn check_lemma_with_pi() {
    let (v, code) = json(&["check", "L21", "S(4)", "--pi", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"][0]["pi"], "{3}");
}

#[test]
fn tables_match_and_are_deterministic() {
    for name in [
        "table1",
        "alternating",
        "sporadic-small",
        "lie-grid",
        "tori",
    ] {
        let a = pregular(&["tables", name, "--format", "csv"]);
        let b = pregular(&["tables", name, "--format", "csv"]);
        assert_eq!(a.status.code(), Some(0), "{name}: {}", stdout(&a));
        assert_eq!(a.stdout, b.stdout, "{name} differs between runs");
    }
}

#[test]
fn alternating_table_has_the_a7_row() {
    let o = pregular(&["tables", "alternating", "--format", "csv"]);
    assert!(stdout(&o).contains("A(7),7',7,7,360,7/360,0.01944,<,0.16667,ok"));
}

#[test]
fn sporadic_table_has_m11_rows() {
    let (v, _) = json(&["tables", "sporadic-small"]);
    let m11: Vec<(String, String)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["group"] == "M(11)" && r["pi"] != "{2}")
        .map(|r| {
            (
                r["k"].to_string(),
                r["order_pi"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    let want = [("8", "880"), ("9", "1584"), ("8", "720")];
    assert_eq!(m11, want.map(|(a, b)| (a.to_string(), b.to_string())));
}

#[test]
fn grid_bound_flag() {
    let (v, code) = json(&["tables", "tori", "--grid-qmax", "9"]);
    assert_eq!(code, 0);
    assert!(v["command"].as_str().unwrap().ends_with("--grid-qmax 9"));
    assert!(v["rows"].as_array().unwrap().iter().all(|r| {
        let g = r["group"].as_str().unwrap();
        let q: u64 = g[g.rfind('(').unwrap() + 1..g.len() - 1].parse().unwrap();
        q <= 9
    }));
}

#[test]
fn unknown_table_is_a_usage_error() {
    assert_eq!(pregular(&["tables", "table9"]).status.code(), Some(4));
}

#[test]
fn sweep_finds_no_counterexamples() {
    let (v, code) = json(&["sweep", "--max-prime", "7"]);
    assert_eq!(code, 0);
    let notes = v["notes"].as_array().unwrap();
    assert!(notes
        .last()
        .unwrap()
        .as_str()
        .unwrap()
        .contains("0 counterexamples"));
}

#[test]
fn generator_files() {
    let path = scratch("s3.gens");
    std::fs::write(&path, "(1,2,3)\n(1,2)\n").unwrap();
    let spec = format!("file:{}", path.display());
    let (v, code) = json(&["invariants", &spec, "--pi-complement", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"][0]["order"], "6");
    assert_eq!(v["rows"][0]["d_pi"], "2/3");
}

#[test]
fn markdown_is_the_default() {
    let o = pregular(&["invariants", "S(3)"]);
    let text = stdout(&o);
    assert!(text.starts_with("`invariants S(3)`"), "{text}");
    assert!(text.contains("| S(3)  |"), "{text}");
}
