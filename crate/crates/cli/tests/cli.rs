use std::path::Path;
use std::process::{Command, Output};

use hvcert::report::{cells_from_csv, CellEntry};
use hvcert_core::algebra::{parse_rational, parse_surd, rat};
use serde_json::Value;

fn hvcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hvcert"))
        .args(args)
        .env_remove("HVCERT_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn symbolic_certificates_up_to_fifteen() {
    let out = hvcert(&["certify", "--omega", "3..15", "--symbolic"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["entries"].as_array().unwrap().len(), 13);
    assert_eq!(v["summary"]["failed"], serde_json::json!([]));
    assert_eq!(v["entries"][4]["verdict"]["verdict"], "certified");
}

#[test]
fn symbolic_certificate_sixteen_fails() {
    let out = hvcert(&["certify", "--omega", "16", "--symbolic"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["entries"][0]["verdict"]["verdict"], "failed");
    assert_eq!(v["entries"][0]["verdict"]["i"], 1);
    assert_eq!(v["entries"][0]["verdict"]["j"], 7);
}

#[test]
fn certify_cells_choose_c_between_roots() {
    let out = hvcert(&["certify", "--omega", "5..7", "--n", "20..24"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let first = &text[text.find("\"entries\"").unwrap()..];
    let pos: Vec<usize> = ["omega", "n", "nonempty", "x", "y", "chosen_c", "status"]
        .iter()
        .map(|k| first.find(&format!("\"{k}\":")).unwrap())
        .collect();
    assert!(pos.windows(2).all(|p| p[0] < p[1]), "field order {pos:?}");
    let v = json(&out);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 15);
    let w = rat(1, 1_000_000_000_000);
    for e in entries {
        assert_eq!(e["status"], "nonempty");
        let c = parse_rational(e["chosen_c"]["exact"].as_str().unwrap()).unwrap();
        for x in e["x"].as_array().unwrap() {
            let s = parse_surd(x["exact"].as_str().unwrap()).unwrap();
            assert!(s.enclose(&w).hi < c);
        }
        for y in e["y"].as_array().unwrap() {
            let s = parse_surd(y["exact"].as_str().unwrap()).unwrap();
            assert!(s.enclose(&w).lo > c);
        }
    }
}

#[test]
fn scan_reports_empty_cells_without_failing() {
    let out = hvcert(&["scan", "--omega", "16", "--n", "1856..1860"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["summary"]["per_omega"][0]["first_empty"], 1859);
    let statuses: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["status"].as_str().unwrap()).collect();
    assert_eq!(statuses, ["nonempty", "nonempty", "nonempty", "empty", "empty"]);
    let strict = hvcert(&["scan", "--omega", "16", "--n", "1856..1860", "--require-nonempty"]);
    assert_eq!(code(&strict), 1);
}

#[test]
fn scan_below_hypothesis_gives_empty_report() {
    let out = hvcert(&["scan", "--omega", "20", "--n", "3..45"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["entries"], serde_json::json!([]));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["scan", "--omega", "3", "--n", "9..x"][..],
        &["scan", "--omega", "9..3", "--n", "30"],
        &["scan", "--omega", "1", "--n", "30"],
        &["certify", "--omega", "5"],
        &["certify", "--omega", "5", "--n", "10"],
        &["certify", "--omega", "5", "--n", "20", "--jobs", "0"],
        &["frobnicate"],
    ] {
        let out = hvcert(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = hvcert(&["coeffs", "--omega", "5", "--output", "/nonexistent/dir/x.json"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot write"));
}

#[test]
fn coefficient_table_matches_listing() {
    let out = hvcert(&["coeffs", "--omega", "5", "--format", "markdown"]);
    assert_eq!(code(&out), 0);
    let md = String::from_utf8(out.stdout).unwrap();
    for s in [
        "| 5 | 1 | 5(n + 3) | 4(4n^3 + 53n^2 + 10n + 128) |",
        "| 5 | 2 | 3(n + 1) | 4(2n^3 + 47n^2 + 42n + 104) | (n^2 - 49n + 36)/(8(n - 2)(n + 2)) |",
        "2/3n^2 + 29/6n + 1076/3 + 2842/(9(n - 2)) + 4601/(9(n + 1)) - 1104/(n + 2)",
    ] {
        assert!(md.contains(s), "missing {s}\n{md}");
    }
}

#[test]
fn csv_round_trips_to_json() {
    let args = ["scan", "--omega", "6..7", "--n", "30..33"];
    let j = json(&hvcert(&args));
    let csv = hvcert(&[&args[..], &["--format", "csv"]].concat());
    assert_eq!(code(&csv), 0);
    let from_csv = cells_from_csv(&csv.stdout[..]).unwrap();
    let from_json: Vec<CellEntry> = serde_json::from_value(j["entries"].clone()).unwrap();
    assert_eq!(from_csv, from_json);
    assert!(csv.stdout.ends_with(b"\n"));
}

#[test]
fn identical_config_gives_identical_bytes() {
    let args = ["scan", "--omega", "3..9", "--n", "20..60", "--jobs", "3"];
    let a = hvcert(&args);
    let b = hvcert(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = hvcert(&["scan", "--omega", "3..9", "--n", "20..60", "--jobs", "1"]);
    assert_eq!(json(&a)["entries"], json(&c)["entries"]);
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hvcert"))
        .args(["coeffs", "--omega", "4", "--format", "csv"])
        .env("HVCERT_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("coeffs.csv")).unwrap();
    assert!(text.starts_with("omega,k,nu,d,u_over_nu,delta\n"));
    let explicit = dir.path().join("named.json");
    let out = hvcert(&["coeffs", "--omega", "4", "--output", explicit.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(Path::new(&explicit).exists());
}

#[test]
fn integral_identities_pass() {
    let out = hvcert(&["integrals"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let shorthand: Vec<&Value> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["name"] == "rela_shorthand")
        .collect();
    assert!(!shorthand.is_empty());
    assert!(shorthand.iter().all(|e| e["holds"] == false && e["expected_to_hold"] == false));
}

#[test]
fn sphere_check_fails_only_on_annulus_bracket() {
    let out = hvcert(&["sphere-check", "--seed", "7"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    let failed = v["summary"]["failed"].as_array().unwrap();
    assert_eq!(failed.len(), 3);
    assert!(failed.iter().all(|f| f.as_str().unwrap().starts_with("sphere/annulus_bracket ")));
    let shifted: Vec<&Value> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["name"] == "annulus_bracket_plus_half_q")
        .collect();
    assert_eq!(shifted.len(), 3);
    assert!(shifted.iter().all(|e| e["holds"] == true));
    // a loose enough tolerance accepts the offset
    let loose = hvcert(&["sphere-check", "--tolerance", "0.2"]);
    assert_eq!(code(&loose), 0);
}

#[test]
fn report_in_markdown() {
    let out = hvcert(&["report", "--format", "markdown"]);
    assert_eq!(code(&out), 1);
    let md = String::from_utf8(out.stdout).unwrap();
    assert!(md.starts_with("# hvcert report"));
    assert!(md.contains("| certify | symbolic_certificate | omega=16 | 0e0 | 1e0 |"));
}
