use std::process::{Command, Output};

use serde_json::Value;

fn svir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_svir")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = svir(&all);
    (o.status.code().unwrap(), serde_json::from_str(&stdout(&o)).expect("valid JSON"))
}

#[test]
fn verify_module_passes() {
    let o = svir(&["verify-module", "--family", "ramond", "--window", "3", "--max-deg", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn act_ns_g_half_on_odd_one() {
    let o = svir(&["act", "--family", "ns", "G(1/2)", "[even: 0 | odd: 1]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[even: q^2*(x+a) | odd: 0]");
}

#[test]
fn search_distinct_alpha_has_dimension_zero() {
    let (code, v) = json(&["search-intertwiner", "--A", "ramond:1,1", "--B", "ramond:1,2", "--max-deg", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["dimension"], 0);
}

#[test]
fn search_finds_phi_with_exact_entries() {
    let (code, v) = json(&["search-intertwiner", "--A", "ns:2,1", "--B", "restricted:w,1", "--max-deg", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["dimension"], 1);
    let matrix = v["basis"][0]["matrix"].as_array().unwrap();
    assert_eq!(matrix.len(), 6);
    // Scalars are grammar strings, never floats.
    assert!(matrix.iter().flat_map(|r| r.as_array().unwrap()).all(Value::is_string));
}

#[test]
fn half_index_for_ramond_is_a_usage_error() {
    let o = svir(&["act", "--family", "ramond", "G(1/2)", "[even: 1 | odd: 0]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error at 1:1"));
}

#[test]
fn syntax_error_reports_position() {
    let o = svir(&["act", "--family", "ramond", "L(1)", "[even: 1 +* | odd: 0]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1:11"));
}

#[test]
fn bad_flag_is_a_usage_error() {
    assert_eq!(svir(&["verify-module", "--family", "both"]).status.code(), Some(2));
    assert_eq!(svir(&["probe-simplicity", "--family", "ns", "--variant", "restricted"]).status.code(), Some(2));
}

#[test]
fn symbolic_search_is_rejected() {
    let o = svir(&["search-intertwiner", "--A", "ramond:symbolic", "--B", "ramond:1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bracket_and_verify_algebra() {
    let o = svir(&["bracket", "--family", "ns", "G(1/2)", "G(-1/2)"]);
    assert_eq!(stdout(&o).trim(), "2*L(0)");
    let (code, v) = json(&["verify-algebra", "--window", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["reports"].as_array().unwrap().len(), 7);
}

#[test]
fn iso_checks_pass() {
    let (code, v) = json(&["verify-iso", "--window", "2", "--max-deg", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["reports"].as_array().unwrap().len(), 3);
}

#[test]
fn probes_report_evidence() {
    let (code, v) = json(&["probe-simplicity", "--family", "ramond", "--seed-list", "1,1;w,2", "--max-words", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "evidence");
    let (code, v) = json(&["probe-submodule", "--family", "ns", "--window", "2", "--max-deg", "5"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["status"], "evidence");
}

#[test]
fn simplicity_fails_at_alpha_zero() {
    let o = svir(&["probe-simplicity", "--family", "ramond", "--seed-list", "1,0", "--seed-deg", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn closure_flag_probes_simplicity() {
    let (code, v) =
        json(&["probe-simplicity", "--family", "ns", "--seed-list", "2,1/2", "--max-deg", "5", "--closure"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["status"], "evidence");
}

#[test]
fn freeness_passes() {
    for family in ["ramond", "ns"] {
        assert_eq!(svir(&["check-freeness", "--family", family]).status.code(), Some(0));
    }
}

#[test]
fn twisted_variant_checks_the_twist_identity() {
    let (code, v) =
        json(&["verify-module", "--family", "ramond", "--variant", "twisted", "--window", "2", "--max-deg", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["reports"].as_array().unwrap().len(), 2);
}
