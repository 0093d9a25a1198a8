//! End-to-end tests of the binary: formats, exit codes, determinism.

use std::io::Write;
use std::process::{Command, Output};

fn hibi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hibi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn fsig_segre_csv() {
    let out = hibi(&["fsig", "--segre", "1,1,1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("class,volume,approx\n"));
    assert!(text.contains("0 0,1/2,0.500000000000"));
    assert!(text.contains("1 1,1/12,"));
}

#[test]
fn mutate_prints_replacement() {
    let out = hibi(&["mutate", "--segre-nccr", "r=2,t=3", "--at", "1,0"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json output");
    assert_eq!(value["nu"], serde_json::json!([1, 2]));
    assert_eq!(value["direction"], "right");
}

#[test]
fn mutate_left_differs() {
    let right = hibi(&["mutate", "--segre-nccr", "r=2,t=3", "--at", "1,0"]);
    let left = hibi(&["mutate", "--segre-nccr", "r=2,t=3", "--at", "1,0", "--left"]);
    assert!(right.status.success() && left.status.success());
    let rv: serde_json::Value = serde_json::from_str(&stdout(&right)).unwrap();
    let lv: serde_json::Value = serde_json::from_str(&stdout(&left)).unwrap();
    assert_ne!(rv["set"], lv["set"]);
}

#[test]
fn conic_chain_has_single_empty_class() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{"elements": ["a", "b"], "covers": [["a", "b"]]}}"#
    )
    .unwrap();
    let out = hibi(&["conic", "--poset", file.path().to_str().unwrap()]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["rank"], 0);
    let classes = value["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0]["class"], serde_json::json!([]));
}

#[test]
fn conic_output_rationals_round_trip() {
    let out = hibi(&["conic", "--segre", "1,1"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for class in value["classes"].as_array().unwrap() {
        for con in class["cell"]["constraints"].as_array().unwrap() {
            for c in con["coeffs"].as_array().unwrap() {
                hibi::rational::parse_rational(c.as_str().unwrap()).expect("rational");
            }
            hibi::rational::parse_rational(con["bound"].as_str().unwrap()).expect("rational");
        }
    }
}

#[test]
fn graph_dot_shape() {
    let out = hibi(&["graph", "--segre-nccr", "r=2,t=3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("graph exchange {"));
    assert_eq!(text.matches("[label=").count(), 20);
    assert_eq!(text.matches(" -- ").count(), 36);
    // Every vertex label contains the origin.
    for line in text.lines().filter(|l| l.contains("[label=")) {
        assert!(line.contains("(0,0)"), "vertex without origin: {line}");
    }
}

#[test]
fn graph_is_deterministic_across_jobs() {
    let a = hibi(&["graph", "--segre-nccr", "r=2,t=3", "--jobs", "1"]);
    let b = hibi(&["graph", "--segre-nccr", "r=2,t=3", "--jobs", "4"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn fsig_is_deterministic_across_jobs() {
    let a = hibi(&["fsig", "--segre", "2,2,2", "--jobs", "1"]);
    let b = hibi(&["fsig", "--segre", "2,2,2", "--jobs", "3"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn exit_code_parse_error() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{"elements": ["a", "b"], "covers": [["a","b"],["b","a"]]}}"#
    )
    .unwrap();
    let out = hibi(&["conic", "--poset", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_missing_source() {
    let out = hibi(&["conic"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_non_gorenstein_nccr() {
    let out = hibi(&["nccr", "--segre", "1,2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exit_code_cap_truncation_with_partial_output() {
    let out = hibi(&["graph", "--segre-nccr", "r=2,t=3", "--cap", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(4));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["truncated"], serde_json::json!(true));
    assert_eq!(value["vertices"].as_array().unwrap().len(), 3);
}

#[test]
fn nccr_json_fields() {
    let out = hibi(&["nccr", "--segre-nccr", "r=3,t=3"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["L"].as_array().unwrap().len(), 9);
    assert_eq!(value["conic"].as_array().unwrap().len(), 19);
    assert_eq!(value["L_tilde"].as_array().unwrap().len(), 25);
}

#[test]
fn check_passes_on_segre() {
    let out = hibi(&["check", "--segre", "1,1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("oracle equivalence (cotree box): ok"));
    assert!(text.contains("volumes sum to 1: ok"));
}

#[test]
fn tree_override_changes_coordinates() {
    // The quadric-cone poset with the default fixture tree vs. a rotated
    // one: same class count, coordinates may differ.
    let a = hibi(&["conic", "--segre", "1,1", "--format", "csv"]);
    let b = hibi(&["conic", "--segre", "1,1", "--tree", "e1,e2,e3", "--format", "csv"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a).lines().count(), stdout(&b).lines().count());
}

#[test]
fn dot_rejected_outside_graph() {
    let out = hibi(&["fsig", "--segre", "1,1", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let out = hibi(&["fsig", "--segre", "1,1", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("0,2/3,"));
}
