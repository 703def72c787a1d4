use std::path::PathBuf;
use std::process::{Command, Output};

fn gradedpi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gradedpi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn verify_examples_exit_zero() {
    let o = gradedpi(&[
        "verify",
        "--algebra",
        "m2-elem",
        "--basis",
        "dv-lemma",
        "--mode",
        "identities",
        "--max-degree",
        "4",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["multidegrees"]
        .as_array()
        .unwrap()
        .iter()
        .all(|m| m["equal"] == true));
    let o = gradedpi(&[
        "verify",
        "--algebra",
        "m2-4",
        "--basis",
        "regular",
        "--mode",
        "centrals",
        "--max-degree",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    let o = gradedpi(&["build", "--algebra", "pauli", "--n", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n ≥ 2 required"));
    // verification failure
    let o = gradedpi(&[
        "verify",
        "--algebra",
        "m2c-z4",
        "--basis",
        "corollary-literal",
        "--max-degree",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    // parse error
    let o = gradedpi(&[
        "verify",
        "--algebra",
        "m2-elem",
        "--basis",
        "dv-lemma",
        "--mode",
        "sideways",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = gradedpi(&["build", "--algebra", "no-such-algebra"]);
    assert_eq!(o.status.code(), Some(2));
    // precondition: a regular basis on a non-regular algebra
    let o = gradedpi(&["families", "--algebra", "m2-elem", "--basis", "regular"]);
    assert_eq!(o.status.code(), Some(3));
    let o = gradedpi(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn spec_file_round_trip_through_the_cli() {
    let spec = tmp("e-minus.spec");
    let o = gradedpi(&[
        "build",
        "--algebra",
        "e(-1,4)",
        "--format",
        "spec",
        "--out",
        spec.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&spec).unwrap();
    assert!(text.starts_with("format gradedpi-algebra 1\n"));
    let o = gradedpi(&[
        "build",
        "--algebra",
        spec.to_str().unwrap(),
        "--format",
        "spec",
    ]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), text);
    let o = gradedpi(&[
        "verify",
        "--algebra",
        spec.to_str().unwrap(),
        "--basis",
        "corollary",
        "--max-degree",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn generator_file_and_report_rendering() {
    let gens = tmp("dv.gens");
    let o = gradedpi(&[
        "families",
        "--algebra",
        "m2-elem",
        "--basis",
        "dv-lemma",
        "--out",
        gens.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = tmp("dv.json");
    let o = gradedpi(&[
        "verify",
        "--algebra",
        "m2-elem",
        "--basis",
        gens.to_str().unwrap(),
        "--max-degree",
        "3",
        "--jobs",
        "2",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let o = gradedpi(&[
        "report",
        "--input",
        report.to_str().unwrap(),
        "--format",
        "tsv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let tsv = String::from_utf8(o.stdout).unwrap();
    assert!(tsv.contains("# passed\ttrue"));
    assert!(tsv.contains("degrees\tspace_dim\tspan_dim\tequal\twitness"));
}

#[test]
fn transfer_and_reduce() {
    let o = gradedpi(&[
        "transfer",
        "--algebra",
        "m2-elem",
        "--basis",
        "elementary",
        "--regular",
        "m2-4",
        "--verify",
        "--max-degree",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = gradedpi(&[
        "reduce",
        "--algebra",
        "pauli(3)",
        "--poly",
        "x1:x*x2:x*x3:y - x2:x*x1:x*x3:y",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["replayed"], true);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "families",
        "--algebra",
        "pauli(3)",
        "--basis",
        "pauli",
        "--max-degree",
        "3",
    ];
    assert_eq!(gradedpi(&args).stdout, gradedpi(&args).stdout);
}
