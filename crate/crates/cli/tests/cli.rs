use std::path::PathBuf;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn bentforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bentforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn schema(name: &str) -> JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let value: Value = serde_json::from_str(&text).expect("schema is JSON");
    JSONSchema::compile(&value).expect("schema compiles")
}

/// Runs a command, checks its exit status and validates stdout against a schema.
fn run_json(schema_name: &str, args: &[&str], status: i32) -> Value {
    let out = bentforge(args);
    assert_eq!(
        out.status.code(),
        Some(status),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let json: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    let validator = schema(schema_name);
    if let Err(errors) = validator.validate(&json) {
        let msgs: Vec<String> = errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect();
        panic!("{args:?} does not match {schema_name}: {msgs:?}");
    }
    json
}

#[test]
fn classify_example() {
    let json = run_json("classify", &["classify", "--tt", "0001", "--n", "2"], 0);
    assert_eq!(json["kind"], "Bent");
    assert_eq!(json["amplitude"], 2);
}

#[test]
fn verify_example() {
    let json = run_json("verify", &["verify", "--prop", "bentpla1", "--n", "4"], 0);
    assert_eq!(json["cases"], 896 * 30);
    assert_eq!(json["failures"].as_array().map(Vec::len), Some(0));
}

#[test]
fn bound_report_example() {
    let json = run_json("count-report", &["count", "--report", "6"], 0);
    assert_eq!(json["log2BalancedLower"], "21");
    assert_eq!(json["log2PlateauedUpper"], "13.88");
    assert_eq!(json["refutedNominally"], true);
    let ten = run_json("count-report", &["count", "--report", "10"], 0);
    assert_eq!(ten["log2BalancedLower"], "493");
    assert_eq!(ten["log2PlateauedUpper"], "222.08");
    let four = run_json("count-report", &["count", "--report", "4"], 0);
    assert_eq!(four["refutedNominally"], false);
}

#[test]
fn function_commands_match_their_schemas() {
    let bent = ["--tt", "0x7888"];
    let with = |cmd: &[&'static str]| -> Vec<&str> { cmd.iter().copied().chain(bent).collect() };
    let wht = run_json("wht", &with(&["wht"]), 0);
    assert!(wht["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .all(|w| w.as_i64().unwrap().abs() == 4));
    let anf = run_json("anf", &with(&["anf"]), 0);
    assert_eq!(anf["degree"], 2);
    let d = run_json(
        "derivative",
        &with(&["derivative", "--coordinate", "1", "--reduce"]),
        0,
    );
    assert_eq!(d["derivative"]["n"], 3);
    let r = run_json(
        "restrict",
        &with(&["restrict", "--normal", "0b1010", "--side", "1"]),
        0,
    );
    assert_eq!(r["classification"]["kind"], "Plateaued");
    run_json("dual", &with(&["dual"]), 0);
    let rep = run_json("report", &with(&["report"]), 0);
    assert_eq!(rep["classification"]["kind"], "Bent");
    let plain = run_json("report", &["report", "--anf", "x1*x2*x3", "--n", "3"], 0);
    assert!(plain["dual"].is_null());
    run_json(
        "classify",
        &["classify", "--random", "--n", "10", "--seed", "3"],
        0,
    );
}

#[test]
fn anf_matches_the_polynomial_input() {
    let json = run_json("anf", &["anf", "--anf", "x3 + 1 + x1*x2", "--n", "3"], 0);
    assert_eq!(json["anf"], "x1*x2 + x3 + 1");
    assert_eq!(json["monomials"], serde_json::json!([[1, 2], [3], []]));
}

#[test]
fn file_input() {
    let dir = std::env::temp_dir().join(format!("bentforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f.txt");
    std::fs::write(&path, "0001\n").unwrap();
    let json = run_json(
        "classify",
        &["classify", "--file", path.to_str().unwrap()],
        0,
    );
    assert_eq!(json["kind"], "Bent");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn enumeration_and_census() {
    let e = run_json("enumerate-bent", &["enumerate-bent", "--n", "4"], 0);
    assert_eq!(e["count"], 896);
    let c = run_json("census", &["census", "--n", "4", "--dump-functions"], 0);
    assert_eq!(c["candidateCount"], 14);
    assert_eq!(c["lowerBoundOnly"], false);
    assert_eq!(c["candidates"].as_array().map(Vec::len), Some(14));
    let s = run_json(
        "census",
        &["census", "--n", "6", "--samples", "50", "--seed", "7"],
        0,
    );
    assert_eq!(s["lowerBoundOnly"], true);
    assert!(s["caveat"].is_string());
}

#[test]
fn counting_commands() {
    let exact = run_json("count-exact", &["count", "--exact", "3", "2"], 0);
    assert_eq!(exact["counts"]["4"], "70");
    assert_eq!(exact["total"], "128");
    let bound = run_json("count-bound", &["count", "--bound", "3", "2"], 0);
    assert_eq!(bound["counts"]["4"], "38");
    assert_eq!(bound["provenance"], "ConvolutionLowerBound");
}

#[test]
fn all_suites() {
    let json = run_json("verify", &["verify", "--prop", "all", "--n", "4"], 0);
    let props: Vec<&str> = json
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["proposition"].as_str().unwrap())
        .collect();
    assert_eq!(props, ["bentpla1", "shap1", "prop1", "thm2"]);
    let sampled = run_json(
        "verify",
        &[
            "verify",
            "--prop",
            "shap1",
            "--n",
            "6",
            "--samples",
            "20",
            "--all-directions",
        ],
        0,
    );
    assert_eq!(sampled["cases"], 20 * 63);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &[
            "census",
            "--n",
            "6",
            "--samples",
            "30",
            "--seed",
            "5",
            "--dump-functions",
        ][..],
        &[
            "verify",
            "--prop",
            "prop1",
            "--n",
            "6",
            "--samples",
            "30",
            "--seed",
            "5",
        ][..],
        &[
            "classify", "--random", "--n", "8", "--seed", "9", "--format", "text",
        ][..],
        &["wht", "--tt", "0x7888", "--format", "csv"][..],
    ] {
        let a = bentforge(args);
        let b = bentforge(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = ["census", "--n", "6", "--samples", "30", "--seed", "5"];
    let one = Command::new(env!("CARGO_BIN_EXE_bentforge"))
        .args(args)
        .env("BENTFORGE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(one.stdout, bentforge(&args).stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_bentforge"))
        .args(args)
        .env("BENTFORGE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2_and_name_the_flag() {
    let cases: [(&[&str], &str); 7] = [
        (&["classify", "--tt", "012"], "--tt"),
        (&["classify", "--tt", "0001", "--n", "3"], "--tt"),
        (&["restrict", "--tt", "0001", "--normal", "0"], "--normal"),
        (&["dual", "--tt", "0110"], "--tt"),
        (&["enumerate-bent", "--n", "3"], "--n"),
        (
            &["count", "--exact", "6", "4", "--max-anf-space", "20"],
            "--exact",
        ),
        (&["verify", "--prop", "nope", "--n", "4"], "--prop"),
    ];
    for (args, name) in cases {
        let out = bentforge(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(name), "{args:?}: {err}");
    }
    assert_eq!(bentforge(&[]).status.code(), Some(2));
}

#[test]
fn csv_and_text_formats() {
    let csv = bentforge(&["wht", "--tt", "0001", "--format", "csv"]);
    assert_eq!(
        String::from_utf8(csv.stdout).unwrap(),
        "y,W\n0,2\n1,2\n2,2\n3,-2\n"
    );
    let text = bentforge(&["classify", "--tt", "0001", "--format", "text"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text
        .lines()
        .any(|l| l.starts_with("kind") && l.ends_with("Bent")));
}
