//! End-to-end tests of the binary: exit codes, report formats, determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_superalg")
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn smooth_cuspidal_cubic_exits_1() {
    let out = run(&["smooth", &data("s2.json")]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("not smooth"), "{text}");
    assert!(text.contains("x1 = 0, x2 = 0"), "{text}");
}

#[test]
fn smooth_cone_reports_discrepancy_note() {
    let out = run(&["smooth", &data("s1.json")]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("non-degenerate conic"), "{text}");
}

#[test]
fn smooth_positive_cases_exit_0() {
    for f in ["sphere.json", "free_scheme.json"] {
        let out = run(&["smooth", &data(f)]);
        assert_eq!(out.status.code(), Some(0), "{f}");
        assert!(stdout(&out).contains("smooth"));
    }
}

#[test]
fn identity_commutator_exits_0() {
    let out = run(&["identity", &data("m2.json"), "Str(x1*x2 - x2*x1)"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("is a supertrace identity"));

    // not an identity: exit 1
    let out = run(&["identity", &data("m2.json"), "x1*x2 - x2*x1"]);
    assert_eq!(out.status.code(), Some(1));

    // non-multilinear input: error, exit 2
    let out = run(&["identity", &data("m2.json"), "Str(x1*x1)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("multilinear"));
}

#[test]
fn theta_prints_trace_polynomial() {
    let out = run(&["theta", "Str(y1*y2)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "Tr(yb1*yb2)");

    let out = run(&["theta", "Str(y2*y1)"]);
    assert_eq!(stdout(&out).trim(), "-Tr(yb2*yb1)");
}

#[test]
fn check_algebra_reports() {
    let out = run(&["check-algebra", &data("m2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("trace degree s:    2"), "{text}");
    assert!(text.contains("nondegenerate"), "{text}");

    // E2 fails centrality and nondegeneracy: negative verdict
    let out = run(&["check-algebra", &data("e2.json")]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("degenerate"), "{text}");
}

#[test]
fn universal_reports() {
    let out = run(&["universal", &data("k.json"), &data("idempotent.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("injective"), "{text}");
    assert!(text.contains("verified up to degree 2"), "{text}");

    let out = run(&["universal", &data("m2.json"), &data("free2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("free: J = 0"), "{text}");
    assert!(text.contains("8 even + 8 odd"), "{text}");
}

#[test]
fn universal_structure_constants_of_graded_m2() {
    // M2 with the elementary (0,1) grading presented by its own structure
    // constants: the universal map is injective at degree 2
    let out = run(&[
        "universal",
        &data("m2_11.json"),
        &data("m2_11_presentation.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("injective (free dim 4, image dim 4)"), "{text}");
    assert!(text.contains("16 even + 16 odd"), "{text}");
}

#[test]
fn malformed_inputs_exit_2_with_named_field() {
    let dir = std::env::temp_dir().join("superalg-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"name": "x", "dim": 2, "degrees": [0], "unit": ["1","0"], "mul": []}"#)
        .unwrap();
    let out = run(&["check-algebra", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("degrees"));

    let out = run(&["smooth", "/nonexistent/path.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_reports_are_deterministic() {
    let a = run(&["smooth", &data("s2.json"), "--format", "json"]);
    let b = run(&["smooth", &data("s2.json"), "--format", "json"]);
    assert_eq!(stdout(&a), stdout(&b));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(parsed["schema"], 1);
    assert_eq!(parsed["verdicts"]["verdict"], "not smooth");
    assert!(parsed["provenance"]
        .as_array()
        .unwrap()
        .iter()
        .any(|p| p.as_str().unwrap().contains("Jacobian")));
}

#[test]
fn selftest_json_is_byte_identical_across_runs() {
    let a = run(&["selftest", "--format", "json"]);
    let b = run(&["selftest", "--format", "json"]);
    assert_eq!(stdout(&a), stdout(&b), "selftest reports must be byte-identical");
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(parsed["schema"], 1);
    // every criterion id appears exactly once
    let ids: Vec<&str> = parsed["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(
        ids,
        ["1", "2", "3", "4", "5a", "5b", "6", "7", "8", "9", "10", "11"]
    );
}

#[test]
fn out_flag_writes_report_file() {
    let dir = std::env::temp_dir().join("superalg-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&[
        "smooth",
        &data("sphere.json"),
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["verdicts"]["verdict"], "smooth");
}
