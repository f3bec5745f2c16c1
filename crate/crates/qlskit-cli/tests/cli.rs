//! Flag plumbing and output-shape checks for the binary; the full exit-code
//! matrix lives in the acceptance suite.

use std::path::PathBuf;
use std::process::Command;

use qlskit::json::{qls_to_value, write_file};
use qlskit::linalg::cr;
use qlskit::qls::QuantumLatinSquare;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .join("qlskit/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str], env_tol: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qlskit"));
    cmd.args(args);
    match env_tol {
        Some(v) => cmd.env("QLSKIT_TOL", v),
        None => cmd.env_remove("QLSKIT_TOL"),
    };
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

/// A square that is valid only up to ~1e-6: fails at the default tolerance,
/// passes at a loose one.
fn slightly_off_square() -> String {
    let symbols: Vec<Vec<usize>> = (0..3).map(|i| (0..3).map(|j| (i + j) % 3).collect()).collect();
    let base = QuantumLatinSquare::from_classical(&symbols).unwrap();
    let mut entries = base.entries().to_vec();
    entries[0][0] = entries[0][0].scale(cr(1.0 + 1e-6));
    let off = QuantumLatinSquare::from_entries(entries).unwrap();
    let path = std::env::temp_dir().join(format!("qlskit-cli-off-{}.json", std::process::id()));
    write_file(&path, &qls_to_value(&off)).unwrap();
    path.display().to_string()
}

#[test]
fn env_tolerance_override_loosens_and_flag_beats_env() {
    let off = slightly_off_square();

    let (strict, _, _) = run(&["validate", &off], None);
    assert_eq!(strict, 1, "default tolerance must reject the perturbed square");

    let (loose, _, _) = run(&["validate", &off], Some("1e-3"));
    assert_eq!(loose, 0, "QLSKIT_TOL=1e-3 must accept it");

    let (flag_wins, _, _) = run(&["validate", "--tol", "1e-12", &off], Some("1e-3"));
    assert_eq!(flag_wins, 1, "--tol must take precedence over the environment");

    let (bad_env, _, stderr) = run(&["validate", &off], Some("banana"));
    assert_eq!(bad_env, 2);
    assert!(stderr.contains("QLSKIT_TOL"), "stderr: {stderr}");
}

#[test]
fn json_reports_are_valid_json_with_verdicts() {
    let (code, stdout, _) = run(&["validate", "--json", &data("qls4.json")], None);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("stdout is one JSON object");
    assert_eq!(v["command"], "validate");
    assert_eq!(v["type"], "qls");
    assert_eq!(v["pass"], true);

    let (code, stdout, _) = run(
        &["orthogonal", "--json", &data("oqls9_left.json"), &data("oqls9_right.json")],
        None,
    );
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["methods_agree"], true);
    assert_eq!(v["methods"].as_array().unwrap().len(), 4);

    let (code, stdout, _) = run(&["obstruction", "--json", &data("oqls9_left.json")], None);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["conclusive"], true);
    let value = v["witness"]["value"].as_f64().unwrap();
    assert!((value - (2.0f64 / 3.0).sqrt()).abs() < 1e-9);
}

#[test]
fn human_reports_name_the_fixture_quantities() {
    let (code, stdout, _) =
        run(&["orthogonal", &data("qlis8_k.json"), &data("qlis8_q.json")], None);
    assert_eq!(code, 1, "the shipped 8x8 pair is inconsistent as typeset");
    assert!(stdout.contains("nonzero parts 16"), "stdout: {stdout}");

    let (code, stdout, _) = run(&["validate", &data("u9.json")], None);
    assert_eq!(code, 0);
    assert!(stdout.contains("unitary_family"), "stdout: {stdout}");
}
