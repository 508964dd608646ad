use std::path::Path;
use std::process::{Command, Output};

use arcsys::records::systems_from_json;
use arcsys::verify::VerificationReport;

fn arcsys(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arcsys"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn enumerate_is_deterministic_and_classifies() {
    let dir = tempfile::tempdir().unwrap();
    for k in ["0", "1"] {
        let first = arcsys(&["enumerate", "--k", k, "--bound", "6", "--check-bound", "12", "--out", "a.json"], dir.path());
        assert!(first.status.success());
        let again = arcsys(&["enumerate", "--k", k, "--out", "b.json"], dir.path());
        assert!(again.status.success());
        let a = std::fs::read(dir.path().join("a.json")).unwrap();
        assert_eq!(a, std::fs::read(dir.path().join("b.json")).unwrap());

        let systems = systems_from_json(std::str::from_utf8(&a).unwrap()).unwrap();
        let size = if k == "0" { 6 } else { 12 };
        assert!(!systems.is_empty() && systems.iter().all(|s| s.len() == size));

        let out = arcsys(&["classify", "a.json", "--out", "orbits.json"], dir.path());
        assert!(out.status.success());
        let want = if k == "0" { "6 classes" } else { "9 classes" };
        assert!(stdout(&out).lines().any(|l| l == want), "{}", stdout(&out));
        assert!(dir.path().join("orbits.json").exists());
    }
}

#[test]
fn classify_empty_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("empty.json"), "[]").unwrap();
    let out = arcsys(&["classify", "empty.json"], dir.path());
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 classes"));
}

#[test]
fn schema_mismatch_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = r#"[{"schema_version": 7, "surface": "sphere-4", "k": 0, "arcs": [],
        "derived": {"degree_vector": [0,0,0,0], "j_size": 0,
        "fingerprint": {"j_size": 0, "system_degrees": [0,0,0,0], "j_degrees": [0,0,0,0], "loop_count": 0}}}]"#;
    std::fs::write(dir.path().join("bad.json"), bad).unwrap();
    assert_eq!(arcsys(&["classify", "bad.json"], dir.path()).status.code(), Some(3));
    assert_eq!(arcsys(&["classify", "missing.json"], dir.path()).status.code(), Some(3));
}

#[test]
fn verify_passes_and_reports_everything() {
    let dir = tempfile::tempdir().unwrap();
    let out = arcsys(&["verify", "--out", "report.json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    let report: VerificationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.checks.len(), 12);
    assert!(report.passed());
    assert!(report.tau_star_reconciliation.is_some());
}

#[test]
fn injected_fault_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let out = arcsys(&["verify", "--inject-fault", "--check", "5", "--out", "r.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn exit_codes_for_budget_and_usage() {
    let dir = tempfile::tempdir().unwrap();
    let out = arcsys(&["enumerate", "--k", "1", "--budget", "5", "--out", "x.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("x.json").exists());
    assert_eq!(arcsys(&["enumerate", "--k", "2", "--out", "x.json"], dir.path()).status.code(), Some(3));
    assert_eq!(arcsys(&["enumerate", "--k", "0", "--bound", "6", "--check-bound", "3", "--out", "x.json"], dir.path()).status.code(), Some(3));
    assert_eq!(arcsys(&["frobnicate"], dir.path()).status.code(), Some(3));
}

#[test]
fn reference_output_matches_frozen_fixture() {
    let dir = tempfile::tempdir().unwrap();
    assert!(arcsys(&["reference", "--out", "ref.json"], dir.path()).status.success());
    let written = std::fs::read_to_string(dir.path().join("ref.json")).unwrap();
    assert_eq!(written, arcsys::reference::FROZEN);
}

#[test]
fn render_reference_and_empty_systems() {
    let dir = tempfile::tempdir().unwrap();
    assert!(arcsys(&["reference", "--out", "ref.json"], dir.path()).status.success());
    let out = arcsys(&["render", "ref.json", "--out", "fig.svg", "--view", "disk"], dir.path());
    assert!(out.status.success());
    assert!(dir.path().join("fig-0014.svg").exists());

    let empty = arcsys::records::systems_to_json(&[arcsys::ArcSystem::new([], 0).unwrap()]);
    std::fs::write(dir.path().join("empty.json"), empty).unwrap();
    assert!(arcsys(&["render", "empty.json", "--out", "empty.svg"], dir.path()).status.success());
    let svg = std::fs::read_to_string(dir.path().join("empty.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(!svg.contains("<path"));
    for label in ["a", "b", "c", "d"] {
        assert!(svg.contains(&format!(">{label}</text>")));
    }
}
