use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    run_with(args, |_| {})
}

fn run_with(args: &[&str], setup: impl FnOnce(&mut Command)) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dgla-gr"));
    cmd.current_dir(env!("CARGO_MANIFEST_DIR")).args(args).env_remove("DGLA_GR_OUT");
    setup(&mut cmd);
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn algebra_check_passes_for_so3() {
    let out = run(&["algebra", "check", "examples/so3.json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc = stdout_json(&out);
    assert_eq!(doc["report"]["passed"], Value::Bool(true));
    assert_eq!(doc["manifest"]["command"], "algebra check");
    assert_eq!(doc["manifest"]["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn algebra_action_verdicts() {
    let ok = run(&["algebra", "action", "examples/so3.json", "examples/r3.json", "examples/so3_on_r3.json"]);
    assert_eq!(code(&ok), 0, "{}", stderr(&ok));

    let broken = run(&["algebra", "action", "examples/so3.json", "examples/r3.json", "examples/so3_on_r3_broken.json"]);
    assert_eq!(code(&broken), 1);
    assert!(stderr(&broken).contains("action homomorphism"));

    let literal =
        run(&["algebra", "action", "examples/so3.json", "examples/r3.json", "examples/so3_on_r3.json", "--sign", "literal"]);
    assert_eq!(code(&literal), 1);
    let doc = stdout_json(&literal);
    assert_eq!(doc["report"]["rejected"]["axiom"], "graded antisymmetry");
}

#[test]
fn usage_errors_exit_with_two() {
    let unknown = run(&["bogus"]);
    assert_eq!(code(&unknown), 2);
    assert!(stderr(&unknown).contains("Usage"));
    assert_eq!(code(&run(&["algebra", "check", "examples/missing.json"])), 2);
    assert_eq!(code(&run(&["algebra", "check", "examples/spherical_schwarzschild.json"])), 2);
    let short = run(&["convergence", "torsion", "--scenario", "examples/spherical_schwarzschild.json", "--Ns", "9,13"]);
    assert_eq!(code(&short), 2, "{}", stderr(&short));
    let label = run(&["killing", "residuals", "--scenario", "examples/spherical_schwarzschild.json", "--generators", "Q7"]);
    assert_eq!(code(&label), 2);
    let radius = run(&["mass", "adm", "--scenario", "examples/spherical_schwarzschild.json", "--radii", "8,19"]);
    assert_eq!(code(&radius), 2, "{}", stderr(&radius));
}

#[test]
fn flat_space_with_lambda_fails_the_field_equations() {
    let out = run(&["pc", "eom", "--scenario", "examples/minkowski_lambda1.json", "--Ns", "9,13"]);
    assert_eq!(code(&out), 1, "{}", stderr(&out));
    let csv = String::from_utf8(out.stdout).unwrap();
    let einstein = csv.lines().find(|l| l.starts_with("einstein")).unwrap();
    assert!(einstein.ends_with(",fail"), "{csv}");
    assert!(csv.lines().any(|l| l.starts_with("torsion") && l.ends_with(",exact")), "{csv}");
}

#[test]
fn adm_mass_of_spherical_scenario() {
    let out = run(&["mass", "adm", "--scenario", "examples/spherical_schwarzschild.json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = &stdout_json(&out)["report"];
    let e = report["extrapolated"].as_f64().unwrap();
    assert!((e - 1.0).abs() < 0.01, "{e}");
    assert_eq!(report["radii"].as_array().unwrap().len(), 3);
}

#[test]
fn exact_residuals_are_reported_as_exact() {
    let out = run(&[
        "convergence",
        "symmetry",
        "--scenario",
        "examples/poincare_minkowski.json",
        "--Ns",
        "9,13,17",
        "--generators",
        "P0,L1,L2,L3",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "generator,norm_N9,norm_N13,norm_N17,slope,verdict");
    for line in csv.lines().skip(1) {
        assert!(line.ends_with(",,exact"), "{line}");
    }
}

#[test]
fn spherical_killing_residuals_pass_for_four_generators() {
    let out = run(&["killing", "residuals", "--scenario", "examples/spherical_schwarzschild.json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let csv = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 4, "{csv}");
    assert!(rows.iter().all(|r| r.ends_with(",pass") || r.ends_with(",exact")), "{csv}");
}

fn listing(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> =
        std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect();
    names.sort();
    names
}

#[test]
fn output_directory_from_flag_or_environment() {
    let flag_dir = tempfile::tempdir().unwrap();
    let out = run(&["--out", flag_dir.path().to_str().unwrap(), "algebra", "check", "examples/so3.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(listing(flag_dir.path()), ["algebra_check.json"]);

    let env_dir = tempfile::tempdir().unwrap();
    let out = run_with(
        &["convergence", "torsion", "--scenario", "examples/spherical_schwarzschild.json", "--Ns", "9,13,17"],
        |c| {
            c.env("DGLA_GR_OUT", env_dir.path());
        },
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let names = listing(env_dir.path());
    assert_eq!(names.len(), 2, "{names:?}");
    let json = names.iter().find(|n| n.ends_with(".json")).unwrap();
    let csv = names.iter().find(|n| n.ends_with(".csv")).unwrap();
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(env_dir.path().join(json)).unwrap()).unwrap();
    assert_eq!(doc["manifest"]["grid"]["Ns"], serde_json::json!([9, 13, 17]));
    assert!(doc["manifest"]["thresholds"]["convergence"]["pass_slope"].is_number());
    assert_eq!(std::fs::read(env_dir.path().join(csv)).unwrap(), out.stdout);
}
