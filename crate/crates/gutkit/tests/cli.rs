//! Command-line behavior: exit codes, format discipline, determinism,
//! and the bundled fixtures.

use std::path::PathBuf;
use std::process::{Command, Output};

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_gutkit")
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(exe()).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn version_flag_prints_and_succeeds() {
    let out = run(&["--version"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("gutkit"));
}

#[test]
fn successful_commands_keep_stderr_empty() {
    for args in [
        vec!["branch", "SO(10)", "--to", "SU(5)xU(1)", "--irrep", "16"],
        vec!["model", "validate", &fixture("su5_three_gen.json")],
        vec!["rg", "unify", "--plan", &fixture("mssm_plan.json")],
        vec!["flavor", "ckm-estimate", "--eps", "0.2"],
        vec!["scan", "--n", "200"],
    ] {
        let out = run(&args.iter().map(|s| &**s).collect::<Vec<_>>());
        assert_eq!(code(&out), 0, "{args:?}");
        assert!(out.stderr.is_empty(), "stderr for {args:?}: {:?}", out.stderr);
    }
}

#[test]
fn branch_spinor_output_lists_the_three_terms() {
    let out = run(&["branch", "SO(10)", "--to", "SU(5)xU(1)", "--irrep", "16"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("10("), "{text}");
    assert!(text.contains("5bar("), "{text}");
    assert!(text.contains("1("), "{text}");
    assert!(text.contains("[dim 16]"), "{text}");
}

#[test]
fn branch_identity_embedding() {
    let out = run(&["branch", "SU(5)", "--to", "SU(5)", "--irrep", "adjoint"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("24"));
}

#[test]
fn branch_json_is_strict_json_with_conserved_dimension() {
    let out = run(&[
        "--format", "json", "branch", "E6", "--to", "SU(5)xU(1)xU(1)", "--irrep", "adjoint",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["dimension_sum"], 78);
    let names: Vec<&str> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|t| t["irreps"].as_array().unwrap().iter())
        .map(|s| s.as_str().unwrap())
        .collect();
    for needed in ["10", "10bar", "5", "5bar", "24"] {
        assert!(names.contains(&needed), "missing {needed} in {names:?}");
    }
}

#[test]
fn branch_unknown_algebra_exits_2() {
    let out = run(&["branch", "SO(11)", "--to", "SU(5)xU(1)", "--irrep", "16"]);
    assert_eq!(code(&out), 2);
    let out = run(&["branch", "SO(10)", "--to", "E6xU(1)", "--irrep", "16"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn model_validate_fixture_exits_0_and_reports_generations() {
    let out = run(&["model", "validate", &fixture("su5_three_gen.json")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("3 generations of 10"), "{text}");
    assert!(text.contains("3 generations of 5bar"), "{text}");
    assert!(text.contains("model valid"), "{text}");
}

#[test]
fn model_validate_json_report_is_a_violation_list() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    let mut graph: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("su5_three_gen.json")).unwrap())
            .unwrap();
    graph["points"][0]["curves"][0] = serde_json::json!("missing_curve");
    std::fs::write(&path, graph.to_string()).unwrap();

    let out = run(&["--format", "json", "model", "validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1, "broken reference is a domain failure");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let list = v.as_array().expect("JSON report is a list");
    assert!(list
        .iter()
        .any(|e| e["rule"] == "unresolved-reference" && e["message"].as_str().unwrap().contains("missing_curve")));
}

#[test]
fn model_validate_truncated_json_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trunc.json");
    let full = std::fs::read_to_string(fixture("su5_three_gen.json")).unwrap();
    std::fs::write(&path, &full[..full.len() / 2]).unwrap();
    let out = run(&["model", "validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn flavor_texture_matches_the_closed_form() {
    let out = run(&["--format", "json", "flavor", "texture", "--eps", "0.2"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let sigma = v["sigma"].as_array().unwrap();
    let s0 = sigma[0].as_f64().unwrap();
    assert!((s0 - 1.0416).abs() < 1e-9, "sigma1 = {s0}");
    assert!(sigma[1].as_f64().unwrap() < 1e-12);
}

#[test]
fn flavor_ckm_of_identical_files_is_the_identity() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("yukawa.json");
    // An arbitrary (non-degenerate) Yukawa matrix.
    std::fs::write(
        &path,
        r#"[[[0.9, 0.1], [0.2, 0.0], [0.05, -0.02]],
           [[0.1, -0.3], [0.5, 0.2], [0.01, 0.0]],
           [[0.0, 0.02], [0.3, 0.1], [0.2, 0.05]]]"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let out = run(&["--format", "json", "flavor", "ckm", "--up", p, "--down", p]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for (i, row) in v["matrix"].as_array().unwrap().iter().enumerate() {
        for (j, cell) in row.as_array().unwrap().iter().enumerate() {
            let re = cell[0].as_f64().unwrap();
            let im = cell[1].as_f64().unwrap();
            let expect = f64::from(i == j);
            assert!((re - expect).abs() < 1e-12 && im.abs() < 1e-12, "({i},{j})");
        }
    }
    assert!(v["theta12"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(v["delta"].as_f64().unwrap(), 0.0);
}

#[test]
fn flavor_spectrum_reports_singular_values_and_masses() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("diag.json");
    std::fs::write(
        &path,
        r#"[[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
           [[0.0, 0.0], [0.5, 0.0], [0.0, 0.0]],
           [[0.0, 0.0], [0.0, 0.0], [0.25, 0.0]]]"#,
    )
    .unwrap();
    let out = run(&[
        "--format", "json", "flavor", "spectrum",
        "--matrix", path.to_str().unwrap(),
        "--vev", "174.0",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["sigma"][0], 1.0);
    assert_eq!(v["sigma"][2], 0.25);
    assert_eq!(v["masses"][0], 174.0);
}

#[test]
fn flavor_ckm_estimate_values() {
    let out = run(&["--format", "json", "flavor", "ckm-estimate", "--eps", "0.2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0][1], 0.2);
    assert_eq!(v[1][2], 0.04000000000000001);
    assert_eq!(v[0][2], 0.008000000000000002);
    let bad = run(&["flavor", "ckm-estimate", "--eps", "1.5"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn rg_run_to_initial_scale_echoes_the_state() {
    let out = run(&[
        "--format", "json", "rg", "run", "--plan", &fixture("mssm_plan.json"), "--to", "91.19",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["mu"].as_f64().unwrap(), 91.19);
    let a = v["inv_alpha"].as_array().unwrap();
    assert!((a[0].as_f64().unwrap() - 59.013).abs() < 0.001);
}

#[test]
fn rg_unify_prints_the_window_and_csv_has_the_header() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("curve.csv");
    let out = run(&[
        "rg",
        "unify",
        "--plan",
        &fixture("mssm_plan.json"),
        "--csv",
        csv.to_str().unwrap(),
        "--points",
        "50",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("mu_star = 1.02"), "{}", stdout(&out));
    let curve = std::fs::read_to_string(&csv).unwrap();
    let mut lines = curve.lines();
    assert_eq!(lines.next().unwrap(), "mu_gev,inv_alpha1,inv_alpha2,inv_alpha3");
    assert_eq!(lines.count(), 50);
}

#[test]
fn rg_parallel_betas_fail_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("parallel.json");
    std::fs::write(
        &path,
        r#"{"initial": {"mu": 100.0, "inv_alpha": [50.0, 30.0, 10.0]},
            "thresholds": [{"mu": 100.0, "b": ["1", "1", "0"]}]}"#,
    )
    .unwrap();
    let out = run(&["rg", "unify", "--plan", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no unification"));
}

#[test]
fn rg_bad_plan_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"initial": {"mu": 100.0}}"#).unwrap();
    let out = run(&["rg", "unify", "--plan", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn scan_csv_format_rows() {
    let out = run(&["--format", "csv", "scan", "--n", "500"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "name,p16,median,p84");
    assert_eq!(lines.count(), 8);
}

#[test]
fn scan_with_zero_eps_suppresses_all_mixing() {
    let out = run(&["--format", "json", "scan", "--eps", "0", "--n", "500"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for obs in ["ckm_u12", "ckm_u23", "ckm_u13"] {
        let m = v["observables"][obs]["median"].as_f64().unwrap();
        assert!(m <= 1e-10, "{obs} median {m}");
    }
}

#[test]
fn scan_seed_flag_changes_the_draw_reproducibly() {
    let a1 = stdout(&run(&["--format", "json", "--seed", "7", "scan", "--n", "300"]));
    let a2 = stdout(&run(&["--format", "json", "--seed", "7", "scan", "--n", "300"]));
    let b = stdout(&run(&["--format", "json", "--seed", "8", "scan", "--n", "300"]));
    assert_eq!(a1, a2);
    assert_ne!(a1, b);
}

#[test]
fn fit_on_saturated_targets_reports_the_boundary() {
    let dir = tempfile::tempdir().unwrap();
    let targets = dir.path().join("ones.json");
    std::fs::write(
        &targets,
        r#"{"up_sigma21": 1.0, "up_sigma32": 1.0, "ckm_u12": 1.0, "ckm_u23": 1.0, "ckm_u13": 1.0}"#,
    )
    .unwrap();
    let config = dir.path().join("small.json");
    std::fs::write(&config, r#"{"n_samples": 300, "seed": 1}"#).unwrap();
    let out = run(&[
        "--format",
        "json",
        "--config",
        config.to_str().unwrap(),
        "fit",
        "--targets",
        targets.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["diagnostics"]["at_upper_bound"], true);
    assert!(v["eps_up"].as_f64().unwrap() > 0.4);
}

#[test]
fn csv_format_is_rejected_for_non_tabular_commands() {
    let out = run(&["--format", "csv", "branch", "SO(10)", "--to", "SU(5)xU(1)", "--irrep", "16"]);
    assert_eq!(code(&out), 2);
    let out = run(&["--format", "csv", "fit", "--targets", &fixture("targets_paper.json")]);
    assert_eq!(code(&out), 2);
}

#[test]
fn unknown_flags_are_rejected_by_the_parser() {
    let out = run(&["scan", "--frobnicate"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn missing_file_exits_2() {
    let out = run(&["model", "validate", "/nonexistent/model.json"]);
    assert_eq!(code(&out), 2);
    let missing: PathBuf = PathBuf::from("/nonexistent/plan.json");
    let out = run(&["rg", "unify", "--plan", missing.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn fixture_targets_file_parses_as_targets() {
    let text = std::fs::read_to_string(fixture("targets_paper.json")).unwrap();
    let t: gutkit_core::scan::Targets = serde_json::from_str(&text).unwrap();
    assert_eq!(t.ckm_u12, Some(0.23));
    assert_eq!(t.ckm_u23, Some(0.04));
    assert_eq!(t.ckm_u13, Some(0.004));
    assert!(t.validate().is_ok());
    assert!(!t.provenance.is_empty());
}
