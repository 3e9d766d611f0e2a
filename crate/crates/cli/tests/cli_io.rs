//! End-to-end runs of the built binary: formats, exit codes, determinism,
//! and the saved-state resume property.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_catca"))
}

fn write_tmp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("catca-cli-io");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn rule90_file() -> PathBuf {
    write_tmp(
        "rule90.json",
        r#"{"group": {"kind": "z-power", "d": 1},
            "instance": "finvect",
            "A": {"instance": "finvect", "p": 2, "dim": 1},
            "B": {"instance": "finvect", "p": 2, "dim": 1},
            "S": [[-1], [1]],
            "mu": {"instance": "finvect", "p": 2, "matrix": [[1, 1]]}}"#,
    )
}

fn seed_file() -> PathBuf {
    write_tmp(
        "seed.json",
        r#"{"kind": "sparse", "default": [0], "support": [[[0], [1]]]}"#,
    )
}

fn run_ok(args: &[&str]) -> Output {
    let out = binary().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

#[test]
fn run_emits_the_expected_text_rows() {
    let ca = rule90_file();
    let config = seed_file();
    let out = run_ok(&[
        "run",
        "--ca",
        ca.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
        "--steps",
        "2",
        "--radius",
        "2",
        "--format",
        "text",
    ]);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "00100\n01010\n10001\n"
    );
}

#[test]
fn run_with_zero_steps_echoes_the_window() {
    let ca = rule90_file();
    let config = seed_file();
    let out = run_ok(&[
        "run",
        "--ca",
        ca.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
        "--radius",
        "1",
    ]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "010\n");
}

#[test]
fn runs_are_byte_identical() {
    let ca = rule90_file();
    let config = seed_file();
    let args = [
        "run",
        "--ca",
        ca.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
        "--steps",
        "6",
        "--radius",
        "6",
        "--format",
        "pgm",
    ];
    let a = run_ok(&args);
    let b = run_ok(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn resuming_from_saved_state_matches_the_longer_run() {
    // steps = a followed by steps = b from the emitted state agrees with
    // steps = a + b on the window shrunk by the extra radius.
    let ca = rule90_file();
    let config = seed_file();
    let (a_steps, b_steps, radius) = (3usize, 2usize, 8i64);
    let first = run_ok(&[
        "run",
        "--ca",
        ca.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
        "--steps",
        &a_steps.to_string(),
        "--radius",
        &radius.to_string(),
        "--format",
        "json",
    ]);
    let lines: Vec<serde_json::Value> = String::from_utf8(first.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let last = &lines[a_steps];
    // Rebuild a sparse configuration from the saved frame.
    let support: Vec<serde_json::Value> = last["cells"].as_array().unwrap().clone();
    let resumed_config = write_tmp(
        "resume.json",
        &serde_json::json!({
            "kind": "sparse",
            "default": last["default"],
            "support": support,
        })
        .to_string(),
    );
    let resumed = run_ok(&[
        "run",
        "--ca",
        ca.to_str().unwrap(),
        "--config",
        resumed_config.to_str().unwrap(),
        "--steps",
        &b_steps.to_string(),
        "--radius",
        &(radius - b_steps as i64).to_string(),
        "--format",
        "json",
    ]);
    let resumed_lines: Vec<serde_json::Value> = String::from_utf8(resumed.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let direct = run_ok(&[
        "run",
        "--ca",
        ca.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
        "--steps",
        &(a_steps + b_steps).to_string(),
        "--radius",
        &(radius - b_steps as i64).to_string(),
        "--format",
        "json",
    ]);
    let direct_lines: Vec<serde_json::Value> = String::from_utf8(direct.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(
        resumed_lines[b_steps]["cells"],
        direct_lines[a_steps + b_steps]["cells"]
    );
}

#[test]
fn parse_and_typing_exit_codes() {
    let ca = rule90_file();
    let config = seed_file();
    // Unreadable automaton file: parse error, exit 2.
    let out = binary()
        .args([
            "run",
            "--ca",
            "/nonexistent.json",
            "--config",
            config.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Mismatched pinned universe: typing error, exit 3.
    let wrong_group = write_tmp(
        "z2.json",
        r#"{"kind": "finite-table", "table": [[0,1],[1,0]], "identity": 0}"#,
    );
    let out = binary()
        .args([
            "run",
            "--ca",
            ca.to_str().unwrap(),
            "--group",
            wrong_group.to_str().unwrap(),
            "--config",
            config.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // Configuration with an out-of-range value: typing error, exit 3.
    let bad_config = write_tmp(
        "bad.json",
        r#"{"kind": "sparse", "default": [7], "support": []}"#,
    );
    let out = binary()
        .args([
            "run",
            "--ca",
            ca.to_str().unwrap(),
            "--config",
            bad_config.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // Unknown suite: exit 2.
    let out = binary()
        .args(["check", "--suite", "nonsense"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Unknown demo: exit 2.
    let out = binary().args(["demo", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_stream_is_reproducible_across_processes() {
    let args = [
        "check", "--suite", "all", "--seed", "31337", "--cases", "3", "--radius", "2",
    ];
    let a = run_ok(&args);
    let b = run_ok(&args);
    assert_eq!(a.stdout, b.stdout);
    let lines = String::from_utf8(a.stdout).unwrap();
    assert_eq!(lines.lines().count(), 18);
    for line in lines.lines() {
        let report: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(report["verdict"], "pass");
        assert_eq!(report["seed"], 31337);
    }
}

#[test]
fn single_suite_check_reports_one_line() {
    let out = run_ok(&["check", "--suite", "shift-action", "--seed", "5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    let report: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(report["check"], "shift-action");
}

#[test]
fn demo_writes_artifacts_to_the_output_directory() {
    let dir = std::env::temp_dir().join("catca-demo-io");
    let _ = fs::remove_dir_all(&dir);
    run_ok(&["demo", "subsample", "--out", dir.to_str().unwrap()]);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("subsample.json")).unwrap()).unwrap();
    assert_eq!(report["demo"], "subsample");
    // Every sampled cell equals the source cell at the doubled position.
    let source = report["source"]["cells"].as_array().unwrap();
    let sampled = report["sampled"]["cells"].as_array().unwrap();
    for entry in sampled {
        let h = entry[0][0].as_i64().unwrap();
        let source_entry = source
            .iter()
            .find(|cell| cell[0][0].as_i64() == Some(2 * h))
            .expect("doubled cell inside the source window");
        assert_eq!(entry[1], source_entry[1]);
    }
}

#[test]
fn generalized_automaton_runs_when_universes_coincide() {
    // Subsampling along the doubling map of the integers: cell h of the
    // output reads cell 2h of the input.
    let gca = write_tmp(
        "doubling.json",
        r#"{"group": {"kind": "z-power", "d": 1},
            "instance": "finset",
            "A": {"instance": "finset", "size": 2},
            "B": {"instance": "finset", "size": 2},
            "S": [[0]],
            "mu": {"instance": "finset", "table": [0, 1]},
            "target_group": {"kind": "z-power", "d": 1},
            "hom": {"rule": "matrix", "matrix": [[2]]}}"#,
    );
    let config = write_tmp(
        "spike-at-two.json",
        r#"{"kind": "sparse", "default": 0, "support": [[[2], 1]]}"#,
    );
    let out = run_ok(&[
        "run",
        "--ca",
        gca.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
        "--steps",
        "1",
        "--radius",
        "2",
    ]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "00001\n00010\n");

    // Universes that differ make iteration ill-typed: exit 3.
    let mismatched = write_tmp(
        "plane-to-line.json",
        r#"{"group": {"kind": "z-power", "d": 1},
            "instance": "finset",
            "A": {"instance": "finset", "size": 2},
            "B": {"instance": "finset", "size": 2},
            "S": [[0]],
            "mu": {"instance": "finset", "table": [0, 1]},
            "target_group": {"kind": "z-power", "d": 2},
            "hom": {"rule": "matrix", "matrix": [[1, 0]]}}"#,
    );
    let out = binary()
        .args([
            "run",
            "--ca",
            mismatched.to_str().unwrap(),
            "--config",
            config.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn corrupted_realized_morphism_fails_with_a_counterexample() {
    // The identity morphism on two cells over Z_2 has table [0, 1, 2, 3];
    // swapping one output breaks equivariance.
    let good = write_tmp(
        "realized-good.json",
        r#"{"group": {"kind": "finite-table", "table": [[0,1],[1,0]], "identity": 0},
            "instance": "finset",
            "A": {"instance": "finset", "size": 2},
            "B": {"instance": "finset", "size": 2},
            "f": {"instance": "finset", "table": [0, 1, 2, 3]}}"#,
    );
    let out = run_ok(&[
        "check",
        "--suite",
        "equivariance",
        "--input",
        good.to_str().unwrap(),
    ]);
    let report: serde_json::Value =
        serde_json::from_str(String::from_utf8(out.stdout).unwrap().trim()).unwrap();
    assert_eq!(report["verdict"], "pass");

    let corrupted = write_tmp(
        "realized-corrupt.json",
        r#"{"group": {"kind": "finite-table", "table": [[0,1],[1,0]], "identity": 0},
            "instance": "finset",
            "A": {"instance": "finset", "size": 2},
            "B": {"instance": "finset", "size": 2},
            "f": {"instance": "finset", "table": [0, 2, 2, 3]}}"#,
    );
    let out = binary()
        .args([
            "check",
            "--suite",
            "equivariance",
            "--input",
            corrupted.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value =
        serde_json::from_str(String::from_utf8(out.stdout).unwrap().trim()).unwrap();
    assert_eq!(report["verdict"], "fail");
    assert!(report["counterexample"]["shift"].is_number());

    // Extraction over the same file recovers an automaton and embeds it.
    let out = run_ok(&[
        "check",
        "--suite",
        "extract",
        "--input",
        good.to_str().unwrap(),
    ]);
    let report: serde_json::Value =
        serde_json::from_str(String::from_utf8(out.stdout).unwrap().trim()).unwrap();
    assert_eq!(report["verdict"], "pass");
    assert_eq!(report["details"]["automaton"]["S"], serde_json::json!([0]));

    // The uniformity report lists one minimal neighborhood per cell.
    let out = run_ok(&[
        "check",
        "--suite",
        "uniform",
        "--input",
        good.to_str().unwrap(),
    ]);
    let report: serde_json::Value =
        serde_json::from_str(String::from_utf8(out.stdout).unwrap().trim()).unwrap();
    assert_eq!(report["details"]["per_cell"].as_array().unwrap().len(), 2);
    assert_eq!(report["details"]["neighborhoods_are_translates"], true);
}

#[test]
fn inline_identity_automaton_emits_constant_frames() {
    let identity = r#"{"group": {"kind": "z-power", "d": 1},
        "instance": "finset",
        "A": {"instance": "finset", "size": 2},
        "B": {"instance": "finset", "size": 2},
        "S": [[0]],
        "mu": {"instance": "finset", "table": [0, 1]}}"#;
    let config = write_tmp(
        "id-seed.json",
        r#"{"kind": "sparse", "default": 0, "support": [[[0], 1]]}"#,
    );
    let out = run_ok(&[
        "run",
        "--inline",
        identity,
        "--config",
        config.to_str().unwrap(),
        "--steps",
        "3",
        "--radius",
        "2",
    ]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "00100\n".repeat(4));
}

#[test]
fn explicit_window_overrides_radius() {
    let ca = rule90_file();
    let config = seed_file();
    let out = run_ok(&[
        "run",
        "--ca",
        ca.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
        "--steps",
        "1",
        "--window",
        "[[-1],[1]]",
    ]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "00\n11\n");
}
