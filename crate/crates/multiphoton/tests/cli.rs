//! End-to-end tests of the `multiphoton` binary: subcommand output, exact
//! JSON round-trips, and the documented exit codes.

use std::process::{Command, Output};

use serde_json::Value;

use multiphoton::combinat::Composition;
use multiphoton::optics::{fourier, write_matrix};
use multiphoton::transition::p_quantum;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multiphoton"))
        .args(args)
        .env_remove("MULTIPHOTON_TOL")
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn dist_matches_the_three_photon_row_exactly() {
    let v = run_json(&["dist", "--bs", "0.5", "--input", "1,2"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let expected = [0.375, 0.125, 0.125, 0.375];
    let u = multiphoton::optics::beam_splitter(0.5).unwrap();
    let n = Composition::new([1, 2]);
    for (row, want) in rows.iter().zip(expected) {
        let p = row["p_boson"].as_f64().unwrap();
        assert!((p - want).abs() < 1e-12);
        // 17-digit serialization reproduces the in-memory value exactly.
        let counts: Vec<u32> = row["output"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap() as u32)
            .collect();
        let direct = p_quantum(&u, &n, &Composition::new(counts))
            .unwrap()
            .probability;
        assert_eq!(p.to_bits(), direct.to_bits(), "float round trip must be exact");
    }
}

#[test]
fn dist_output_is_deterministic() {
    let a = run(&["dist", "--fourier", "3", "--input", "1,1,1"]);
    let b = run(&["dist", "--fourier", "3", "--input", "1,1,1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn dist_fourier_tritter_balanced_value() {
    let v = run_json(&["dist", "--fourier", "3", "--input", "1,1,1"]);
    let row = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["output"] == serde_json::json!([1, 1, 1]))
        .unwrap();
    assert!((row["p_boson"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert!((row["ratio"].as_f64().unwrap() - 1.5).abs() < 1e-12);
    // Single photons on three ports: the fermionic column is live.
    assert!(row["p_fermion"].is_number());
}

#[test]
fn dist_identity_optics_is_a_point_mass() {
    let v = run_json(&["dist", "--bs", "1.0", "--input", "2,0"]);
    for row in v["rows"].as_array().unwrap() {
        let p = row["p_boson"].as_f64().unwrap();
        if row["output"] == serde_json::json!([2, 0]) {
            assert!((p - 1.0).abs() < 1e-12);
        } else {
            assert!(p < 1e-12);
        }
    }
}

#[test]
fn dist_csv_format() {
    let out = run(&["dist", "--bs", "0.5", "--input", "1,2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "output,p_boson,p_classical,p_fermion,ratio"
    );
    let body: Vec<&str> = lines.filter(|l| !l.is_empty()).collect();
    assert_eq!(body.len(), 4);
    // Decimal separator is '.', compositions are quoted.
    assert!(body[0].starts_with("\"[3,0]\"") || body[0].starts_with("\"3,0\""));
    assert!(body.iter().all(|l| !l.contains(';')));
}

#[test]
fn moments_reference_values() {
    let v = run_json(&["moments", "--bs", "0.5", "--input", "1,1", "--mode", "1"]);
    let rows = v["rows"].as_array().unwrap();
    let find = |quantity: &str, kind: &str| -> (f64, f64, f64) {
        let row = rows
            .iter()
            .find(|r| r["quantity"] == quantity && r["kind"] == kind)
            .unwrap_or_else(|| panic!("missing {quantity}/{kind}"));
        (
            row["closed_form"].as_f64().unwrap(),
            row["brute_force"].as_f64().unwrap(),
            row["abs_diff"].as_f64().unwrap(),
        )
    };
    let (vq, _, dq) = find("variance", "boson");
    assert!((vq - 1.0).abs() < 1e-12 && dq < 1e-10);
    let (vc, _, dc) = find("variance", "classical");
    assert!((vc - 0.5).abs() < 1e-12 && dc < 1e-10);
}

#[test]
fn moments_fourier_variance_ratio() {
    let v = run_json(&["moments", "--fourier", "3", "--input", "1,1,1", "--mode", "1"]);
    let rows = v["rows"].as_array().unwrap();
    let variance = |kind: &str| -> f64 {
        rows.iter()
            .find(|r| r["quantity"] == "variance" && r["kind"] == kind)
            .unwrap()["closed_form"]
            .as_f64()
            .unwrap()
    };
    assert!((variance("boson") / variance("classical") - 2.0).abs() < 1e-12);
}

#[test]
fn moments_collapse_in_the_classical_limit() {
    let v = run_json(&["moments", "--bs", "0.5", "--input", "2,0", "--mode", "1"]);
    let rows = v["rows"].as_array().unwrap();
    for quantity in ["factorial_moment_r2", "variance", "kappa3", "kappa4"] {
        let get = |kind: &str| -> f64 {
            rows.iter()
                .find(|r| r["quantity"] == quantity && r["kind"] == kind)
                .unwrap()["closed_form"]
                .as_f64()
                .unwrap()
        };
        assert_eq!(get("boson"), get("classical"), "{quantity}");
    }
}

#[test]
fn verify_small_grid_passes() {
    let out = run(&[
        "verify", "--k-max", "3", "--m-max", "4", "--seeds", "3",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], Value::Bool(true));
    assert!(v["max_oracle_deviation"].as_f64().unwrap() < 1e-10);
}

#[test]
fn verify_two_port_deep_grid_passes() {
    let out = run(&["verify", "--k", "2", "--m", "8", "--seeds", "5"]);
    assert_eq!(exit_code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], Value::Bool(true));
}

#[test]
fn verify_flags_a_non_unitary_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("skew.json");
    std::fs::write(
        &path,
        r#"{"k": 2, "re": [[1.01, 0.0], [0.0, 1.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}"#,
    )
    .unwrap();
    // Without the override the file is rejected outright (config error).
    let out = run(&["verify", "--matrix", path.to_str().unwrap(), "--m-max", "2"]);
    assert_eq!(exit_code(&out), 2);
    // With the override the run proceeds and the normalization check fails.
    let out = run(&[
        "verify",
        "--matrix",
        path.to_str().unwrap(),
        "--allow-nonunitary",
        "--m-max",
        "2",
    ]);
    assert_eq!(exit_code(&out), 4);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], Value::Bool(false));
    assert!(v["max_normalization_deviation"].as_f64().unwrap() > 1e-3);
}

#[test]
fn suppress_reference_scans() {
    let v = run_json(&["suppress", "--fourier", "3", "--input", "2,1,0"]);
    let rows = v["rows"].as_array().unwrap();
    let hit = rows
        .iter()
        .find(|r| r["output"] == serde_json::json!([1, 1, 1]))
        .expect("(1,1,1) listed");
    assert_eq!(hit["rule"], serde_json::json!("z3-balanced"));

    let v = run_json(&["suppress", "--bs", "0.5", "--input", "3,3"]);
    let outputs: Vec<&Value> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| &r["output"])
        .collect();
    assert_eq!(outputs.len(), 3);
    for want in [[5, 1], [3, 3], [1, 5]] {
        assert!(outputs.iter().any(|o| **o == serde_json::json!(want)));
    }

    let v = run_json(&["suppress", "--bs", "0.5", "--input", "2,0"]);
    assert!(v["rows"].as_array().unwrap().is_empty());
}

#[test]
fn matrix_files_feed_every_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tritter.json");
    write_matrix(&path, &fourier(3)).unwrap();
    let v = run_json(&[
        "dist", "--matrix", path.to_str().unwrap(), "--input", "1,1,1",
    ]);
    let row = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["output"] == serde_json::json!([1, 1, 1]))
        .unwrap();
    assert!((row["p_boson"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn config_errors_exit_with_two() {
    // No matrix source.
    assert_eq!(exit_code(&run(&["dist", "--input", "1,1"])), 2);
    // Two matrix sources.
    assert_eq!(
        exit_code(&run(&[
            "dist", "--bs", "0.5", "--fourier", "3", "--input", "1,1"
        ])),
        2
    );
    // Composition length mismatch.
    assert_eq!(
        exit_code(&run(&["dist", "--fourier", "3", "--input", "1,1"])),
        2
    );
    // Unparseable composition (clap-level usage error).
    assert_eq!(
        exit_code(&run(&["dist", "--bs", "0.5", "--input", "1,x"])),
        2
    );
    // Transmittance out of range.
    assert_eq!(
        exit_code(&run(&["dist", "--bs", "1.5", "--input", "1,1"])),
        2
    );
    // Missing matrix file.
    assert_eq!(
        exit_code(&run(&["dist", "--matrix", "/nonexistent.json", "--input", "1,1"])),
        2
    );
    // Bad mode index.
    assert_eq!(
        exit_code(&run(&[
            "moments", "--bs", "0.5", "--input", "1,1", "--mode", "3"
        ])),
        2
    );
}

#[test]
fn capacity_errors_exit_with_three() {
    let ones = vec!["1"; 36].join(",");
    let out = run(&["dist", "--fourier", "36", "--input", &ones]);
    assert_eq!(exit_code(&out), 3);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("128-bit"), "stderr: {stderr}");
}

#[test]
fn tolerance_env_var_is_honored() {
    // An absurdly large threshold turns every output into a "suppression".
    let out = Command::new(env!("CARGO_BIN_EXE_multiphoton"))
        .args(["suppress", "--bs", "0.5", "--input", "1,1"])
        .env("MULTIPHOTON_TOL", "10.0")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);

    // A malformed value is a config error.
    let out = Command::new(env!("CARGO_BIN_EXE_multiphoton"))
        .args(["suppress", "--bs", "0.5", "--input", "1,1"])
        .env("MULTIPHOTON_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn help_exits_cleanly() {
    assert_eq!(exit_code(&run(&["--help"])), 0);
    assert_eq!(exit_code(&run(&["dist", "--help"])), 0);
}
