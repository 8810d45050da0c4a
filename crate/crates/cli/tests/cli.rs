//! End-to-end tests of the `dihedral` binary: golden-file byte equality,
//! determinism, exit codes and output schemas.

use std::process::{Command, Output};

fn dihedral(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dihedral"))
        .args(args)
        .env_remove("WEDGE_TOL")
        .output()
        .expect("binary runs")
}

const EVAL_ARGS: &[&str] = &[
    "eval",
    "--state",
    r#"{"system":"osc","family":"cyl","n_rho":0,"n_z":0,"n_phi":1,"phi0":6.283185307}"#,
    "--at",
    "rho=1,phi=1,z=0",
];

const SPHEROIDAL_ARGS: &[&str] = &["spheroidal", "--mu", "0.5", "--f", "1", "--N", "1"];

const INTERBASIS_ARGS: &[&str] = &[
    "interbasis",
    "--system",
    "hydrogen",
    "--pair",
    "sph-par",
    "--N",
    "1",
    "--mu",
    "1",
];

#[test]
fn golden_eval() {
    let out = dihedral(EVAL_ARGS);
    assert!(out.status.success());
    assert_eq!(
        out.stdout,
        include_bytes!("golden/eval_osc_ground.json"),
        "golden mismatch:\n{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn golden_spheroidal() {
    let out = dihedral(SPHEROIDAL_ARGS);
    assert!(out.status.success());
    assert_eq!(out.stdout, include_bytes!("golden/spheroidal_n1.json"));
    // tabulated eigenvalues are the quadratic roots {-0.8, 3.0}
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["A"][0].as_f64().unwrap() + 0.8).abs() < 1e-10);
    assert!((v["A"][1].as_f64().unwrap() - 3.0).abs() < 1e-10);
}

#[test]
fn golden_interbasis() {
    let out = dihedral(INTERBASIS_ARGS);
    assert!(out.status.success());
    assert_eq!(out.stdout, include_bytes!("golden/interbasis_hyd_n1.json"));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let m = &v["transform"]["matrix"];
    let s = std::f64::consts::FRAC_1_SQRT_2;
    assert!((m[0][0].as_f64().unwrap() - s).abs() < 1e-12);
    assert!((m[0][1].as_f64().unwrap() + s).abs() < 1e-12);
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [EVAL_ARGS, SPHEROIDAL_ARGS, INTERBASIS_ARGS] {
        let a = dihedral(args);
        let b = dihedral(args);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn artifacts_reparse_as_json() {
    for args in [EVAL_ARGS, SPHEROIDAL_ARGS, INTERBASIS_ARGS] {
        let out = dihedral(args);
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(v.is_object());
    }
    // eval's embedded state re-parses into the originating state spec
    let out = dihedral(EVAL_ARGS);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let state_text = v["state"].to_string();
    let spec: dihedral_core::states::StateSpec = serde_json::from_str(&state_text).unwrap();
    let state = dihedral_core::Eigenstate::from_spec(&spec).unwrap();
    assert_eq!(state.quantum_numbers(), (0, 0));
}

#[test]
fn usage_errors_exit_2() {
    let out = dihedral(&["eval", "--state", "{not json", "--at", "rho=1,phi=0.5,z=0"]);
    assert_eq!(out.status.code(), Some(2));

    let out = dihedral(&["eval", "--state", r#"{"system":"osc","family":"cyl"}"#, "--at", "rho=1,phi=0.5,z=0"]);
    assert_eq!(out.status.code(), Some(2));

    // out-of-wedge phi
    let out = dihedral(&[
        "eval",
        "--state",
        r#"{"system":"osc","family":"cyl","n_rho":0,"n_z":0,"n_phi":1,"phi0":1.0}"#,
        "--at",
        "rho=1,phi=2.0,z=0",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = dihedral(&["interbasis", "--system", "osc", "--pair", "nope", "--N", "2", "--mu", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ladder_subcommand() {
    let out = dihedral(&[
        "ladder",
        "--state",
        r#"{"system":"osc","family":"cyl","n_rho":0,"n_z":0,"n_phi":1,"phi0":3.141592653589793}"#,
        "--dof",
        "axial",
        "--direction",
        "raise",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["to"]["n_z"], 1);
    assert!((v["delta_energy"].as_f64().unwrap() - 1.0).abs() < 1e-14);

    // lowering the ground state annihilates
    let out = dihedral(&[
        "ladder",
        "--state",
        r#"{"system":"osc","family":"cyl","n_rho":0,"n_z":0,"n_phi":1,"phi0":3.141592653589793}"#,
        "--dof",
        "radial",
        "--direction",
        "lower",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["annihilated"], true);
    assert!(v["to"].is_null());
}

#[test]
fn spectrum_ordering() {
    let out = dihedral(&[
        "spectrum", "--system", "osc", "--family", "cyl", "--N", "4", "--mu", "0.5",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let states = v["states"].as_array().unwrap();
    let qns: Vec<(i64, i64)> = states
        .iter()
        .map(|s| (s["n_rho"].as_i64().unwrap(), s["n_z"].as_i64().unwrap()))
        .collect();
    assert_eq!(qns, vec![(2, 0), (1, 2), (0, 4)]);
}

#[test]
fn sample_grid_header_and_shape() {
    let out = dihedral(&[
        "sample-grid",
        "--state",
        r#"{"system":"osc","family":"cyl","n_rho":0,"n_z":1,"n_phi":1,"phi0":3.141592653589793}"#,
        "--chart",
        "cylindrical",
        "--bounds",
        "rho=0.5:2,phi=0.7:0.7,z=-1:1",
        "--counts",
        "3,1,5",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "chart,c1,c2,c3,psi");
    assert_eq!(lines.len(), 1 + 3 * 5);
    // row-major: first block shares c1
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first[0], "cylindrical");

    // empty grid gives a header-only file
    let out = dihedral(&[
        "sample-grid",
        "--state",
        r#"{"system":"osc","family":"cyl","n_rho":0,"n_z":1,"n_phi":1,"phi0":3.141592653589793}"#,
        "--chart",
        "cylindrical",
        "--bounds",
        "rho=0.5:2,phi=0.7:0.7,z=-1:1",
        "--counts",
        "0,1,5",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "chart,c1,c2,c3,psi\n");
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = dihedral(&[
        "spheroidal", "--mu", "0.5", "--f", "1", "--N", "1",
        "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let from_file = std::fs::read(&path).unwrap();
    let direct = dihedral(SPHEROIDAL_ARGS);
    assert_eq!(from_file, direct.stdout);
}

#[test]
fn verify_passes_and_respects_wedge_tol() {
    let out = dihedral(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);

    // absurdly tight tolerance must fail with exit code 1
    let out = Command::new(env!("CARGO_BIN_EXE_dihedral"))
        .args(["verify"])
        .env("WEDGE_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
}
