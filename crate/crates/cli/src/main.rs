//! `dihedral` — evaluate confined-oscillator and confined-hydrogen
//! eigenfunctions on grids, apply ladder operators, solve spheroidal
//! spectra, emit interbasis matrices, and run the verification suite.
//!
//! All outputs are machine readable and byte-for-byte deterministic for
//! identical invocations. Exit codes: 0 success, 1 verification failure,
//! 2 usage/validation error, 3 numeric failure.

mod emit;
mod verify;

use clap::{Parser, Subcommand};
use dihedral_core::interbasis::{
    hydrogen_sph_par_matrix, hydrogen_sph_spheroidal_matrix, osc_interbasis_matrix,
    TransformMatrix,
};
use dihedral_core::ladders::{apply_ladder, Direction, Dof};
use dihedral_core::spheroidal::{
    build_tridiagonal, ode_derive_recurrence, solve_ode_derived, solve_spheroidal, SpheroidalSpec,
};
use dihedral_core::states::{eval_eigenfunction, multiplet, Family, StateSpec};
use dihedral_core::{AngularMode, CoordinatePoint, Eigenstate, Error};
use emit::{fmt_f64, Json};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "dihedral", version, about = "Quantum systems confined by a dihedral angle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an eigenfunction at a point.
    Eval {
        /// State as inline JSON or @path to a JSON file.
        #[arg(long)]
        state: String,
        /// Point as comma-separated coordinates, e.g. rho=1,phi=0.5,z=0;
        /// the chart is inferred from the coordinate names.
        #[arg(long)]
        at: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Apply a raising or lowering operator to a state.
    Ladder {
        #[arg(long)]
        state: String,
        /// One of: angular, radial, axial, polar.
        #[arg(long)]
        dof: String,
        /// raise or lower.
        #[arg(long)]
        direction: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List a degenerate multiplet with energies.
    Spectrum {
        #[arg(long)]
        system: String,
        #[arg(long)]
        family: String,
        #[arg(long = "N")]
        n_total: u32,
        #[arg(long)]
        n_phi: Option<u32>,
        #[arg(long)]
        phi0: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
        /// Focal half-distance (spheroidal family only).
        #[arg(long)]
        f: Option<f64>,
        /// json (default) or csv.
        #[arg(long)]
        format: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Solve the spheroidal three-term recurrence spectrum.
    Spheroidal {
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        n_phi: Option<u32>,
        #[arg(long)]
        phi0: Option<f64>,
        #[arg(long)]
        f: f64,
        #[arg(long = "N")]
        n_total: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit an interbasis transformation matrix.
    Interbasis {
        #[arg(long)]
        system: String,
        /// cyl-sph (oscillator), sph-par or sph-spheroidal (hydrogen).
        #[arg(long)]
        pair: String,
        #[arg(long = "N")]
        n_total: u32,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        n_phi: Option<u32>,
        #[arg(long)]
        phi0: Option<f64>,
        #[arg(long)]
        f: Option<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run every invariant suite; exit 0 only if all pass.
    Verify {
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sample an eigenfunction on a grid and emit CSV
    /// (`chart,c1,c2,c3,psi`, row-major).
    SampleGrid {
        #[arg(long)]
        state: String,
        /// cartesian, cylindrical, spherical, parabolic, prolate-spheroidal.
        #[arg(long)]
        chart: String,
        /// Per-coordinate ranges, e.g. rho=0.1:3,phi=0.5:0.5,z=-3:3.
        #[arg(long)]
        bounds: String,
        /// Per-coordinate sample counts, e.g. 10,1,10.
        #[arg(long)]
        counts: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 2 }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::EigenSolve(_) | Error::IllConditioned(_) => 3,
            _ => 2,
        };
        CliError { message: e.to_string(), code }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { message: e.to_string(), code: 2 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn write_bytes(output: &Option<PathBuf>, bytes: &[u8]) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn parse_state(arg: &str) -> Result<Eigenstate, CliError> {
    let text = if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)?
    } else {
        arg.to_string()
    };
    let spec: StateSpec = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("invalid state JSON: {e}")))?;
    Ok(Eigenstate::from_spec(&spec)?)
}

fn parse_point(arg: &str, state: &Eigenstate) -> Result<CoordinatePoint, CliError> {
    let mut kv = Vec::new();
    for part in arg.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("bad coordinate '{part}'")))?;
        let x: f64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad number '{v}'")))?;
        kv.push((k.trim().to_string(), x));
    }
    kv.sort_by(|a, b| a.0.cmp(&b.0));
    let names: Vec<&str> = kv.iter().map(|(k, _)| k.as_str()).collect();
    let get = |name: &str| kv.iter().find(|(k, _)| k == name).map(|(_, v)| *v).unwrap();
    let point = match names.as_slice() {
        ["phi", "rho", "z"] => CoordinatePoint::Cylindrical {
            rho: get("rho"),
            phi: get("phi"),
            z: get("z"),
        },
        ["phi", "r", "theta"] => CoordinatePoint::Spherical {
            r: get("r"),
            theta: get("theta"),
            phi: get("phi"),
        },
        ["eta", "phi", "xi"] => CoordinatePoint::Parabolic {
            xi: get("xi"),
            eta: get("eta"),
            phi: get("phi"),
        },
        ["phi", "u", "v"] => {
            let f = match state {
                Eigenstate::HydSpheroidal { f, .. } => *f,
                _ => {
                    return Err(CliError::usage(
                        "u,v,phi points need a spheroidal state to supply f",
                    ))
                }
            };
            CoordinatePoint::ProlateSpheroidal { u: get("u"), v: get("v"), phi: get("phi"), f }
        }
        ["x", "y", "z"] => CoordinatePoint::Cartesian {
            x: get("x"),
            y: get("y"),
            z: get("z"),
        },
        _ => {
            return Err(CliError::usage(format!(
                "unrecognized coordinate set {names:?}; expected one of \
                 (rho,phi,z), (r,theta,phi), (xi,eta,phi), (u,v,phi), (x,y,z)"
            )))
        }
    };
    Ok(point)
}

fn mode_from_args(
    mu: Option<f64>,
    n_phi: Option<u32>,
    phi0: Option<f64>,
) -> Result<AngularMode, CliError> {
    match (mu, n_phi, phi0) {
        (Some(mu), None, None) => Ok(AngularMode::from_mu(mu)?),
        (None, Some(n), Some(p)) => Ok(AngularMode::new(n, p)?),
        _ => Err(CliError::usage(
            "provide either --mu or both --n-phi and --phi0",
        )),
    }
}

fn state_json(state: &Eigenstate) -> Json {
    let spec = state.to_spec();
    let mut fields: Vec<(&'static str, Json)> = vec![
        ("system", Json::Str(spec.system.clone())),
        ("family", Json::Str(spec.family.clone())),
    ];
    let mut add_u32 = |name: &'static str, v: Option<u32>| {
        if let Some(v) = v {
            fields.push((name, Json::Int(v as i64)));
        }
    };
    add_u32("n_rho", spec.n_rho);
    add_u32("n_z", spec.n_z);
    add_u32("n_r", spec.n_r);
    add_u32("n_theta", spec.n_theta);
    add_u32("n_xi", spec.n_xi);
    add_u32("n_eta", spec.n_eta);
    add_u32("n_u", spec.n_u);
    add_u32("n_v", spec.n_v);
    add_u32("n_phi", spec.n_phi);
    if let Some(p) = spec.phi0 {
        fields.push(("phi0", Json::Num(p)));
    }
    if let Some(m) = spec.mu {
        fields.push(("mu", Json::Num(m)));
        fields.push(("abstract_mu", Json::Bool(true)));
    }
    if let Some(f) = spec.f {
        fields.push(("f", Json::Num(f)));
    }
    fields.push(("mu_value", Json::Num(state.mode().mu())));
    fields.push(("energy", Json::Num(state.energy())));
    if let Some(nu) = state.nu() {
        fields.push(("nu", Json::Num(nu)));
    }
    Json::Obj(fields)
}

fn point_json(point: &CoordinatePoint) -> Json {
    let mut fields: Vec<(&'static str, Json)> =
        vec![("chart", Json::Str(point.chart_name().into()))];
    match *point {
        CoordinatePoint::Cartesian { x, y, z } => {
            fields.push(("x", Json::Num(x)));
            fields.push(("y", Json::Num(y)));
            fields.push(("z", Json::Num(z)));
        }
        CoordinatePoint::Cylindrical { rho, phi, z } => {
            fields.push(("rho", Json::Num(rho)));
            fields.push(("phi", Json::Num(phi)));
            fields.push(("z", Json::Num(z)));
        }
        CoordinatePoint::Spherical { r, theta, phi } => {
            fields.push(("r", Json::Num(r)));
            fields.push(("theta", Json::Num(theta)));
            fields.push(("phi", Json::Num(phi)));
        }
        CoordinatePoint::Parabolic { xi, eta, phi } => {
            fields.push(("xi", Json::Num(xi)));
            fields.push(("eta", Json::Num(eta)));
            fields.push(("phi", Json::Num(phi)));
        }
        CoordinatePoint::ProlateSpheroidal { u, v, phi, f } => {
            fields.push(("u", Json::Num(u)));
            fields.push(("v", Json::Num(v)));
            fields.push(("phi", Json::Num(phi)));
            fields.push(("f", Json::Num(f)));
        }
    }
    Json::Obj(fields)
}

fn family_from_args(system: &str, family: &str) -> Result<Family, CliError> {
    match (system, family) {
        ("osc", "cyl") => Ok(Family::OscCyl),
        ("osc", "sph") => Ok(Family::OscSph),
        ("hydrogen", "sph") => Ok(Family::HydSph),
        ("hydrogen", "par") => Ok(Family::HydPar),
        ("hydrogen", "spheroidal") => Ok(Family::HydSpheroidal),
        _ => Err(CliError::usage(format!(
            "unknown system/family {system}/{family}"
        ))),
    }
}

fn matrix_json(t: &TransformMatrix) -> Json {
    Json::Obj(vec![
        ("rows", Json::Arr(t.row_states.iter().map(state_json).collect())),
        ("cols", Json::Arr(t.col_states.iter().map(state_json).collect())),
        ("orthonormal_expected", Json::Bool(t.orthonormal_expected)),
        ("matrix", Json::num_matrix(&t.entries)),
    ])
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Eval { state, at, output } => {
            let s = parse_state(&state)?;
            let p = parse_point(&at, &s)?;
            let psi = eval_eigenfunction(&s, &p)?;
            let doc = Json::Obj(vec![
                ("state", state_json(&s)),
                ("point", point_json(&p)),
                ("psi", Json::Num(psi)),
            ]);
            write_bytes(&output, &doc.to_bytes())?;
            Ok(0)
        }
        Command::Ladder { state, dof, direction, output } => {
            let s = parse_state(&state)?;
            let dof = match dof.as_str() {
                "angular" => Dof::Angular,
                "radial" => Dof::Radial,
                "axial" => Dof::Axial,
                "polar" => Dof::Polar,
                other => return Err(CliError::usage(format!("unknown dof '{other}'"))),
            };
            let dir = match direction.as_str() {
                "raise" => Direction::Raise,
                "lower" => Direction::Lower,
                other => return Err(CliError::usage(format!("unknown direction '{other}'"))),
            };
            let result = apply_ladder(&s, dof, dir)?;
            let doc = match result {
                Some((to, scalar)) => Json::Obj(vec![
                    ("from", state_json(&s)),
                    ("to", state_json(&to)),
                    ("scalar", Json::Num(scalar)),
                    ("annihilated", Json::Bool(false)),
                    ("delta_energy", Json::Num(to.energy() - s.energy())),
                ]),
                None => Json::Obj(vec![
                    ("from", state_json(&s)),
                    ("to", Json::Null),
                    ("scalar", Json::Num(0.0)),
                    ("annihilated", Json::Bool(true)),
                ]),
            };
            write_bytes(&output, &doc.to_bytes())?;
            Ok(0)
        }
        Command::Spectrum {
            system,
            family,
            n_total,
            n_phi,
            phi0,
            mu,
            f,
            format,
            output,
        } => {
            let fam = family_from_args(&system, &family)?;
            let mode = mode_from_args(mu, n_phi, phi0)?;
            let states = multiplet(fam, n_total, &mode, f)?;
            match format.as_deref().unwrap_or("json") {
                "json" => {
                    let doc = Json::Obj(vec![
                        ("system", Json::Str(system)),
                        ("family", Json::Str(family)),
                        ("N", Json::Int(n_total as i64)),
                        ("mu", Json::Num(mode.mu())),
                        ("states", Json::Arr(states.iter().map(state_json).collect())),
                    ]);
                    write_bytes(&output, &doc.to_bytes())?;
                }
                "csv" => {
                    let mut out = String::from("n1,n2,mu,energy,nu\n");
                    for s in &states {
                        let (n1, n2) = s.quantum_numbers();
                        out.push_str(&format!(
                            "{n1},{n2},{},{},{}\n",
                            fmt_f64(mode.mu()),
                            fmt_f64(s.energy()),
                            s.nu().map(fmt_f64).unwrap_or_default()
                        ));
                    }
                    write_bytes(&output, out.as_bytes())?;
                }
                other => return Err(CliError::usage(format!("unknown format '{other}'"))),
            }
            Ok(0)
        }
        Command::Spheroidal { mu, n_phi, phi0, f, n_total, output } => {
            let mode = mode_from_args(mu, n_phi, phi0)?;
            let spec = SpheroidalSpec::new(mode.mu(), f, n_total)?;
            let system = build_tridiagonal(&spec);
            let sols = solve_spheroidal(&spec)?;
            let derived = ode_derive_recurrence(&spec)?;
            let derived_sols = solve_ode_derived(&spec)?;
            let coeff_rows =
                |ss: &[dihedral_core::spheroidal::SpheroidalSolution]| -> Vec<Vec<f64>> {
                    ss.iter().map(|s| s.coeffs.clone()).collect()
                };
            let doc = Json::Obj(vec![
                ("mu", Json::Num(spec.mu())),
                ("f", Json::Num(spec.f())),
                ("N", Json::Int(n_total as i64)),
                ("nu", Json::Num(spec.nu())),
                ("A", Json::num_array(&sols.iter().map(|s| s.a).collect::<Vec<_>>())),
                ("c", Json::num_matrix(&coeff_rows(&sols))),
                (
                    "matrix",
                    Json::Obj(vec![
                        ("diag", Json::num_array(&system.diag)),
                        ("sub", Json::num_array(&system.sub)),
                        ("super", Json::num_array(&system.sup)),
                    ]),
                ),
                (
                    "ode_derived",
                    Json::Obj(vec![
                        (
                            "A",
                            Json::num_array(
                                &derived_sols.iter().map(|s| s.a).collect::<Vec<_>>(),
                            ),
                        ),
                        ("c", Json::num_matrix(&coeff_rows(&derived_sols))),
                        ("eigenvalue_offset", Json::Num(derived.eigenvalue_offset)),
                        (
                            "matrix",
                            Json::Obj(vec![
                                ("diag", Json::num_array(&derived.system.diag)),
                                ("sub", Json::num_array(&derived.system.sub)),
                                ("super", Json::num_array(&derived.system.sup)),
                            ]),
                        ),
                        (
                            "diag_agrees_with_tabulated",
                            Json::Bool(derived.comparison.diag_agrees),
                        ),
                    ]),
                ),
            ]);
            write_bytes(&output, &doc.to_bytes())?;
            Ok(0)
        }
        Command::Interbasis {
            system,
            pair,
            n_total,
            mu,
            n_phi,
            phi0,
            f,
            output,
        } => {
            let mode = mode_from_args(mu, n_phi, phi0)?;
            let t = match (system.as_str(), pair.as_str()) {
                ("osc", "cyl-sph") | ("osc", "sph-cyl") => osc_interbasis_matrix(n_total, &mode)?,
                ("hydrogen", "sph-par") => hydrogen_sph_par_matrix(n_total, &mode)?,
                ("hydrogen", "sph-spheroidal") => {
                    let f = f.ok_or_else(|| {
                        CliError::usage("sph-spheroidal needs --f (focal half-distance)")
                    })?;
                    hydrogen_sph_spheroidal_matrix(n_total, &mode, f)?
                }
                _ => {
                    return Err(CliError::usage(format!(
                        "unknown system/pair {system}/{pair}"
                    )))
                }
            };
            let mut fields = vec![
                ("system", Json::Str(system)),
                ("pair", Json::Str(pair)),
                ("N", Json::Int(n_total as i64)),
                ("mu", Json::Num(mode.mu())),
            ];
            if let Some(f) = f {
                fields.push(("f", Json::Num(f)));
            }
            fields.push(("transform", matrix_json(&t)));
            write_bytes(&output, &Json::Obj(fields).to_bytes())?;
            Ok(0)
        }
        Command::Verify { output } => {
            let tol_strict = match std::env::var("WEDGE_TOL") {
                Ok(v) => v
                    .parse::<f64>()
                    .map_err(|_| CliError::usage(format!("bad WEDGE_TOL '{v}'")))?,
                Err(_) => 1e-12,
            };
            let tol_loose = tol_strict * 100.0;
            let suites = verify::run_all(tol_strict, tol_loose);
            let all_passed = suites.iter().all(|s| s.passed);
            let doc = Json::Obj(vec![
                ("tolerance_strict", Json::Num(tol_strict)),
                ("tolerance_loose", Json::Num(tol_loose)),
                (
                    "suites",
                    Json::Arr(
                        suites
                            .iter()
                            .map(|s| {
                                Json::Obj(vec![
                                    ("name", Json::Str(s.name.into())),
                                    ("passed", Json::Bool(s.passed)),
                                    (
                                        "details",
                                        Json::Arr(
                                            s.details
                                                .iter()
                                                .map(|d| Json::Str(d.clone()))
                                                .collect(),
                                        ),
                                    ),
                                ])
                            })
                            .collect(),
                    ),
                ),
                ("passed", Json::Bool(all_passed)),
            ]);
            write_bytes(&output, &doc.to_bytes())?;
            for s in &suites {
                eprintln!("{}: {}", s.name, if s.passed { "pass" } else { "FAIL" });
            }
            Ok(if all_passed { 0 } else { 1 })
        }
        Command::SampleGrid { state, chart, bounds, counts, output } => {
            let s = parse_state(&state)?;
            let coord_names: [&str; 3] = match chart.as_str() {
                "cartesian" => ["x", "y", "z"],
                "cylindrical" => ["rho", "phi", "z"],
                "spherical" => ["r", "theta", "phi"],
                "parabolic" => ["xi", "eta", "phi"],
                "prolate-spheroidal" | "prolate_spheroidal" => ["u", "v", "phi"],
                other => return Err(CliError::usage(format!("unknown chart '{other}'"))),
            };
            let mut ranges: [(f64, f64); 3] = [(0.0, 0.0); 3];
            let mut seen = [false; 3];
            for part in bounds.split(',') {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| CliError::usage(format!("bad bound '{part}'")))?;
                let idx = coord_names
                    .iter()
                    .position(|n| *n == k.trim())
                    .ok_or_else(|| {
                        CliError::usage(format!("'{k}' is not a {chart} coordinate"))
                    })?;
                let (lo, hi) = v
                    .split_once(':')
                    .ok_or_else(|| CliError::usage(format!("bound '{v}' must be lo:hi")))?;
                let lo: f64 = lo.parse().map_err(|_| CliError::usage("bad bound number"))?;
                let hi: f64 = hi.parse().map_err(|_| CliError::usage("bad bound number"))?;
                ranges[idx] = (lo, hi);
                seen[idx] = true;
            }
            if !seen.iter().all(|&b| b) {
                return Err(CliError::usage(format!(
                    "bounds must cover all of {coord_names:?}"
                )));
            }
            let counts: Vec<usize> = counts
                .split(',')
                .map(|c| c.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| CliError::usage("bad counts"))?;
            if counts.len() != 3 {
                return Err(CliError::usage("counts must have three entries"));
            }
            let axis = |i: usize| -> Vec<f64> {
                let (lo, hi) = ranges[i];
                let n = counts[i];
                (0..n)
                    .map(|k| {
                        if n == 1 {
                            lo
                        } else {
                            lo + (hi - lo) * k as f64 / (n - 1) as f64
                        }
                    })
                    .collect()
            };
            let (a1, a2, a3) = (axis(0), axis(1), axis(2));
            let mut out = String::from("chart,c1,c2,c3,psi\n");
            for &c1 in &a1 {
                for &c2 in &a2 {
                    for &c3 in &a3 {
                        let point = match chart.as_str() {
                            "cartesian" => CoordinatePoint::Cartesian { x: c1, y: c2, z: c3 },
                            "cylindrical" => {
                                CoordinatePoint::Cylindrical { rho: c1, phi: c2, z: c3 }
                            }
                            "spherical" => {
                                CoordinatePoint::Spherical { r: c1, theta: c2, phi: c3 }
                            }
                            "parabolic" => {
                                CoordinatePoint::Parabolic { xi: c1, eta: c2, phi: c3 }
                            }
                            _ => {
                                let f = match s {
                                    Eigenstate::HydSpheroidal { f, .. } => f,
                                    _ => {
                                        return Err(CliError::usage(
                                            "prolate-spheroidal grids need a spheroidal state",
                                        ))
                                    }
                                };
                                CoordinatePoint::ProlateSpheroidal { u: c1, v: c2, phi: c3, f }
                            }
                        };
                        let psi = eval_eigenfunction(&s, &point)?;
                        out.push_str(&format!(
                            "{},{},{},{},{}\n",
                            chart,
                            fmt_f64(c1),
                            fmt_f64(c2),
                            fmt_f64(c3),
                            fmt_f64(psi)
                        ));
                    }
                }
            }
            write_bytes(&output, out.as_bytes())?;
            Ok(0)
        }
    }
}
