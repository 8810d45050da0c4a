//! Python bindings exposing the main types and operations.
//!
//! States travel as the same flat JSON objects the CLI uses, e.g.
//! `{"system":"osc","family":"cyl","n_rho":0,"n_z":0,"n_phi":1,"phi0":3.14}`;
//! points are plain dicts keyed by chart coordinates.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use std::collections::HashMap;

use dihedral_core::interbasis::{
    hydrogen_sph_par_matrix, hydrogen_sph_spheroidal_matrix, osc_interbasis_matrix,
};
use dihedral_core::ladders::{self, Direction, Dof};
use dihedral_core::spheroidal::{solve_ode_derived, solve_spheroidal, SpheroidalSpec};
use dihedral_core::states::{self, Family, StateSpec};
use dihedral_core::{AngularMode, CoordinatePoint, Eigenstate};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn state_from_json(text: &str) -> PyResult<Eigenstate> {
    let spec: StateSpec = serde_json::from_str(text).map_err(err)?;
    Eigenstate::from_spec(&spec).map_err(err)
}

fn state_to_json(state: &Eigenstate) -> PyResult<String> {
    serde_json::to_string(&state.to_spec()).map_err(err)
}

fn point_from_dict(coords: &HashMap<String, f64>, state: &Eigenstate) -> PyResult<CoordinatePoint> {
    let mut names: Vec<&str> = coords.keys().map(|s| s.as_str()).collect();
    names.sort_unstable();
    let get = |k: &str| coords[k];
    let p = match names.as_slice() {
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
        ["phi", "u", "v"] => match state {
            Eigenstate::HydSpheroidal { f, .. } => CoordinatePoint::ProlateSpheroidal {
                u: get("u"),
                v: get("v"),
                phi: get("phi"),
                f: *f,
            },
            _ => return Err(PyValueError::new_err("u,v,phi points need a spheroidal state")),
        },
        ["x", "y", "z"] => CoordinatePoint::Cartesian {
            x: get("x"),
            y: get("y"),
            z: get("z"),
        },
        other => {
            return Err(PyValueError::new_err(format!(
                "unrecognized coordinate set {other:?}"
            )))
        }
    };
    Ok(p)
}

fn mode_from_opts(mu: Option<f64>, n_phi: Option<u32>, phi0: Option<f64>) -> PyResult<AngularMode> {
    match (mu, n_phi, phi0) {
        (Some(mu), None, None) => AngularMode::from_mu(mu).map_err(err),
        (None, Some(n), Some(p)) => AngularMode::new(n, p).map_err(err),
        _ => Err(PyValueError::new_err(
            "provide either mu or both n_phi and phi0",
        )),
    }
}

/// mu = n_phi * pi / phi0 for the wedge 0 < phi < phi0.
#[pyfunction]
fn mu_from_angle(n_phi: u32, phi0: f64) -> PyResult<f64> {
    states::mu_from_angle(n_phi, phi0).map_err(err)
}

/// Energy of a state (hbar*omega for the oscillator, hartree for hydrogen).
#[pyfunction]
fn energy(state: &str) -> PyResult<f64> {
    Ok(state_from_json(state)?.energy())
}

/// Evaluate an eigenfunction at a point given as a coordinate dict.
#[pyfunction]
fn eval(state: &str, point: HashMap<String, f64>) -> PyResult<f64> {
    let s = state_from_json(state)?;
    let p = point_from_dict(&point, &s)?;
    states::eval_eigenfunction(&s, &p).map_err(err)
}

/// Degenerate multiplet as a list of state JSON strings, ordered by
/// descending first quantum number.
#[pyfunction]
#[pyo3(signature = (system, family, n_total, mu=None, n_phi=None, phi0=None, f=None))]
fn multiplet(
    system: &str,
    family: &str,
    n_total: u32,
    mu: Option<f64>,
    n_phi: Option<u32>,
    phi0: Option<f64>,
    f: Option<f64>,
) -> PyResult<Vec<String>> {
    let fam = match (system, family) {
        ("osc", "cyl") => Family::OscCyl,
        ("osc", "sph") => Family::OscSph,
        ("hydrogen", "sph") => Family::HydSph,
        ("hydrogen", "par") => Family::HydPar,
        ("hydrogen", "spheroidal") => Family::HydSpheroidal,
        _ => {
            return Err(PyValueError::new_err(format!(
                "unknown system/family {system}/{family}"
            )))
        }
    };
    let mode = mode_from_opts(mu, n_phi, phi0)?;
    states::multiplet(fam, n_total, &mode, f)
        .map_err(err)?
        .iter()
        .map(state_to_json)
        .collect()
}

/// Apply a ladder operator; returns (new_state_json, scalar) or None when
/// the chain annihilates.
#[pyfunction]
fn apply_ladder(state: &str, dof: &str, direction: &str) -> PyResult<Option<(String, f64)>> {
    let s = state_from_json(state)?;
    let dof = match dof {
        "angular" => Dof::Angular,
        "radial" => Dof::Radial,
        "axial" => Dof::Axial,
        "polar" => Dof::Polar,
        other => return Err(PyValueError::new_err(format!("unknown dof '{other}'"))),
    };
    let dir = match direction {
        "raise" => Direction::Raise,
        "lower" => Direction::Lower,
        other => return Err(PyValueError::new_err(format!("unknown direction '{other}'"))),
    };
    match ladders::apply_ladder(&s, dof, dir).map_err(err)? {
        Some((to, scalar)) => Ok(Some((state_to_json(&to)?, scalar))),
        None => Ok(None),
    }
}

/// Eigenvalues and series coefficients of the tabulated spheroidal
/// recurrence, ascending; `(A_list, coefficient_rows)`.
#[pyfunction]
fn spheroidal_spectrum(mu: f64, f: f64, n_total: u32) -> PyResult<(Vec<f64>, Vec<Vec<f64>>)> {
    let spec = SpheroidalSpec::new(mu, f, n_total).map_err(err)?;
    let sols = solve_spheroidal(&spec).map_err(err)?;
    Ok((
        sols.iter().map(|s| s.a).collect(),
        sols.iter().map(|s| s.coeffs.clone()).collect(),
    ))
}

/// Same for the recurrence derived directly from the separated ODE (the
/// eigenfunction-consistent convention).
#[pyfunction]
fn spheroidal_spectrum_ode_derived(
    mu: f64,
    f: f64,
    n_total: u32,
) -> PyResult<(Vec<f64>, Vec<Vec<f64>>)> {
    let spec = SpheroidalSpec::new(mu, f, n_total).map_err(err)?;
    let sols = solve_ode_derived(&spec).map_err(err)?;
    Ok((
        sols.iter().map(|s| s.a).collect(),
        sols.iter().map(|s| s.coeffs.clone()).collect(),
    ))
}

/// Interbasis transformation matrix as nested lists.
#[pyfunction]
#[pyo3(signature = (system, pair, n_total, mu=None, n_phi=None, phi0=None, f=None))]
fn interbasis_matrix(
    system: &str,
    pair: &str,
    n_total: u32,
    mu: Option<f64>,
    n_phi: Option<u32>,
    phi0: Option<f64>,
    f: Option<f64>,
) -> PyResult<Vec<Vec<f64>>> {
    let mode = mode_from_opts(mu, n_phi, phi0)?;
    let t = match (system, pair) {
        ("osc", "cyl-sph") | ("osc", "sph-cyl") => osc_interbasis_matrix(n_total, &mode),
        ("hydrogen", "sph-par") => hydrogen_sph_par_matrix(n_total, &mode),
        ("hydrogen", "sph-spheroidal") => {
            let f = f.ok_or_else(|| PyValueError::new_err("sph-spheroidal needs f"))?;
            hydrogen_sph_spheroidal_matrix(n_total, &mode, f)
        }
        _ => {
            return Err(PyValueError::new_err(format!(
                "unknown system/pair {system}/{pair}"
            )))
        }
    }
    .map_err(err)?;
    Ok(t.entries)
}

#[pymodule]
fn dihedral_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(mu_from_angle, m)?)?;
    m.add_function(wrap_pyfunction!(energy, m)?)?;
    m.add_function(wrap_pyfunction!(eval, m)?)?;
    m.add_function(wrap_pyfunction!(multiplet, m)?)?;
    m.add_function(wrap_pyfunction!(apply_ladder, m)?)?;
    m.add_function(wrap_pyfunction!(spheroidal_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(spheroidal_spectrum_ode_derived, m)?)?;
    m.add_function(wrap_pyfunction!(interbasis_matrix, m)?)?;
    Ok(())
}
