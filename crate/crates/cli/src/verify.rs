//! Invariant suites behind `dihedral verify`.
//!
//! Each suite mirrors one block of the library's contracts at the default
//! tolerances (1e-12 for exact algebra, 1e-10 for pointwise expansion
//! checks); `WEDGE_TOL` overrides the strict tolerance and scales the loose
//! one with it.

use dihedral_core::interbasis::{
    expansion_identity_check, hydrogen_sph_par_matrix, hydrogen_sph_spheroidal_matrix,
    numeric_overlap_matrix, osc_interbasis_matrix, pointwise_expansion_error,
    sph_spheroidal_identity_error,
};
use dihedral_core::ladders::{
    angular_operator_eval, apply_hermite_raise_op, apply_kummer_raise_op, apply_polar_raise_op,
    ground_annihilation_residual, Direction,
};
use dihedral_core::poly::{hermite_poly, kummer_poly, ode_residual, polar_parity_poly, OdeFamily};
use dihedral_core::spheroidal::{
    charpoly_crosscheck, conjugated_ode_residual, ode_derive_recurrence, solve_ode_derived,
    solve_spheroidal, SpheroidalSpec,
};
use dihedral_core::states::{
    eval_eigenfunction, multiplet, phi_eval, Family,
};
use dihedral_core::poly::{Polynomial, Var};
use dihedral_core::{AngularMode, CoordinatePoint, Eigenstate};
use std::f64::consts::PI;

pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

const MUS: [f64; 5] = [0.3, 0.5, 1.0, PI / 2.7, 4.0];

fn suite(name: &'static str, body: impl FnOnce(&mut Vec<String>) -> bool) -> SuiteResult {
    let mut details = Vec::new();
    let passed = body(&mut details);
    SuiteResult { name, passed, details }
}

pub fn run_all(tol_strict: f64, tol_loose: f64) -> Vec<SuiteResult> {
    vec![
        table_rows(tol_strict),
        ladder_chains(tol_strict),
        angular_operators(tol_strict),
        ode_residuals(tol_strict),
        ground_annihilation(),
        spheroidal_spectra(),
        interbasis(tol_strict, tol_loose),
        degeneracy_energy(),
        cross_chart(tol_strict),
    ]
}

fn table_rows(tol: f64) -> SuiteResult {
    suite("table-regeneration", |details| {
        let mut worst = 0.0f64;
        for &mu in &MUS {
            // quadratic-chain Kummer rows at b = mu + 1 (rows 1..3)
            let m2 = kummer_poly(2, mu + 1.0).unwrap();
            worst = worst.max((m2.coeff(1) + 2.0 / (mu + 1.0)).abs());
            worst = worst.max((m2.coeff(2) - 1.0 / ((mu + 1.0) * (mu + 2.0))).abs());
            let m3 = kummer_poly(3, mu + 1.0).unwrap();
            worst = worst.max((m3.coeff(3) + 1.0 / ((mu + 1.0) * (mu + 2.0) * (mu + 3.0))).abs());
            // hydrogen-scaled rows at b = 2 lambda + 2
            let b = 2.0 * mu + 2.0;
            let h1 = kummer_poly(1, b).unwrap();
            worst = worst.max((h1.coeff(1) + 1.0 / (mu + 1.0) / 2.0).abs());
            // polar rows 2 and 5
            let p2 = polar_parity_poly(2, mu);
            worst = worst.max((p2.coeff(0) + 1.0 / (2.0 * (mu + 1.0))).abs());
            worst = worst.max((p2.coeff(2) - (2.0 * mu + 3.0) / (2.0 * (mu + 1.0))).abs());
            let p5 = polar_parity_poly(5, mu);
            let d = 4.0 * (mu + 1.0) * (mu + 2.0);
            worst = worst.max((p5.coeff(1) - 15.0 / d).abs());
            worst = worst.max((p5.coeff(3) + 10.0 * (2.0 * mu + 7.0) / d).abs());
            worst = worst.max((p5.coeff(5) - (2.0 * mu + 7.0) * (2.0 * mu + 9.0) / d).abs());
        }
        let h6 = hermite_poly(6);
        for (k, expected) in [(0, -120.0), (2, 720.0), (4, -480.0), (6, 64.0)] {
            worst = worst.max((h6.coeff(k) - expected).abs() / 720.0);
        }
        details.push(format!("max coefficient error {worst:.3e}"));
        worst < tol
    })
}

fn ladder_chains(tol: f64) -> SuiteResult {
    suite("ladder-induction", |details| {
        let mut worst = 0.0f64;
        for &mu in &MUS {
            for b in [mu + 1.0, mu + 1.5, 2.0 * mu + 2.0] {
                let mut p = Polynomial::constant(1.0, Var::T);
                for n in 0..3u32 {
                    p = apply_kummer_raise_op(&p, n, b).scale(1.0 / (b + n as f64));
                    let e = kummer_poly(n + 1, b).unwrap();
                    worst = worst.max(p.coeff_distance(&e) / e.max_abs_coeff());
                }
            }
            let mut p = Polynomial::constant(1.0, Var::Z);
            for n in 0..6u32 {
                p = apply_polar_raise_op(&p, n, mu);
                let e = polar_parity_poly(n + 1, mu);
                worst = worst.max(p.coeff_distance(&e) / e.max_abs_coeff());
            }
        }
        let mut p = Polynomial::constant(1.0, Var::Z);
        for n in 0..6u32 {
            p = apply_hermite_raise_op(&p);
            let e = hermite_poly(n + 1);
            worst = worst.max(p.coeff_distance(&e) / e.max_abs_coeff());
        }
        details.push(format!("max chain deviation {worst:.3e}"));
        worst < tol
    })
}

fn angular_operators(tol: f64) -> SuiteResult {
    suite("angular-operators", |details| {
        let mut worst = 0.0f64;
        for phi0 in [PI / 3.0, PI, 2.0 * PI] {
            for n_phi in 1..=5u32 {
                let mode = AngularMode::new(n_phi, phi0).unwrap();
                let base = PI / phi0;
                for k in 1..=100 {
                    let phi = k as f64 / 101.0 * phi0;
                    let up = angular_operator_eval(&mode, phi, Direction::Raise);
                    worst = worst.max((up - ((n_phi + 1) as f64 * base * phi).sin()).abs());
                    let down = angular_operator_eval(&mode, phi, Direction::Lower);
                    worst = worst.max((down - ((n_phi - 1) as f64 * base * phi).sin()).abs());
                }
                // wedge faces
                worst = worst.max(phi_eval(&mode, 0.0).unwrap().abs());
                worst =
                    worst.max(phi_eval(&mode, phi0).unwrap().abs() / n_phi as f64);
            }
        }
        details.push(format!("max pointwise operator error {worst:.3e}"));
        worst < tol
    })
}

fn ode_residuals(tol: f64) -> SuiteResult {
    suite("ode-residuals", |details| {
        let mut worst = 0.0f64;
        for &mu in &MUS {
            for n in 0..=10u32 {
                let m = kummer_poly(n, mu + 1.0).unwrap();
                let r = ode_residual(&OdeFamily::Kummer { n, b: mu + 1.0 }, &m);
                worst = worst.max(r.max_abs_coeff() / m.max_abs_coeff().max(1.0));
                let h = hermite_poly(n);
                let r = ode_residual(&OdeFamily::Hermite { n }, &h);
                worst = worst.max(r.max_abs_coeff() / h.max_abs_coeff());
                let p = polar_parity_poly(n, mu);
                let r = ode_residual(&OdeFamily::Polar { n_theta: n, mu }, &p);
                worst = worst.max(r.max_abs_coeff() / p.max_abs_coeff().max(1.0));
            }
        }
        for n in 0..=6u32 {
            let spec = SpheroidalSpec::new(0.5, 1.0, n).unwrap();
            for sol in solve_ode_derived(&spec).unwrap() {
                let r = conjugated_ode_residual(0.5, 1.0, n, sol.a, &sol.series_polynomial());
                let scale = sol.coeffs.iter().fold(1.0f64, |m, c| m.max(c.abs()));
                worst = worst.max(r.max_abs_coeff() / (scale * (1.0 + sol.a.abs())));
            }
        }
        details.push(format!("max relative residual {worst:.3e}"));
        worst < tol
    })
}

fn ground_annihilation() -> SuiteResult {
    suite("ground-annihilation", |details| {
        let mut ok = true;
        for &mu in &[0.5, 1.0, 2.0, PI / 2.7] {
            let r = ground_annihilation_residual(mu, Direction::Raise);
            if r != 0.0 {
                ok = false;
                details.push(format!("mu = {mu}: residual {r:.3e}"));
            }
        }
        if ok {
            details.push("annihilation exact for all sampled mu".into());
        }
        ok
    })
}

fn spheroidal_spectra() -> SuiteResult {
    suite("spheroidal-spectra", |details| {
        let mut ok = true;
        let spec = SpheroidalSpec::new(0.5, 1.0, 1).unwrap();
        let sols = solve_spheroidal(&spec).unwrap();
        let e0 = (sols[0].a + 0.8).abs();
        let e1 = (sols[1].a - 3.0).abs();
        if e0 > 1e-10 || e1 > 1e-10 {
            ok = false;
        }
        details.push(format!(
            "tabulated N=1 eigenvalues {{{:.12}, {:.12}}} (target -0.8, 3.0)",
            sols[0].a, sols[1].a
        ));
        // near-zero Coulomb limit
        let lim = SpheroidalSpec::new(0.8, 1e-8, 2).unwrap();
        for (n, s) in solve_spheroidal(&lim).unwrap().iter().enumerate() {
            let target = n as f64 * (n as f64 + 2.0 * 0.8 + 1.0);
            if (s.a - target).abs() > 1e-6 {
                ok = false;
                details.push(format!("limit eigenvalue {n}: {} vs {target}", s.a));
            }
        }
        // real simple spectra across a grid
        let mut min_gap = f64::INFINITY;
        let mut cases = 0;
        for &mu in &[0.3, 0.5, 1.0, 2.4, 4.0] {
            for &f in &[0.2, 1.0, 3.5] {
                for n in 0..=6u32 {
                    let s = SpheroidalSpec::new(mu, f, n).unwrap();
                    let sols = solve_spheroidal(&s).unwrap();
                    for w in sols.windows(2) {
                        min_gap = min_gap.min(w[1].a - w[0].a);
                    }
                    cases += 1;
                }
            }
        }
        if min_gap <= 1e-10 {
            ok = false;
        }
        details.push(format!("{cases} spectra, min eigenvalue gap {min_gap:.3e}"));
        // the derived recurrence disagrees with the tabulated diagonal in a
        // pinned way; the cross-check must document exactly that
        let rec = ode_derive_recurrence(&spec).unwrap();
        if !(rec.comparison.sub_agrees && rec.comparison.sup_agrees && !rec.comparison.diag_agrees)
        {
            ok = false;
            details.push("unexpected recurrence comparison pattern".into());
        }
        let rep = charpoly_crosscheck(&spec).unwrap();
        if !(rep.terms[0].tabulated_matches_nu_reading
            && rep.terms[1].derived_matches_nu_reading
            && !rep.terms[1].tabulated_matches_nu_reading)
        {
            ok = false;
        }
        for note in &rep.notes {
            details.push(format!("crosscheck N=1: {note}"));
        }
        let rep2 = charpoly_crosscheck(&SpheroidalSpec::new(0.5, 1.0, 2).unwrap()).unwrap();
        for note in &rep2.notes {
            details.push(format!("crosscheck N=2: {note}"));
        }
        ok
    })
}

fn interbasis(tol_strict: f64, tol_loose: f64) -> SuiteResult {
    suite("interbasis", |details| {
        let mut ok = true;
        let mut worst_orth = 0.0f64;
        let mut worst_point = 0.0f64;
        for &mu in &MUS {
            let mode = AngularMode::from_mu(mu).unwrap();
            for n in 0..=5u32 {
                let t = osc_interbasis_matrix(n, &mode).unwrap();
                worst_orth = worst_orth.max(t.orthonormality_defect());
                worst_point = worst_point.max(pointwise_expansion_error(&t).unwrap());
            }
            for n in 0..=2u32 {
                let t = hydrogen_sph_par_matrix(n, &mode).unwrap();
                worst_orth = worst_orth.max(t.orthonormality_defect());
                worst_point = worst_point.max(pointwise_expansion_error(&t).unwrap());
            }
            worst_point = worst_point.max(expansion_identity_check(&mode));
        }
        details.push(format!("max orthonormality defect {worst_orth:.3e}"));
        details.push(format!("max pointwise expansion error {worst_point:.3e}"));
        ok &= worst_orth < tol_strict && worst_point < tol_loose;

        // numeric oracle recovery
        let mode = AngularMode::from_mu(0.5).unwrap();
        let closed = osc_interbasis_matrix(2, &mode).unwrap();
        let mut rec = numeric_overlap_matrix(&closed.row_states, &closed.col_states).unwrap();
        rec.matrix.align_row_signs_to(&closed);
        let diff = rec.matrix.max_entry_diff(&closed);
        details.push(format!("oracle recovery (oscillator doublet) {diff:.3e}"));
        ok &= diff < 1e-8;
        let mode1 = AngularMode::new(1, PI).unwrap();
        let closed = hydrogen_sph_par_matrix(1, &mode1).unwrap();
        let mut rec = numeric_overlap_matrix(&closed.row_states, &closed.col_states).unwrap();
        rec.matrix.align_row_signs_to(&closed);
        let diff = rec.matrix.max_entry_diff(&closed);
        details.push(format!("oracle recovery (hydrogen doublet) {diff:.3e}"));
        ok &= diff < 1e-8;

        // spherical-spheroidal expansion identity
        let mut worst_ps = 0.0f64;
        for n in 1..=2u32 {
            let t = hydrogen_sph_spheroidal_matrix(n, &mode, 1.0).unwrap();
            worst_ps = worst_ps.max(sph_spheroidal_identity_error(&t, 1.0).unwrap());
        }
        details.push(format!("spheroidal expansion identity error {worst_ps:.3e}"));
        ok &= worst_ps < tol_loose;
        ok
    })
}

fn degeneracy_energy() -> SuiteResult {
    suite("degeneracy-energy", |details| {
        let mut ok = true;
        let mode = AngularMode::new(2, 1.7).unwrap();
        for n in 0..=6u32 {
            for fam in [Family::OscCyl, Family::OscSph, Family::HydSph, Family::HydPar] {
                let states = multiplet(fam, n, &mode, None).unwrap();
                let expect = match fam {
                    Family::OscCyl | Family::OscSph => (n / 2 + 1) as usize,
                    _ => (n + 1) as usize,
                };
                if states.len() != expect {
                    ok = false;
                    details.push(format!("{fam:?} N={n}: size {}", states.len()));
                }
                let e0 = states[0].energy();
                for s in &states {
                    if (s.energy() - e0).abs() > 1e-14 * e0.abs().max(1.0) {
                        ok = false;
                        details.push(format!("{fam:?} N={n}: energy spread"));
                    }
                }
            }
            for s in multiplet(Family::HydPar, n, &mode, None).unwrap() {
                let (ax, ae) = s.separation_constants().unwrap();
                if ax + ae != 2.0 {
                    ok = false;
                    details.push(format!("A_xi + A_eta = {} for {s:?}", ax + ae));
                }
            }
        }
        if ok {
            details.push("multiplet sizes, degeneracy and separation constants verified".into());
        }
        ok
    })
}

fn cross_chart(tol: f64) -> SuiteResult {
    suite("cross-system-coincidences", |details| {
        let mut worst = 0.0f64;
        let mode = AngularMode::new(1, 2.0 * PI).unwrap();
        let pairs = [
            (
                Eigenstate::OscCyl { n_rho: 0, n_z: 0, mode },
                Eigenstate::OscSph { n_r: 0, n_theta: 0, mode },
                1.0,
            ),
            (
                Eigenstate::OscCyl { n_rho: 0, n_z: 1, mode },
                Eigenstate::OscSph { n_r: 0, n_theta: 1, mode },
                2.0, // H_1 = 2z versus r cos(theta) = z
            ),
        ];
        for (cyl, sph, ratio) in &pairs {
            for k in 0..20 {
                let t = (k as f64 + 0.5) / 20.0;
                let p = CoordinatePoint::Cylindrical {
                    rho: 0.2 + 2.0 * t,
                    phi: (0.05 + 0.9 * t) * mode.phi0(),
                    z: -1.1 + 2.3 * t,
                };
                let a = eval_eigenfunction(cyl, &p).unwrap();
                let b = eval_eigenfunction(sph, &p).unwrap();
                worst = worst.max((a - ratio * b).abs() / a.abs().max(1e-300));
            }
        }
        let f = 0.9;
        let sph = Eigenstate::HydSph { n_r: 0, n_theta: 0, mode };
        let par = Eigenstate::HydPar { n_xi: 0, n_eta: 0, mode };
        let pss = Eigenstate::HydSpheroidal { n_u: 0, n_v: 0, mode, f };
        for k in 0..20 {
            let t = (k as f64 + 0.5) / 20.0;
            let p = CoordinatePoint::Cylindrical {
                rho: 0.3 + 2.5 * t,
                phi: (0.04 + 0.91 * t) * mode.phi0(),
                z: -1.2 + 2.9 * t,
            };
            let a = eval_eigenfunction(&sph, &p).unwrap();
            let b = eval_eigenfunction(&par, &p).unwrap();
            let c = eval_eigenfunction(&pss, &p).unwrap();
            worst = worst.max(((a - b) / a).abs());
            worst = worst.max(((a - c) / a).abs());
        }
        details.push(format!("max relative coincidence error {worst:.3e}"));
        worst < tol
    })
}
