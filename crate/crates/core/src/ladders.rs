//! Raising and lowering operators for every separated degree of freedom.
//!
//! Each polynomial family has first-order differential operators connecting
//! neighbouring quantum numbers. The `apply_*_op` functions apply the raw
//! operator to an arbitrary polynomial; the `*_raise` / `*_lower` wrappers
//! start from the canonical family member, divide out the known scalar
//! factor and report it, so `operator output = scalar * next member`
//! exactly. Lowering annihilates at the bottom of every chain.
//!
//! For the hydrogen radial chains the operators act on the polynomial
//! factor in the state-scaled variable (`2r/nu`, `xi^2/nu`); shifting `n_r`
//! changes `nu` and therefore the physical length scale, which
//! [`apply_ladder`] tracks on the returned state.

use crate::error::Error;
use crate::poly::{hermite_poly, kummer_poly, polar_parity_poly, Polynomial};
use crate::states::{AngularMode, Eigenstate};
use crate::Result;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Raise,
    Lower,
}

/// Degree of freedom addressed by [`apply_ladder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dof {
    /// Wedge angle `phi` (shifts `n_phi`).
    Angular,
    /// Radial chain: `n_rho`, `n_r`, `n_xi`, or the spheroidal node count
    /// `n_u` within a fixed multiplet.
    Radial,
    /// Axial chain: `n_z` for the cylindrical oscillator, `n_eta` for the
    /// parabolic hydrogen atom.
    Axial,
    /// Polar chain `n_theta` (and the hyperboloidal count `n_v`).
    Polar,
}

impl std::fmt::Display for Dof {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Dof::Angular => "angular",
            Dof::Radial => "radial",
            Dof::Axial => "axial",
            Dof::Polar => "polar",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone)]
pub enum LadderOutput {
    Poly(Polynomial),
    Mode(AngularMode),
    /// The chain ends here: the operator output is identically zero.
    Annihilated,
}

/// Result of one ladder application: the canonical neighbour plus the
/// scalar with `raw operator output = scalar * neighbour`.
#[derive(Debug, Clone)]
pub struct LadderResult {
    pub output: LadderOutput,
    pub scalar: f64,
}

impl LadderResult {
    pub fn annihilated(&self) -> bool {
        matches!(self.output, LadderOutput::Annihilated)
    }

    pub fn poly(&self) -> Option<&Polynomial> {
        match &self.output {
            LadderOutput::Poly(p) => Some(p),
            _ => None,
        }
    }

    fn annihilation() -> Self {
        LadderResult { output: LadderOutput::Annihilated, scalar: 0.0 }
    }
}

// --- angular ----------------------------------------------------------------

/// Pointwise application of
/// `[cos(pi phi/phi0) +/- (phi0/(n_phi pi)) sin(pi phi/phi0) d/dphi]`
/// to `sin(n_phi pi phi / phi0)`; equals `sin((n_phi +/- 1) pi phi / phi0)`
/// by the product-to-sum identities.
pub fn angular_operator_eval(mode: &AngularMode, phi: f64, direction: Direction) -> f64 {
    let base = std::f64::consts::PI / mode.phi0();
    let mu = mode.mu();
    let sign = match direction {
        Direction::Raise => 1.0,
        Direction::Lower => -1.0,
    };
    (base * phi).cos() * (mu * phi).sin()
        + sign * (base * phi).sin() / (mode.n_phi() as f64 * base) * mu * (mu * phi).cos()
}

pub fn angular_raise(mode: &AngularMode) -> Result<LadderResult> {
    Ok(LadderResult {
        output: LadderOutput::Mode(mode.with_n_phi(mode.n_phi() + 1)?),
        scalar: 1.0,
    })
}

pub fn angular_lower(mode: &AngularMode) -> Result<LadderResult> {
    if mode.n_phi() == 1 {
        return Ok(LadderResult::annihilation()); // sin(0) is identically zero
    }
    Ok(LadderResult {
        output: LadderOutput::Mode(mode.with_n_phi(mode.n_phi() - 1)?),
        scalar: 1.0,
    })
}

// --- Kummer -----------------------------------------------------------------

/// Raw raising operator `(b + n - t + t d/dt)` on an arbitrary polynomial.
pub fn apply_kummer_raise_op(p: &Polynomial, n: u32, b: f64) -> Polynomial {
    let d = p.derivative();
    p.scale(b + n as f64)
        .sub(&p.mul_power(1))
        .add(&d.mul_power(1))
}

/// Raw lowering operator `(-n + t d/dt)`.
pub fn apply_kummer_lower_op(p: &Polynomial, n: u32) -> Polynomial {
    p.derivative().mul_power(1).sub(&p.scale(n as f64))
}

/// `M(-n, b, t) -> M(-(n+1), b, t)` with scalar `b + n`.
pub fn kummer_raise(n: u32, b: f64) -> Result<LadderResult> {
    let raw = apply_kummer_raise_op(&kummer_poly(n, b)?, n, b);
    let scalar = b + n as f64;
    Ok(LadderResult {
        output: LadderOutput::Poly(raw.scale(1.0 / scalar)),
        scalar,
    })
}

/// `M(-n, b, t) -> M(-(n-1), b, t)` with scalar `-n`; annihilates at
/// `n = 0`.
pub fn kummer_lower(n: u32, b: f64) -> Result<LadderResult> {
    if n == 0 {
        return Ok(LadderResult::annihilation());
    }
    let raw = apply_kummer_lower_op(&kummer_poly(n, b)?, n);
    let scalar = -(n as f64);
    Ok(LadderResult {
        output: LadderOutput::Poly(raw.scale(1.0 / scalar)),
        scalar,
    })
}

// --- Hermite ----------------------------------------------------------------

/// Gaussian-conjugated creation operator, `P -> 2 z P - P'`.
pub fn apply_hermite_raise_op(p: &Polynomial) -> Polynomial {
    p.mul_power(1).scale(2.0).sub(&p.derivative())
}

/// Gaussian-conjugated annihilation operator, `P -> P'`.
pub fn apply_hermite_lower_op(p: &Polynomial) -> Polynomial {
    p.derivative()
}

/// `H_n -> H_{n+1}`, scalar 1.
pub fn hermite_raise(n: u32) -> LadderResult {
    LadderResult {
        output: LadderOutput::Poly(apply_hermite_raise_op(&hermite_poly(n))),
        scalar: 1.0,
    }
}

/// `H_n -> H_{n-1}` with scalar `2n`; annihilates at `n = 0`.
pub fn hermite_lower(n: u32) -> LadderResult {
    if n == 0 {
        return LadderResult::annihilation();
    }
    let scalar = 2.0 * n as f64;
    LadderResult {
        output: LadderOutput::Poly(apply_hermite_lower_op(&hermite_poly(n)).scale(1.0 / scalar)),
        scalar,
    }
}

// --- polar ------------------------------------------------------------------

/// Raw raising operator `[z + (z^2 - 1)/(2 mu + n + 1) d/dz]`.
pub fn apply_polar_raise_op(p: &Polynomial, n_theta: u32, mu: f64) -> Polynomial {
    let z2m1 = Polynomial::new(vec![-1.0, 0.0, 1.0], p.var());
    p.mul_power(1)
        .add(&z2m1.mul(&p.derivative()).scale(1.0 / (2.0 * mu + n_theta as f64 + 1.0)))
}

/// Raw lowering operator `[z - (z^2 - 1)/n d/dz]`; undefined at `n = 0`,
/// where the chain annihilates through a vanishing `z`-coefficient instead.
pub fn apply_polar_lower_op(p: &Polynomial, n_theta: u32) -> Polynomial {
    let z2m1 = Polynomial::new(vec![-1.0, 0.0, 1.0], p.var());
    p.mul_power(1)
        .sub(&z2m1.mul(&p.derivative()).scale(1.0 / n_theta as f64))
}

/// Polar parity chain up: scalar 1, parity flips.
pub fn polar_raise(n_theta: u32, mu: f64) -> LadderResult {
    LadderResult {
        output: LadderOutput::Poly(apply_polar_raise_op(
            &polar_parity_poly(n_theta, mu),
            n_theta,
            mu,
        )),
        scalar: 1.0,
    }
}

/// Polar parity chain down: scalar 1; annihilates at `n_theta = 0`.
pub fn polar_lower(n_theta: u32, mu: f64) -> LadderResult {
    if n_theta == 0 {
        return LadderResult::annihilation();
    }
    LadderResult {
        output: LadderOutput::Poly(apply_polar_lower_op(
            &polar_parity_poly(n_theta, mu),
            n_theta,
        )),
        scalar: 1.0,
    }
}

// --- singular-prefactor annihilation ----------------------------------------

/// Exact residual of the first-order radial operator
/// `s + sign*(d/ds) - sign*(mu_op / s)` applied to `s^mu e^{-s^2/2}`,
/// carried structurally as a sum `sum_k c_k s^(mu+k) e^{-s^2/2}`.
/// Returns the largest residual coefficient magnitude: 0 exactly for
/// `sign = +1, mu_op = mu` (the nodeless state is annihilated).
pub fn singular_radial_op_residual(mu: f64, mu_op: f64, direction: Direction) -> f64 {
    let sign = match direction {
        Direction::Raise => 1.0, // upper signs: s + d/ds - mu/s
        Direction::Lower => -1.0,
    };
    // term map: power offset k (relative to mu) -> coefficient
    let mut out: BTreeMap<i32, f64> = BTreeMap::new();
    let mut add = |k: i32, c: f64| {
        let e = out.entry(k).or_insert(0.0);
        *e += c;
    };
    // s * s^mu = s^(mu+1)
    add(1, 1.0);
    // sign * d/ds (s^mu e^{-s^2/2}) = sign * (mu s^(mu-1) - s^(mu+1)) e^{..}
    add(-1, sign * mu);
    add(1, -sign);
    // -sign * mu_op / s * s^mu = -sign * mu_op s^(mu-1)
    add(-1, -sign * mu_op);
    out.values().fold(0.0f64, |m, c| m.max(c.abs()))
}

/// The nodeless-state annihilation check with the operator's own `mu`.
pub fn ground_annihilation_residual(mu: f64, direction: Direction) -> f64 {
    singular_radial_op_residual(mu, mu, direction)
}

// --- state-level dispatch -----------------------------------------------------

/// Apply a ladder to an eigenstate along one degree of freedom. Returns the
/// neighbouring state and the scalar factor, or `None` when the chain
/// annihilates. Oscillator energies shift by +2 (radial), +1
/// (axial/polar) and `+pi/phi0` (angular) under raising; hydrogen states
/// come back with the implied new `nu` and variable scale.
pub fn apply_ladder(
    state: &Eigenstate,
    dof: Dof,
    direction: Direction,
) -> Result<Option<(Eigenstate, f64)>> {
    let mode = *state.mode();
    let invalid = || Error::InvalidDof {
        dof: dof.to_string(),
        family: format!("{:?}", state.family()),
    };
    let shift = |n: u32| -> Option<u32> {
        match direction {
            Direction::Raise => Some(n + 1),
            Direction::Lower => n.checked_sub(1),
        }
    };
    if dof == Dof::Angular {
        let res = match direction {
            Direction::Raise => angular_raise(&mode)?,
            Direction::Lower => angular_lower(&mode)?,
        };
        return Ok(match res.output {
            LadderOutput::Mode(new_mode) => {
                let mut s = state.clone();
                match &mut s {
                    Eigenstate::OscCyl { mode, .. }
                    | Eigenstate::OscSph { mode, .. }
                    | Eigenstate::HydSph { mode, .. }
                    | Eigenstate::HydPar { mode, .. }
                    | Eigenstate::HydSpheroidal { mode, .. } => *mode = new_mode,
                }
                Some((s, res.scalar))
            }
            _ => None,
        });
    }
    match *state {
        Eigenstate::OscCyl { n_rho, n_z, .. } => match dof {
            Dof::Radial => {
                let b = mode.mu() + 1.0;
                Ok(kummer_shift(n_rho, b, direction)?.map(|(n, s)| {
                    (Eigenstate::OscCyl { n_rho: n, n_z, mode }, s)
                }))
            }
            Dof::Axial => Ok(shift(n_z).map(|n| {
                let scalar = match direction {
                    Direction::Raise => 1.0,
                    Direction::Lower => 2.0 * n_z as f64,
                };
                (Eigenstate::OscCyl { n_rho, n_z: n, mode }, scalar)
            })),
            _ => Err(invalid()),
        },
        Eigenstate::OscSph { n_r, n_theta, .. } => match dof {
            Dof::Radial => {
                let b = n_theta as f64 + mode.mu() + 1.5;
                Ok(kummer_shift(n_r, b, direction)?.map(|(n, s)| {
                    (Eigenstate::OscSph { n_r: n, n_theta, mode }, s)
                }))
            }
            Dof::Polar => Ok(shift(n_theta).map(|n| {
                (Eigenstate::OscSph { n_r, n_theta: n, mode }, 1.0)
            })),
            _ => Err(invalid()),
        },
        Eigenstate::HydSph { n_r, n_theta, .. } => match dof {
            Dof::Radial => {
                let b = 2.0 * (n_theta as f64 + mode.mu()) + 2.0;
                Ok(kummer_shift(n_r, b, direction)?.map(|(n, s)| {
                    (Eigenstate::HydSph { n_r: n, n_theta, mode }, s)
                }))
            }
            Dof::Polar => Ok(shift(n_theta).map(|n| {
                (Eigenstate::HydSph { n_r, n_theta: n, mode }, 1.0)
            })),
            _ => Err(invalid()),
        },
        Eigenstate::HydPar { n_xi, n_eta, .. } => match dof {
            Dof::Radial => {
                let b = mode.mu() + 1.0;
                Ok(kummer_shift(n_xi, b, direction)?.map(|(n, s)| {
                    (Eigenstate::HydPar { n_xi: n, n_eta, mode }, s)
                }))
            }
            Dof::Axial => {
                let b = mode.mu() + 1.0;
                Ok(kummer_shift(n_eta, b, direction)?.map(|(n, s)| {
                    (Eigenstate::HydPar { n_xi, n_eta: n, mode }, s)
                }))
            }
            _ => Err(invalid()),
        },
        Eigenstate::HydSpheroidal { n_u, n_v, f, .. } => {
            // within a fixed multiplet, stepping the eigenvalue index
            // raises n_u while lowering n_v (and vice versa), scalar 1
            let (du, dv) = match (dof, direction) {
                (Dof::Radial, Direction::Raise) | (Dof::Polar, Direction::Lower) => (1i64, -1i64),
                (Dof::Radial, Direction::Lower) | (Dof::Polar, Direction::Raise) => (-1, 1),
                _ => return Err(invalid()),
            };
            let nu2 = n_u as i64 + du;
            let nv2 = n_v as i64 + dv;
            if nu2 < 0 || nv2 < 0 {
                return Ok(None);
            }
            Ok(Some((
                Eigenstate::HydSpheroidal {
                    n_u: nu2 as u32,
                    n_v: nv2 as u32,
                    mode,
                    f,
                },
                1.0,
            )))
        }
    }
}

fn kummer_shift(n: u32, b: f64, direction: Direction) -> Result<Option<(u32, f64)>> {
    match direction {
        Direction::Raise => Ok(Some((n + 1, b + n as f64))),
        Direction::Lower => {
            if n == 0 {
                Ok(None)
            } else {
                Ok(Some((n - 1, -(n as f64))))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{OdeFamily, Var};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    const MUS: [f64; 5] = [0.3, 0.5, 1.0, PI / 2.7, 4.0];

    #[test]
    fn angular_operator_pointwise() {
        for phi0 in [PI / 3.0, PI, 2.0 * PI] {
            for n_phi in 1..=5u32 {
                let mode = AngularMode::new(n_phi, phi0).unwrap();
                let base = PI / phi0;
                for k in 1..100 {
                    let phi = k as f64 / 100.0 * phi0;
                    let up = angular_operator_eval(&mode, phi, Direction::Raise);
                    assert_relative_eq!(
                        up,
                        ((n_phi + 1) as f64 * base * phi).sin(),
                        epsilon = 1e-12
                    );
                    let down = angular_operator_eval(&mode, phi, Direction::Lower);
                    assert_relative_eq!(
                        down,
                        ((n_phi - 1) as f64 * base * phi).sin(),
                        epsilon = 1e-12
                    );
                }
            }
        }
    }

    #[test]
    fn angular_ladder_endpoints() {
        let m1 = AngularMode::new(1, 1.9).unwrap();
        assert!(angular_lower(&m1).unwrap().annihilated());
        let m3 = AngularMode::new(3, 1.9).unwrap();
        match angular_lower(&m3).unwrap().output {
            LadderOutput::Mode(m) => assert_eq!(m.n_phi(), 2),
            _ => panic!("expected mode"),
        }
    }

    #[test]
    fn kummer_ladder_against_constructor() {
        let mu = 0.5f64;
        // raise row 1 -> (mu+2) x row 2
        let raw = apply_kummer_raise_op(&kummer_poly(1, mu + 1.0).unwrap(), 1, mu + 1.0);
        let expect = kummer_poly(2, mu + 1.0).unwrap().scale(mu + 2.0);
        assert!(raw.coeff_distance(&expect) < 1e-12);

        // lower n=0 annihilates
        assert!(kummer_lower(0, mu + 1.0).unwrap().annihilated());
        assert!(apply_kummer_lower_op(&kummer_poly(0, mu + 1.0).unwrap(), 0).is_zero());

        // hydrogen flavour: lower n=2 at b = 2 lambda + 2 gives -2 x row 1
        let lam = 0.5 + 1.0;
        let b = 2.0 * lam + 2.0;
        let raw = apply_kummer_lower_op(&kummer_poly(2, b).unwrap(), 2);
        let expect = kummer_poly(1, b).unwrap().scale(-2.0);
        assert!(raw.coeff_distance(&expect) < 1e-12);
    }

    #[test]
    fn hermite_ladder_rows() {
        // raise H2: 2z(-2+4z^2) - 8z = -12z + 8z^3 = H3
        let raw = apply_hermite_raise_op(&hermite_poly(2));
        assert!(raw.coeff_distance(&hermite_poly(3)) < 1e-12);
        // lower H1 = 2z -> derivative 2 = 2 * H0
        let res = hermite_lower(1);
        assert_relative_eq!(res.scalar, 2.0);
        assert!(res.poly().unwrap().coeff_distance(&hermite_poly(0)) < 1e-12);
        assert!(hermite_lower(0).annihilated());
    }

    #[test]
    fn polar_ladder_rows() {
        for &mu in &MUS {
            // raise row 1 -> row 2 exactly
            let raw = apply_polar_raise_op(&polar_parity_poly(1, mu), 1, mu);
            assert!(
                raw.coeff_distance(&polar_parity_poly(2, mu)) < 1e-12,
                "mu = {mu}"
            );
            // lower row 2 -> row 1, exact cancellation of the cubic term
            let raw = apply_polar_lower_op(&polar_parity_poly(2, mu), 2);
            assert!(raw.coeff_distance(&polar_parity_poly(1, mu)) < 1e-12);
        }
        assert!(polar_lower(0, 0.7).annihilated());
    }

    #[test]
    fn induction_regenerates_all_tables() {
        for &mu in &MUS {
            // Kummer chain at b = mu + 1 up to n = 3
            let b = mu + 1.0;
            let mut p = Polynomial::constant(1.0, Var::T);
            for n in 0..3u32 {
                p = apply_kummer_raise_op(&p, n, b).scale(1.0 / (b + n as f64));
                let expect = kummer_poly(n + 1, b).unwrap();
                assert!(
                    p.coeff_distance(&expect) <= 1e-12 * expect.max_abs_coeff(),
                    "kummer chain n={} mu={mu}",
                    n + 1
                );
            }
            // spherical-oscillator flavour b = mu + 3/2 and hydrogen b = 2mu + 2
            for b in [mu + 1.5, 2.0 * mu + 2.0] {
                let mut p = Polynomial::constant(1.0, Var::T);
                for n in 0..3u32 {
                    p = apply_kummer_raise_op(&p, n, b).scale(1.0 / (b + n as f64));
                    let expect = kummer_poly(n + 1, b).unwrap();
                    assert!(p.coeff_distance(&expect) <= 1e-12 * expect.max_abs_coeff());
                }
            }
            // polar chain up to n = 6, unit scalars
            let mut p = Polynomial::constant(1.0, Var::Z);
            for n in 0..6u32 {
                p = apply_polar_raise_op(&p, n, mu);
                let expect = polar_parity_poly(n + 1, mu);
                assert!(
                    p.coeff_distance(&expect) <= 1e-12 * expect.max_abs_coeff(),
                    "polar chain n={} mu={mu}",
                    n + 1
                );
            }
        }
        // Hermite chain to n = 6
        let mut p = Polynomial::constant(1.0, Var::Z);
        for n in 0..6u32 {
            p = apply_hermite_raise_op(&p);
            assert!(p.coeff_distance(&hermite_poly(n + 1)) < 1e-10);
        }
    }

    #[test]
    fn round_trips_scale_by_scalar_product() {
        for &mu in &MUS {
            for n in 1..=10u32 {
                let b = mu + 1.0;
                let pn = kummer_poly(n, b).unwrap();
                let round = apply_kummer_lower_op(&apply_kummer_raise_op(&pn, n, b), n + 1);
                let expect = pn.scale((b + n as f64) * -((n as f64) + 1.0));
                assert!(
                    round.coeff_distance(&expect) <= 1e-12 * expect.max_abs_coeff(),
                    "kummer round trip n={n} mu={mu}"
                );

                let h = hermite_poly(n);
                let round = apply_hermite_lower_op(&apply_hermite_raise_op(&h));
                let expect = h.scale(2.0 * (n as f64 + 1.0));
                assert!(round.coeff_distance(&expect) <= 1e-12 * expect.max_abs_coeff());

                let p = polar_parity_poly(n, mu);
                let round = apply_polar_lower_op(&apply_polar_raise_op(&p, n, mu), n + 1);
                assert!(
                    round.coeff_distance(&p) <= 1e-12 * p.max_abs_coeff(),
                    "polar round trip n={n} mu={mu}"
                );
            }
        }
    }

    #[test]
    fn raised_polynomials_still_solve_their_odes() {
        // raising must land exactly on the next eigen-polynomial
        let mu = PI / 2.7;
        for n in 0..8u32 {
            let p = apply_polar_raise_op(&polar_parity_poly(n, mu), n, mu);
            let r = crate::poly::ode_residual(&OdeFamily::Polar { n_theta: n + 1, mu }, &p);
            assert!(r.max_abs_coeff() <= 1e-12 * p.max_abs_coeff().max(1.0));
        }
    }

    #[test]
    fn polar_parity_alternates() {
        let mu = 0.5;
        let mut p = Polynomial::constant(1.0, Var::Z);
        for n in 0..8u32 {
            p = apply_polar_raise_op(&p, n, mu);
            let want = (n as usize + 1) % 2;
            for (k, &c) in p.coeffs().iter().enumerate() {
                if k % 2 != want {
                    assert_eq!(c, 0.0, "parity leak at n={}", n + 1);
                }
            }
        }
    }

    #[test]
    fn annihilation_only_at_chain_bottom() {
        for &mu in &MUS {
            for n in 1..=10u32 {
                assert!(!kummer_lower(n, mu + 1.0).unwrap().annihilated());
                assert!(!hermite_lower(n).annihilated());
                assert!(!polar_lower(n, mu).annihilated());
                // nonzero outputs
                assert!(kummer_lower(n, mu + 1.0).unwrap().poly().unwrap().max_abs_coeff() > 0.0);
            }
        }
    }

    #[test]
    fn ground_annihilation() {
        for &mu in &[0.5, 1.0, 2.0, PI / 2.7] {
            assert_eq!(ground_annihilation_residual(mu, Direction::Raise), 0.0);
            assert!(ground_annihilation_residual(mu, Direction::Lower) > 1.0);
        }
        // mismatched operator mu leaves exactly (mu - mu_op) on s^(mu-1)
        let r = singular_radial_op_residual(2.0, 3.0, Direction::Raise);
        assert_relative_eq!(r, 1.0);
    }

    #[test]
    fn apply_ladder_energy_steps() {
        let mode = AngularMode::new(1, PI).unwrap();
        let s = Eigenstate::OscCyl { n_rho: 0, n_z: 0, mode };

        let (up, scalar) = apply_ladder(&s, Dof::Axial, Direction::Raise)
            .unwrap()
            .unwrap();
        assert_eq!(up.quantum_numbers(), (0, 1));
        assert_relative_eq!(up.energy() - s.energy(), 1.0);
        assert_relative_eq!(scalar, 1.0);

        let (up, _) = apply_ladder(&s, Dof::Radial, Direction::Raise)
            .unwrap()
            .unwrap();
        assert_relative_eq!(up.energy() - s.energy(), 2.0);

        let (up, _) = apply_ladder(&s, Dof::Angular, Direction::Raise)
            .unwrap()
            .unwrap();
        assert_relative_eq!(up.energy() - s.energy(), PI / mode.phi0());

        let sph = Eigenstate::OscSph { n_r: 1, n_theta: 0, mode };
        let (down, scalar) = apply_ladder(&sph, Dof::Radial, Direction::Lower)
            .unwrap()
            .unwrap();
        assert_eq!(down.quantum_numbers(), (0, 0));
        assert_relative_eq!(scalar, -1.0);

        let hyd = Eigenstate::HydSph { n_r: 0, n_theta: 0, mode };
        let (up, scalar) = apply_ladder(&hyd, Dof::Radial, Direction::Raise)
            .unwrap()
            .unwrap();
        assert_eq!(up.quantum_numbers(), (1, 0));
        assert_relative_eq!(up.nu().unwrap(), hyd.nu().unwrap() + 1.0);
        assert_relative_eq!(scalar, 2.0 * mode.mu() + 2.0); // b + n_r at n_r = 0

        // annihilations and invalid dofs
        assert!(apply_ladder(&s, Dof::Radial, Direction::Lower).unwrap().is_none());
        assert!(apply_ladder(&s, Dof::Polar, Direction::Raise).is_err());
        let ps = Eigenstate::HydSpheroidal { n_u: 0, n_v: 1, mode, f: 1.0 };
        let (up, _) = apply_ladder(&ps, Dof::Radial, Direction::Raise)
            .unwrap()
            .unwrap();
        assert_eq!(up.quantum_numbers(), (1, 0));
        assert_relative_eq!(up.energy(), ps.energy()); // same multiplet
        assert!(apply_ladder(&up, Dof::Radial, Direction::Raise).unwrap().is_none());
    }
}
