//! Quantum-number bookkeeping, coordinate charts and full eigenfunction
//! evaluation for the five confined families.
//!
//! Units: oscillator energies in `hbar*omega` with lengths in
//! `sqrt(hbar/(m*omega))`; hydrogen energies in hartree with lengths in Bohr
//! radii (`e = hbar = m = a0 = 1`). The hydrogen length scale `nu * a0`
//! varies per state, so the Kummer factors are evaluated in the pre-scaled
//! variables `2r/nu`, `xi^2/nu`, `eta^2/nu`.
//!
//! Normalization convention: the angular factor carries `sqrt(2/phi0)`, the
//! polynomial factors are exactly the tabulated ones (Kummer constant term
//! 1, physicists' Hermite, parity-projected polar rows), and the singular
//! prefactors have unit coefficient. Absolute L2 constants are out of
//! scope; [`norm_ratio_to_nodeless`] supplies the exact ratios needed to
//! compare multiplet members.

use crate::error::Error;
use crate::poly::{hermite_poly, kummer_poly, polar_parity_poly};
use crate::Result;
use serde::{Deserialize, Serialize};

/// The confined angular degree of freedom: `Phi(phi) = sqrt(2/phi0) sin(mu phi)`
/// with `mu = n_phi * pi / phi0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularMode {
    n_phi: u32,
    phi0: f64,
    mu: f64,
    abstract_mu: bool,
}

impl AngularMode {
    /// Physical wedge mode. Requires `n_phi >= 1` and `phi0` in `(0, 2*pi]`.
    pub fn new(n_phi: u32, phi0: f64) -> Result<Self> {
        if n_phi == 0 {
            return Err(Error::InvalidArgument("n_phi must be >= 1".into()));
        }
        if !(phi0 > 0.0 && phi0 <= 2.0 * std::f64::consts::PI) {
            return Err(Error::InvalidArgument(format!(
                "phi0 = {phi0} outside (0, 2*pi]"
            )));
        }
        Ok(AngularMode {
            n_phi,
            phi0,
            mu: mu_from_angle(n_phi, phi0)?,
            abstract_mu: false,
        })
    }

    /// Abstract mode with `mu` given directly, bypassing the wedge geometry.
    /// Used for continuous parameter sweeps; the implied wedge is the
    /// fundamental one `n_phi = 1, phi0 = pi/mu`, which may exceed `2*pi`
    /// when `mu < 1/2`.
    pub fn from_mu(mu: f64) -> Result<Self> {
        if !mu.is_finite() || mu <= 0.0 {
            return Err(Error::InvalidArgument(format!("mu = {mu} must be > 0")));
        }
        Ok(AngularMode {
            n_phi: 1,
            phi0: std::f64::consts::PI / mu,
            mu,
            abstract_mu: true,
        })
    }

    pub fn n_phi(&self) -> u32 {
        self.n_phi
    }

    pub fn phi0(&self) -> f64 {
        self.phi0
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn is_abstract(&self) -> bool {
        self.abstract_mu
    }

    /// Mode with `n_phi` shifted by `delta` at fixed `phi0`.
    pub fn with_n_phi(&self, n_phi: u32) -> Result<Self> {
        let mut m = AngularMode::new(n_phi, self.phi0)?;
        m.abstract_mu = self.abstract_mu;
        Ok(m)
    }
}

/// `mu = n_phi * pi / phi0` (Dirichlet faces at `phi = 0` and `phi = phi0`).
pub fn mu_from_angle(n_phi: u32, phi0: f64) -> Result<f64> {
    if n_phi == 0 {
        return Err(Error::InvalidArgument("n_phi must be >= 1".into()));
    }
    if !(phi0 > 0.0 && phi0 <= 2.0 * std::f64::consts::PI) {
        return Err(Error::InvalidArgument(format!(
            "phi0 = {phi0} outside (0, 2*pi]"
        )));
    }
    Ok(n_phi as f64 * std::f64::consts::PI / phi0)
}

/// Angular factor `sqrt(2/phi0) * sin(mu * phi)`; rejects `phi` outside the
/// wedge `[0, phi0]`.
pub fn phi_eval(mode: &AngularMode, phi: f64) -> Result<f64> {
    if !(0.0..=mode.phi0).contains(&phi) {
        return Err(Error::OutOfRange(format!(
            "phi = {phi} outside wedge [0, {}]",
            mode.phi0
        )));
    }
    Ok((2.0 / mode.phi0).sqrt() * (mode.mu * phi).sin())
}

/// A point in one of the five coordinate charts.
///
/// All charts share one Cartesian frame except the prolate spheroidal
/// chart, which is centred on the midpoint of its foci at `z = -f` and
/// `z = +f`; its Cartesian image is `z = f*u*v`. For hydrogen states the
/// nucleus sits at the lower focus, and [`eval_eigenfunction`] applies the
/// `z`-offset when mixing the spheroidal chart with the nucleus-centred
/// ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoordinatePoint {
    Cartesian { x: f64, y: f64, z: f64 },
    Cylindrical { rho: f64, phi: f64, z: f64 },
    Spherical { r: f64, theta: f64, phi: f64 },
    Parabolic { xi: f64, eta: f64, phi: f64 },
    ProlateSpheroidal { u: f64, v: f64, phi: f64, f: f64 },
}

impl CoordinatePoint {
    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::OutOfRange(msg));
        match *self {
            CoordinatePoint::Cartesian { .. } => Ok(()),
            CoordinatePoint::Cylindrical { rho, .. } => {
                if rho < 0.0 {
                    return bad(format!("rho = {rho} < 0"));
                }
                Ok(())
            }
            CoordinatePoint::Spherical { r, theta, .. } => {
                if r < 0.0 {
                    return bad(format!("r = {r} < 0"));
                }
                if !(0.0..=std::f64::consts::PI).contains(&theta) {
                    return bad(format!("theta = {theta} outside [0, pi]"));
                }
                Ok(())
            }
            CoordinatePoint::Parabolic { xi, eta, .. } => {
                if xi < 0.0 || eta < 0.0 {
                    return bad(format!("xi = {xi}, eta = {eta} must be >= 0"));
                }
                Ok(())
            }
            CoordinatePoint::ProlateSpheroidal { u, v, f, .. } => {
                if u < 1.0 {
                    return bad(format!("u = {u} < 1"));
                }
                if !(-1.0..=1.0).contains(&v) {
                    return bad(format!("v = {v} outside [-1, 1]"));
                }
                if !f.is_finite() || f <= 0.0 {
                    return bad(format!("focal distance f = {f} must be > 0"));
                }
                Ok(())
            }
        }
    }

    /// Convert to the Cartesian chart (the spheroidal chart maps into its
    /// own midpoint-centred frame, `z = f*u*v`).
    pub fn to_cartesian(&self) -> Result<CoordinatePoint> {
        self.validate()?;
        let (x, y, z) = match *self {
            CoordinatePoint::Cartesian { x, y, z } => (x, y, z),
            CoordinatePoint::Cylindrical { rho, phi, z } => {
                (rho * phi.cos(), rho * phi.sin(), z)
            }
            CoordinatePoint::Spherical { r, theta, phi } => (
                r * theta.sin() * phi.cos(),
                r * theta.sin() * phi.sin(),
                r * theta.cos(),
            ),
            CoordinatePoint::Parabolic { xi, eta, phi } => (
                xi * eta * phi.cos(),
                xi * eta * phi.sin(),
                (xi * xi - eta * eta) / 2.0,
            ),
            CoordinatePoint::ProlateSpheroidal { u, v, phi, f } => {
                let rho = f * ((u * u - 1.0) * (1.0 - v * v)).max(0.0).sqrt();
                (rho * phi.cos(), rho * phi.sin(), f * u * v)
            }
        };
        Ok(CoordinatePoint::Cartesian { x, y, z })
    }

    pub fn to_cylindrical(&self) -> Result<CoordinatePoint> {
        let (x, y, z) = self.cartesian_triple()?;
        Ok(CoordinatePoint::Cylindrical {
            rho: x.hypot(y),
            phi: wrap_phi(y.atan2(x)),
            z,
        })
    }

    pub fn to_spherical(&self) -> Result<CoordinatePoint> {
        let (x, y, z) = self.cartesian_triple()?;
        let r = (x * x + y * y + z * z).sqrt();
        let theta = if r == 0.0 { 0.0 } else { (z / r).clamp(-1.0, 1.0).acos() };
        Ok(CoordinatePoint::Spherical {
            r,
            theta,
            phi: wrap_phi(y.atan2(x)),
        })
    }

    pub fn to_parabolic(&self) -> Result<CoordinatePoint> {
        let (x, y, z) = self.cartesian_triple()?;
        let r = (x * x + y * y + z * z).sqrt();
        Ok(CoordinatePoint::Parabolic {
            xi: (r + z).max(0.0).sqrt(),
            eta: (r - z).max(0.0).sqrt(),
            phi: wrap_phi(y.atan2(x)),
        })
    }

    /// Inverse of the spheroidal chart with focal half-distance `f`, in the
    /// chart's midpoint frame.
    pub fn to_prolate_spheroidal(&self, f: f64) -> Result<CoordinatePoint> {
        if !f.is_finite() || f <= 0.0 {
            return Err(Error::OutOfRange(format!("focal distance f = {f} must be > 0")));
        }
        let (x, y, z) = self.cartesian_triple()?;
        let rho2 = x * x + y * y;
        let r_lower = (rho2 + (z + f) * (z + f)).sqrt();
        let r_upper = (rho2 + (z - f) * (z - f)).sqrt();
        Ok(CoordinatePoint::ProlateSpheroidal {
            u: ((r_lower + r_upper) / (2.0 * f)).max(1.0),
            v: ((r_lower - r_upper) / (2.0 * f)).clamp(-1.0, 1.0),
            phi: wrap_phi(y.atan2(x)),
            f,
        })
    }

    fn cartesian_triple(&self) -> Result<(f64, f64, f64)> {
        match self.to_cartesian()? {
            CoordinatePoint::Cartesian { x, y, z } => Ok((x, y, z)),
            _ => unreachable!(),
        }
    }

    pub fn chart_name(&self) -> &'static str {
        match self {
            CoordinatePoint::Cartesian { .. } => "cartesian",
            CoordinatePoint::Cylindrical { .. } => "cylindrical",
            CoordinatePoint::Spherical { .. } => "spherical",
            CoordinatePoint::Parabolic { .. } => "parabolic",
            CoordinatePoint::ProlateSpheroidal { .. } => "prolate_spheroidal",
        }
    }
}

fn wrap_phi(phi: f64) -> f64 {
    if phi < 0.0 {
        phi + 2.0 * std::f64::consts::PI
    } else {
        phi
    }
}

/// Eigenstate family selector, used by [`multiplet`] and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    OscCyl,
    OscSph,
    HydSph,
    HydPar,
    HydSpheroidal,
}

/// A bound state of one of the five families.
///
/// The principal labels are derived, not stored: `lambda = n_theta + mu`,
/// `nu = n1 + n2 + mu + 1`, `E` per [`Eigenstate::energy`].
#[derive(Debug, Clone, PartialEq)]
pub enum Eigenstate {
    OscCyl { n_rho: u32, n_z: u32, mode: AngularMode },
    OscSph { n_r: u32, n_theta: u32, mode: AngularMode },
    HydSph { n_r: u32, n_theta: u32, mode: AngularMode },
    HydPar { n_xi: u32, n_eta: u32, mode: AngularMode },
    HydSpheroidal { n_u: u32, n_v: u32, mode: AngularMode, f: f64 },
}

impl Eigenstate {
    pub fn mode(&self) -> &AngularMode {
        match self {
            Eigenstate::OscCyl { mode, .. }
            | Eigenstate::OscSph { mode, .. }
            | Eigenstate::HydSph { mode, .. }
            | Eigenstate::HydPar { mode, .. }
            | Eigenstate::HydSpheroidal { mode, .. } => mode,
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Eigenstate::OscCyl { .. } => Family::OscCyl,
            Eigenstate::OscSph { .. } => Family::OscSph,
            Eigenstate::HydSph { .. } => Family::HydSph,
            Eigenstate::HydPar { .. } => Family::HydPar,
            Eigenstate::HydSpheroidal { .. } => Family::HydSpheroidal,
        }
    }

    /// The two non-angular quantum numbers in family order.
    pub fn quantum_numbers(&self) -> (u32, u32) {
        match *self {
            Eigenstate::OscCyl { n_rho, n_z, .. } => (n_rho, n_z),
            Eigenstate::OscSph { n_r, n_theta, .. } => (n_r, n_theta),
            Eigenstate::HydSph { n_r, n_theta, .. } => (n_r, n_theta),
            Eigenstate::HydPar { n_xi, n_eta, .. } => (n_xi, n_eta),
            Eigenstate::HydSpheroidal { n_u, n_v, .. } => (n_u, n_v),
        }
    }

    /// Angular-momentum label `lambda = n_theta + mu` for the spherical
    /// families.
    pub fn lambda(&self) -> Option<f64> {
        match *self {
            Eigenstate::OscSph { n_theta, ref mode, .. }
            | Eigenstate::HydSph { n_theta, ref mode, .. } => {
                Some(n_theta as f64 + mode.mu())
            }
            _ => None,
        }
    }

    /// Non-integer principal label `nu = n1 + n2 + mu + 1` (hydrogen only).
    pub fn nu(&self) -> Option<f64> {
        match *self {
            Eigenstate::HydSph { n_r, n_theta, ref mode } => {
                Some((n_r + n_theta) as f64 + mode.mu() + 1.0)
            }
            Eigenstate::HydPar { n_xi, n_eta, ref mode } => {
                Some((n_xi + n_eta) as f64 + mode.mu() + 1.0)
            }
            Eigenstate::HydSpheroidal { n_u, n_v, ref mode, .. } => {
                Some((n_u + n_v) as f64 + mode.mu() + 1.0)
            }
            _ => None,
        }
    }

    /// Energy in `hbar*omega` (oscillator) or hartree (hydrogen,
    /// `E = -1/(2 nu^2)`).
    pub fn energy(&self) -> f64 {
        let mu = self.mode().mu();
        match *self {
            Eigenstate::OscCyl { n_rho, n_z, .. } => {
                2.0 * n_rho as f64 + mu + n_z as f64 + 1.5
            }
            Eigenstate::OscSph { n_r, n_theta, .. } => {
                2.0 * n_r as f64 + n_theta as f64 + mu + 1.5
            }
            _ => {
                let nu = self.nu().expect("hydrogen family");
                -1.0 / (2.0 * nu * nu)
            }
        }
    }

    /// Parabolic separation constants `(A_xi, A_eta)` in atomic units;
    /// their sum is exactly 2.
    pub fn separation_constants(&self) -> Option<(f64, f64)> {
        match *self {
            Eigenstate::HydPar { n_xi, ref mode, .. } => {
                let nu = self.nu().unwrap();
                let a_xi = (2.0 * n_xi as f64 + mode.mu() + 1.0) / nu;
                Some((a_xi, 2.0 - a_xi))
            }
            _ => None,
        }
    }
}

/// All states of a family with `n1 + n2 = N` (hydrogen) or `2 n1 + n2 = N`
/// (oscillator), sharing the mode, ordered by descending first quantum
/// number. Sizes: `floor(N/2) + 1` for the oscillator chains, `N + 1` for
/// hydrogen.
pub fn multiplet(
    family: Family,
    n_total: u32,
    mode: &AngularMode,
    f: Option<f64>,
) -> Result<Vec<Eigenstate>> {
    let mut out = Vec::new();
    match family {
        Family::OscCyl => {
            for n_rho in (0..=n_total / 2).rev() {
                out.push(Eigenstate::OscCyl {
                    n_rho,
                    n_z: n_total - 2 * n_rho,
                    mode: *mode,
                });
            }
        }
        Family::OscSph => {
            for n_r in (0..=n_total / 2).rev() {
                out.push(Eigenstate::OscSph {
                    n_r,
                    n_theta: n_total - 2 * n_r,
                    mode: *mode,
                });
            }
        }
        Family::HydSph => {
            for n_r in (0..=n_total).rev() {
                out.push(Eigenstate::HydSph {
                    n_r,
                    n_theta: n_total - n_r,
                    mode: *mode,
                });
            }
        }
        Family::HydPar => {
            for n_xi in (0..=n_total).rev() {
                out.push(Eigenstate::HydPar {
                    n_xi,
                    n_eta: n_total - n_xi,
                    mode: *mode,
                });
            }
        }
        Family::HydSpheroidal => {
            let f = f.ok_or_else(|| {
                Error::InvalidArgument("spheroidal multiplet needs a focal distance".into())
            })?;
            if !f.is_finite() || f <= 0.0 {
                return Err(Error::InvalidArgument(format!("f = {f} must be > 0")));
            }
            for n_u in (0..=n_total).rev() {
                out.push(Eigenstate::HydSpheroidal {
                    n_u,
                    n_v: n_total - n_u,
                    mode: *mode,
                    f,
                });
            }
        }
    }
    Ok(out)
}

/// Evaluate the (polynomial-convention) eigenfunction at a point.
///
/// The point may be given in any chart; it is converted to the state's
/// natural chart first. For hydrogen states the nucleus-centred charts and
/// the spheroidal chart are offset by `f` along `z` (nucleus at the lower
/// focus), which the conversion accounts for.
pub fn eval_eigenfunction(state: &Eigenstate, point: &CoordinatePoint) -> Result<f64> {
    let mode = state.mode();
    match *state {
        Eigenstate::OscCyl { n_rho, n_z, .. } => {
            let (rho, phi, z) = match point.to_cylindrical()? {
                CoordinatePoint::Cylindrical { rho, phi, z } => (rho, phi, z),
                _ => unreachable!(),
            };
            let m = kummer_poly(n_rho, mode.mu() + 1.0)?;
            Ok(rho.powf(mode.mu())
                * (-(rho * rho + z * z) / 2.0).exp()
                * m.eval(rho * rho)
                * hermite_poly(n_z).eval(z)
                * phi_eval(mode, phi)?)
        }
        Eigenstate::OscSph { n_r, n_theta, .. } => {
            let (r, theta, phi) = match point.to_spherical()? {
                CoordinatePoint::Spherical { r, theta, phi } => (r, theta, phi),
                _ => unreachable!(),
            };
            let lam = n_theta as f64 + mode.mu();
            let m = kummer_poly(n_r, lam + 1.5)?;
            Ok(r.powf(lam)
                * (-(r * r) / 2.0).exp()
                * m.eval(r * r)
                * theta.sin().powf(mode.mu())
                * polar_parity_poly(n_theta, mode.mu()).eval(theta.cos())
                * phi_eval(mode, phi)?)
        }
        Eigenstate::HydSph { n_r, n_theta, .. } => {
            let nu = state.nu().unwrap();
            let p = hydrogen_point(point, None)?;
            let (r, theta, phi) = match p.to_spherical()? {
                CoordinatePoint::Spherical { r, theta, phi } => (r, theta, phi),
                _ => unreachable!(),
            };
            let lam = n_theta as f64 + mode.mu();
            let m = kummer_poly(n_r, 2.0 * lam + 2.0)?;
            Ok(r.powf(lam)
                * (-r / nu).exp()
                * m.eval(2.0 * r / nu)
                * theta.sin().powf(mode.mu())
                * polar_parity_poly(n_theta, mode.mu()).eval(theta.cos())
                * phi_eval(mode, phi)?)
        }
        Eigenstate::HydPar { n_xi, n_eta, .. } => {
            let nu = state.nu().unwrap();
            let p = hydrogen_point(point, None)?;
            let (xi, eta, phi) = match p.to_parabolic()? {
                CoordinatePoint::Parabolic { xi, eta, phi } => (xi, eta, phi),
                _ => unreachable!(),
            };
            let mx = kummer_poly(n_xi, mode.mu() + 1.0)?;
            let me = kummer_poly(n_eta, mode.mu() + 1.0)?;
            Ok((xi * eta).powf(mode.mu())
                * (-(xi * xi + eta * eta) / (2.0 * nu)).exp()
                * mx.eval(xi * xi / nu)
                * me.eval(eta * eta / nu)
                * phi_eval(mode, phi)?)
        }
        Eigenstate::HydSpheroidal { n_u, n_v, f, .. } => {
            let nu = state.nu().unwrap();
            let p = hydrogen_point(point, Some(f))?;
            let (u, v, phi) = match p {
                CoordinatePoint::ProlateSpheroidal { u, v, phi, .. } => (u, v, phi),
                _ => unreachable!(),
            };
            let spec = crate::spheroidal::SpheroidalSpec::new(mode.mu(), f, n_u + n_v)?;
            let sols = crate::spheroidal::solve_ode_derived(&spec)?;
            let sol = &sols[n_u as usize];
            let s_u = sol.series_eval(u);
            let s_v = sol.series_eval(v);
            let rho = f * ((u * u - 1.0) * (1.0 - v * v)).max(0.0).sqrt();
            Ok(rho.powf(mode.mu())
                * (-f * (u + v) / nu).exp()
                * s_u
                * s_v
                * phi_eval(mode, phi)?)
        }
    }
}

/// Map `point` into the chart frame a hydrogen family expects.
///
/// `spheroidal_f = None`: target is a nucleus-centred chart; a spheroidal
/// input point is shifted by `+f` along `z`. `Some(f)`: target is the
/// spheroidal chart with that focal distance; nucleus-centred inputs are
/// shifted by `-f`.
fn hydrogen_point(point: &CoordinatePoint, spheroidal_f: Option<f64>) -> Result<CoordinatePoint> {
    match (point, spheroidal_f) {
        (CoordinatePoint::ProlateSpheroidal { u, v, phi, f }, None) => {
            let cart = CoordinatePoint::ProlateSpheroidal {
                u: *u,
                v: *v,
                phi: *phi,
                f: *f,
            }
            .to_cartesian()?;
            match cart {
                CoordinatePoint::Cartesian { x, y, z } => {
                    Ok(CoordinatePoint::Cartesian { x, y, z: z + f })
                }
                _ => unreachable!(),
            }
        }
        (CoordinatePoint::ProlateSpheroidal { f: pf, .. }, Some(f)) => {
            if (pf - f).abs() > 1e-12 * f.max(1.0) {
                return Err(Error::ChartMismatch(format!(
                    "point focal distance {pf} differs from state focal distance {f}"
                )));
            }
            point.validate()?;
            Ok(*point)
        }
        (_, None) => Ok(*point),
        (other, Some(f)) => {
            let (x, y, z) = other.cartesian_triple()?;
            CoordinatePoint::Cartesian { x, y, z: z - f }.to_prolate_spheroidal(f)
        }
    }
}

fn ln_pochhammer(x: f64, n: u32) -> f64 {
    (0..n).map(|k| (x + k as f64).ln()).sum()
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Ratio `N_state / N_nodeless` of L2 normalization constants between a
/// state and the nodeless reference of its family sharing the same `mu`
/// and (for hydrogen) the same length scale `nu`.
///
/// These are the exact ratios that make [`eval_eigenfunction`] values of
/// different multiplet members comparable; closed forms via Gamma-function
/// norms of the Laguerre-type and Gegenbauer-type factors.
pub fn norm_ratio_to_nodeless(state: &Eigenstate) -> Result<f64> {
    let mu = state.mode().mu();
    match *state {
        Eigenstate::OscCyl { n_rho, n_z, .. } => {
            // radial: int rho^(2mu+1) e^{-rho^2} M^2 drho = (1/2) n! G(mu+1)^2 / G(n+mu+1)
            // axial:  int e^{-z^2} H_n^2 dz = 2^n n! sqrt(pi)
            let ln_k2 = ln_pochhammer(mu + 1.0, n_rho)
                - ln_factorial(n_rho)
                - (n_z as f64) * 2f64.ln()
                - ln_factorial(n_z);
            Ok((0.5 * ln_k2).exp())
        }
        Eigenstate::OscSph { n_r, n_theta, .. } => {
            let lam = n_theta as f64 + mu;
            let ln_rad = ln_gamma_ratio_radial_gauss(n_r, lam + 1.5, mu + 1.5);
            let ln_ang = ln_polar_norm2(n_theta, mu) - ln_polar_norm2(0, mu);
            Ok((-0.5 * (ln_rad + ln_ang)).exp())
        }
        Eigenstate::HydSph { n_r, n_theta, ref mode } => {
            let nu = state.nu().unwrap();
            let lam = n_theta as f64 + mode.mu();
            // radial: (nu/2)^(2lam+3) n! G(2lam+2)^2 (2n+2lam+2) / G(n+2lam+2)
            let ln_rad_state = (2.0 * lam + 3.0) * (nu / 2.0).ln() + ln_factorial(n_r)
                + 2.0 * ln_gamma(2.0 * lam + 2.0)
                + (2.0 * n_r as f64 + 2.0 * lam + 2.0).ln()
                - ln_gamma(n_r as f64 + 2.0 * lam + 2.0);
            let ln_rad_ref = (2.0 * mu + 3.0) * (nu / 2.0).ln()
                + 2.0 * ln_gamma(2.0 * mu + 2.0)
                + (2.0 * mu + 2.0).ln()
                - ln_gamma(2.0 * mu + 2.0);
            let ln_ang = ln_polar_norm2(n_theta, mu) - ln_polar_norm2(0, mu);
            Ok((-0.5 * (ln_rad_state - ln_rad_ref + ln_ang)).exp())
        }
        Eigenstate::HydPar { n_xi, n_eta, ref mode } => {
            let nu = state.nu().unwrap();
            // |psi|^2 = (nu^(2mu+3)/4) g0(nx) g0(ne) * 2(nx+ne+mu+1),
            // g0(n) = n! G(mu+1)^2 / G(n+mu+1); reference has 2(mu+1).
            let m = mode.mu();
            let ln_k2 = ln_pochhammer(m + 1.0, n_xi) - ln_factorial(n_xi)
                + ln_pochhammer(m + 1.0, n_eta)
                - ln_factorial(n_eta)
                + ((m + 1.0) / nu).ln();
            Ok((0.5 * ln_k2).exp())
        }
        Eigenstate::HydSpheroidal { .. } => Err(Error::InvalidArgument(
            "no closed-form norm ratio for spheroidal states".into(),
        )),
    }
}

/// `ln` of `[n! G(b)^2 / G(n+b)] / G(b_ref)` relative radial Gaussian norm,
/// for `int t^(b-1) e^-t M(-n, b, t)^2 dt` style integrals.
fn ln_gamma_ratio_radial_gauss(n: u32, b: f64, b_ref: f64) -> f64 {
    ln_factorial(n) + 2.0 * ln_gamma(b) - ln_gamma(n as f64 + b) - ln_gamma(b_ref)
}

/// `ln` of `int_{-1}^{1} (1-z^2)^mu polar_n(z)^2 dz` through the Gegenbauer
/// norm with index `alpha = mu + 1/2`.
fn ln_polar_norm2(n_theta: u32, mu: f64) -> f64 {
    let n = n_theta as f64;
    let alpha = mu + 0.5;
    // polar_n = g_n C_n^(alpha), g_n = n! (n+2mu+1)_n / (4^n (mu+1)_n (alpha)_n)
    let ln_g = ln_factorial(n_theta) + ln_pochhammer(n + 2.0 * mu + 1.0, n_theta)
        - (n_theta as f64) * 4f64.ln()
        - ln_pochhammer(mu + 1.0, n_theta)
        - ln_pochhammer(alpha, n_theta);
    let ln_c2 = std::f64::consts::PI.ln() + (1.0 - 2.0 * alpha) * 2f64.ln()
        + ln_gamma(n + 2.0 * alpha)
        - ln_factorial(n_theta)
        - (n + alpha).ln()
        - 2.0 * ln_gamma(alpha);
    2.0 * ln_g + ln_c2
}

/// Lanczos log-Gamma for positive arguments.
pub fn ln_gamma(x: f64) -> f64 {
    #[allow(clippy::excessive_precision)]
    const G: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    debug_assert!(x > 0.0);
    let x = x - 1.0;
    let mut a = G[0];
    let t = x + 7.5;
    for (i, &g) in G.iter().enumerate().skip(1) {
        a += g / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Flat serialization of an [`Eigenstate`], the CLI wire format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateSpec {
    pub system: String,
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_rho: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_z: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_theta: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_xi: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_eta: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_u: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_v: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_phi: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<f64>,
}

impl Eigenstate {
    pub fn to_spec(&self) -> StateSpec {
        let mode = self.mode();
        let (system, family) = match self.family() {
            Family::OscCyl => ("osc", "cyl"),
            Family::OscSph => ("osc", "sph"),
            Family::HydSph => ("hydrogen", "sph"),
            Family::HydPar => ("hydrogen", "par"),
            Family::HydSpheroidal => ("hydrogen", "spheroidal"),
        };
        let mut spec = StateSpec {
            system: system.into(),
            family: family.into(),
            n_rho: None,
            n_z: None,
            n_r: None,
            n_theta: None,
            n_xi: None,
            n_eta: None,
            n_u: None,
            n_v: None,
            n_phi: None,
            phi0: None,
            mu: None,
            f: None,
        };
        if mode.is_abstract() {
            spec.mu = Some(mode.mu());
        } else {
            spec.n_phi = Some(mode.n_phi());
            spec.phi0 = Some(mode.phi0());
        }
        match *self {
            Eigenstate::OscCyl { n_rho, n_z, .. } => {
                spec.n_rho = Some(n_rho);
                spec.n_z = Some(n_z);
            }
            Eigenstate::OscSph { n_r, n_theta, .. } => {
                spec.n_r = Some(n_r);
                spec.n_theta = Some(n_theta);
            }
            Eigenstate::HydSph { n_r, n_theta, .. } => {
                spec.n_r = Some(n_r);
                spec.n_theta = Some(n_theta);
            }
            Eigenstate::HydPar { n_xi, n_eta, .. } => {
                spec.n_xi = Some(n_xi);
                spec.n_eta = Some(n_eta);
            }
            Eigenstate::HydSpheroidal { n_u, n_v, f, .. } => {
                spec.n_u = Some(n_u);
                spec.n_v = Some(n_v);
                spec.f = Some(f);
            }
        }
        spec
    }

    pub fn from_spec(spec: &StateSpec) -> Result<Eigenstate> {
        let mode = match (spec.mu, spec.n_phi, spec.phi0) {
            (Some(mu), None, None) => AngularMode::from_mu(mu)?,
            (None, Some(n_phi), Some(phi0)) => AngularMode::new(n_phi, phi0)?,
            _ => {
                return Err(Error::Parse(
                    "state needs either mu or both n_phi and phi0".into(),
                ))
            }
        };
        let need = |v: Option<u32>, name: &str| {
            v.ok_or_else(|| Error::Parse(format!("missing quantum number {name}")))
        };
        match (spec.system.as_str(), spec.family.as_str()) {
            ("osc", "cyl") => Ok(Eigenstate::OscCyl {
                n_rho: need(spec.n_rho, "n_rho")?,
                n_z: need(spec.n_z, "n_z")?,
                mode,
            }),
            ("osc", "sph") => Ok(Eigenstate::OscSph {
                n_r: need(spec.n_r, "n_r")?,
                n_theta: need(spec.n_theta, "n_theta")?,
                mode,
            }),
            ("hydrogen", "sph") => Ok(Eigenstate::HydSph {
                n_r: need(spec.n_r, "n_r")?,
                n_theta: need(spec.n_theta, "n_theta")?,
                mode,
            }),
            ("hydrogen", "par") => Ok(Eigenstate::HydPar {
                n_xi: need(spec.n_xi, "n_xi")?,
                n_eta: need(spec.n_eta, "n_eta")?,
                mode,
            }),
            ("hydrogen", "spheroidal") => {
                let f = spec
                    .f
                    .ok_or_else(|| Error::Parse("spheroidal state needs f".into()))?;
                if !f.is_finite() || f <= 0.0 {
                    return Err(Error::Parse(format!("f = {f} must be > 0")));
                }
                Ok(Eigenstate::HydSpheroidal {
                    n_u: need(spec.n_u, "n_u")?,
                    n_v: need(spec.n_v, "n_v")?,
                    mode,
                    f,
                })
            }
            (s, fam) => Err(Error::Parse(format!("unknown system/family {s}/{fam}"))),
        }
    }
}
