//! Dense real-coefficient polynomials and the polynomial families that make
//! up every bound-state eigenfunction in this crate.
//!
//! All special-function factors used by [`crate::states`] are genuine
//! polynomials: terminating Kummer (confluent hypergeometric) series,
//! physicists' Hermite polynomials, and the parity-projected polar
//! polynomials in `cos(theta)` that replace associated Legendre polynomials
//! when the magnetic quantum number is not an integer. Each family comes
//! with its defining ODE, exposed through [`ode_residual`] so tests can
//! verify constructors at the coefficient level.

use crate::error::Error;
use crate::Result;

/// Trim threshold relative to the largest coefficient magnitude.
pub const TRIM_EPS: f64 = 1e-14;

/// Symbolic tag for the polynomial variable.
///
/// The tag does not affect arithmetic; it guards against mixing factors
/// that live in different scaled variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    /// Kummer argument, e.g. `t = rho^2` or `t = 2r/(nu a0)`.
    T,
    /// Axial coordinate or `cos(theta)`.
    Z,
    /// Spheroidal shifted variable `w = u - 1` (or `v - 1`).
    W,
    /// Generic radial sample variable.
    S,
}

impl std::fmt::Display for Var {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Var::T => write!(f, "t"),
            Var::Z => write!(f, "z"),
            Var::W => write!(f, "w"),
            Var::S => write!(f, "s"),
        }
    }
}

/// Dense univariate polynomial, `coeffs[k]` multiplying the k-th power.
///
/// Canonical form: the zero polynomial is the empty coefficient list, and
/// otherwise the highest-index coefficient is nonzero. Every operation
/// restores canonical form, trimming coefficients below
/// `TRIM_EPS * max|c|`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
    var: Var,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>, var: Var) -> Self {
        let mut p = Polynomial { coeffs, var };
        p.canonicalize();
        p
    }

    pub fn zero(var: Var) -> Self {
        Polynomial { coeffs: Vec::new(), var }
    }

    pub fn constant(c: f64, var: Var) -> Self {
        Polynomial::new(vec![c], var)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of the k-th power (0 beyond the stored degree).
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Horner evaluation; the zero polynomial evaluates to 0.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Formal derivative. Degree drops by exactly one for nonconstant input.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero(self.var);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| k as f64 * c)
            .collect();
        Polynomial::new(coeffs, self.var)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.var, other.var);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Polynomial::new(coeffs, self.var)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect(), self.var)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.var, other.var);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.var);
        }
        let mut coeffs = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs, self.var)
    }

    /// Multiply by the k-th power of the variable.
    pub fn mul_power(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0.0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial::new(coeffs, self.var)
    }

    /// Largest absolute difference between coefficients of equal power.
    pub fn coeff_distance(&self, other: &Polynomial) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).fold(0.0f64, |m, k| m.max((self.coeff(k) - other.coeff(k)).abs()))
    }

    fn canonicalize(&mut self) {
        let max = self.max_abs_coeff();
        if max == 0.0 {
            self.coeffs.clear();
            return;
        }
        let tol = TRIM_EPS * max;
        for c in self.coeffs.iter_mut() {
            if c.abs() < tol {
                *c = 0.0;
            }
        }
        while matches!(self.coeffs.last(), Some(&c) if c == 0.0) {
            self.coeffs.pop();
        }
    }
}

/// Terminating Kummer series `M(-n, b, t)` with constant term 1 and degree
/// exactly `n`; coefficient of `t^k` is `(-n)_k / ((b)_k k!)`.
pub fn kummer_poly(n: u32, b: f64) -> Result<Polynomial> {
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut c = 1.0;
    coeffs.push(c);
    for k in 1..=n {
        let denom = b + (k - 1) as f64;
        if denom == 0.0 {
            return Err(Error::PochhammerPole { b, k });
        }
        c *= -((n - k + 1) as f64) / (denom * k as f64);
        coeffs.push(c);
    }
    Ok(Polynomial::new(coeffs, Var::T))
}

/// Physicists' Hermite polynomial `H_n(z)`, leading coefficient `2^n`.
pub fn hermite_poly(n: u32) -> Polynomial {
    let mut prev = Polynomial::constant(1.0, Var::Z);
    if n == 0 {
        return prev;
    }
    let mut cur = Polynomial::new(vec![0.0, 2.0], Var::Z);
    for k in 1..n {
        // H_{k+1} = 2 z H_k - 2 k H_{k-1}
        let next = cur.mul_power(1).scale(2.0).sub(&prev.scale(2.0 * k as f64));
        prev = cur;
        cur = next;
    }
    cur
}

/// Polar polynomial of definite parity in `z = cos(theta)`.
///
/// This is the even- or odd-power part (parity `(-1)^{n_theta}`) of the
/// terminating Gauss series
/// `2F1(-n_theta, n_theta + 2 mu + 1; mu + 1; (1 - z)/2)`.
/// For non-integer `mu` the series itself mixes parities; the projection is
/// what carries a definite parity under `z -> -z`. At integer `mu = 0` it
/// reduces to the Legendre polynomial `P_n(z)`.
///
/// The projection is proportional to the Gegenbauer polynomial
/// `C_n^(mu+1/2)`, whose coefficients are pure products; building them that
/// way avoids the alternating-sum cancellation of the raw series (the
/// equivalence is covered by a test oracle that does the projection
/// directly).
pub fn polar_parity_poly(n_theta: u32, mu: f64) -> Polynomial {
    let n = n_theta as usize;
    let alpha = mu + 0.5;
    let mut coeffs = vec![0.0f64; n + 1];
    // leading coefficient (n + 2 mu + 1)_n / (2^n (mu + 1)_n), then walk
    // down in steps of two powers with the term ratio
    // t_m / t_{m-1} = (n - 2m + 2)(n - 2m + 1) / (4 m (alpha + n - m))
    let mut term = 1.0f64;
    for k in 0..n {
        term *= (n as f64 + 2.0 * mu + 1.0 + k as f64) / (2.0 * (mu + 1.0 + k as f64));
    }
    let mut sign = 1.0;
    for m in 0..=n / 2 {
        if m > 0 {
            term *= ((n - 2 * m + 2) * (n - 2 * m + 1)) as f64
                / (4.0 * m as f64 * (alpha + (n - m) as f64));
            sign = -sign;
        }
        coeffs[n - 2 * m] = sign * term;
    }
    Polynomial::new(coeffs, Var::Z)
}

/// ODE family specification consumed by [`ode_residual`].
#[derive(Debug, Clone)]
pub enum OdeFamily {
    /// `t M'' + (b - t) M' + n M = 0`
    Kummer { n: u32, b: f64 },
    /// `H'' - 2 z H' + 2 n H = 0`
    Hermite { n: u32 },
    /// `(1 - z^2) P'' - 2 (mu + 1) z P' + n (n + 2 mu + 1) P = 0`
    ///
    /// The equation for the polynomial factor after stripping the
    /// `sin^mu(theta)` singularity from the polar equation.
    Polar { n_theta: u32, mu: f64 },
    /// Conjugated prolate-spheroidal equation for the series in `w = u - 1`;
    /// `a` is the eigenvalue in the shifted convention of
    /// [`crate::spheroidal::solve_ode_derived`].
    Spheroidal { mu: f64, f: f64, n_total: u32, a: f64 },
}

/// Residual polynomial of the family's defining ODE applied to `p`.
///
/// Zero (to rounding) exactly when `p` is the eigen-polynomial for the
/// given parameters; a nonzero residual is a correctness signal for tests,
/// not an error.
pub fn ode_residual(family: &OdeFamily, p: &Polynomial) -> Polynomial {
    match *family {
        OdeFamily::Kummer { n, b } => {
            let d1 = p.derivative();
            let d2 = d1.derivative();
            let lin = Polynomial::new(vec![b, -1.0], p.var()); // b - t
            d2.mul_power(1)
                .add(&lin.mul(&d1))
                .add(&p.scale(n as f64))
        }
        OdeFamily::Hermite { n } => {
            let d1 = p.derivative();
            let d2 = d1.derivative();
            d2.sub(&d1.mul_power(1).scale(2.0))
                .add(&p.scale(2.0 * n as f64))
        }
        OdeFamily::Polar { n_theta, mu } => {
            let d1 = p.derivative();
            let d2 = d1.derivative();
            let one_minus_z2 = Polynomial::new(vec![1.0, 0.0, -1.0], p.var());
            let nt = n_theta as f64;
            one_minus_z2
                .mul(&d2)
                .sub(&d1.mul_power(1).scale(2.0 * (mu + 1.0)))
                .add(&p.scale(nt * (nt + 2.0 * mu + 1.0)))
        }
        OdeFamily::Spheroidal { mu, f, n_total, a } => {
            crate::spheroidal::conjugated_ode_residual(mu, f, n_total, a, p)
        }
    }
}
