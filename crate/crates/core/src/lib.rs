//! Eigenfunctions, ladder operators and interbasis expansions for quantum
//! systems confined by a dihedral angle.
//!
//! A particle restricted to the wedge `0 < phi < phi0` between two meridian
//! half-planes, with Dirichlet conditions on both faces, keeps a separable
//! Schrödinger equation but trades the integer magnetic quantum number `m`
//! for the non-integer eigenvalue `mu = n_phi * pi / phi0`. This crate
//! implements the complete bound-state machinery for the two exactly
//! solvable systems in that geometry:
//!
//! * the isotropic harmonic oscillator, in circular cylindrical and
//!   spherical coordinates ([`states::Eigenstate::OscCyl`],
//!   [`states::Eigenstate::OscSph`]);
//! * the hydrogen atom, in spherical, parabolic and prolate spheroidal
//!   coordinates.
//!
//! The building blocks are organised the way the physics separates:
//!
//! * [`poly`] — exact dense-polynomial arithmetic plus constructors for the
//!   terminating Kummer series, Hermite polynomials and the parity-projected
//!   polar polynomials, together with coefficient-level ODE residuals.
//! * [`states`] — quantum-number bookkeeping, energies, coordinate charts
//!   and full eigenfunction evaluation.
//! * [`ladders`] — raising and lowering operators for every degree of
//!   freedom, returning the exact scalar factors.
//! * [`spheroidal`] — the prolate-spheroidal three-term recurrence as a
//!   tridiagonal eigenproblem, an independent ODE-derived recurrence oracle,
//!   and characteristic-polynomial cross-checks.
//! * [`interbasis`] — closed-form and numerically recovered transformation
//!   matrices between degenerate multiplets in different coordinates.
//!
//! Oscillator quantities are expressed in units of `hbar*omega` and
//! `sqrt(hbar/(m*omega))`; hydrogen quantities in hartree and Bohr radii.

pub mod error;
pub mod interbasis;
pub mod ladders;
pub mod linalg;
pub mod poly;
pub mod spheroidal;
pub mod states;

pub use error::Error;
pub use poly::{hermite_poly, kummer_poly, polar_parity_poly, Polynomial, Var};
pub use states::{AngularMode, CoordinatePoint, Eigenstate};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
