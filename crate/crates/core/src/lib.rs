//! Exactly solvable s-wave ground states from spherically symmetric charge
//! densities.
//!
//! A density that is a finite sum of power laws `c·r^k` (with `k ≥ -1`) is
//! turned into an electrostatic field by Gauss's law. The logarithmic
//! substitution `V = ln(ψ/A)` maps the Poisson equation onto a radial
//! Schrödinger equation whose ground state is `ψ = A·exp(-S(r))` with
//! `S' = |E|`. The constant part of the field fixes the energy, the varying
//! part fixes the potential.
//!
//! Every analytic result is cross-checked by the [`oracle`] module: a Numerov
//! shooting solver, Simpson quadrature and finite-difference residuals.
//!
//! All quantities are in atomic units with `ε₀ = V₀ = a₀ = ħ = m = 1`.

pub mod duality;
pub mod electrostatics;
mod error;
pub mod oracle;
pub mod radial;
pub mod specfun;

pub use duality::{solve_dual, DualFamilyParams, DualSolution, FieldDecomposition, NormalizationMethod};
pub use electrostatics::{ChargeDensity, UnitConvention};
pub use error::{Error, Result};
pub use oracle::{verify, GridSpec, VerificationReport};
pub use radial::{PowerTerm, RadialPolynomial};
