//! Gauss's-law fields, potentials and the Poisson residual for spherically
//! symmetric power-law densities.

use serde::{Deserialize, Serialize};

use crate::radial::{RadialPolynomial, EXPONENT_TOLERANCE};
use crate::{Error, Result};

/// Atomic units with the arbitrary length and potential scales set to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitConvention {
    pub epsilon0: f64,
    pub v0: f64,
    pub a0: f64,
    pub hbar: f64,
    pub mass: f64,
}

impl UnitConvention {
    pub const ATOMIC: UnitConvention = UnitConvention {
        epsilon0: 1.0,
        v0: 1.0,
        a0: 1.0,
        hbar: 1.0,
        mass: 1.0,
    };
}

impl Default for UnitConvention {
    fn default() -> Self {
        Self::ATOMIC
    }
}

/// A volume charge density `ρ(r)`, restricted to exponents `≥ -1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RadialPolynomial", into = "RadialPolynomial")]
pub struct ChargeDensity {
    profile: RadialPolynomial,
}

impl ChargeDensity {
    pub fn new(profile: RadialPolynomial) -> Result<Self> {
        if profile.is_zero() {
            return Err(Error::EmptyDensity);
        }
        if let Some(k) = profile.min_exponent() {
            if k < -1.0 - EXPONENT_TOLERANCE {
                return Err(Error::UnsupportedDensity { exponent: k });
            }
        }
        Ok(ChargeDensity { profile })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(RadialPolynomial::from_pairs(pairs)?)
    }

    pub fn profile(&self) -> &RadialPolynomial {
        &self.profile
    }

    pub fn evaluate(&self, r: f64) -> Result<f64> {
        self.profile.evaluate(r)
    }
}

impl TryFrom<RadialPolynomial> for ChargeDensity {
    type Error = Error;

    fn try_from(profile: RadialPolynomial) -> Result<Self> {
        ChargeDensity::new(profile)
    }
}

impl From<ChargeDensity> for RadialPolynomial {
    fn from(rho: ChargeDensity) -> Self {
        rho.profile
    }
}

/// Radial field magnitude `E(r) = (1/r²)∫₀ʳ ρ(s) s² ds`.
///
/// Each term `c·r^k` becomes `c/(k+3)·r^(k+1)`.
pub fn field_from_density(rho: &ChargeDensity) -> RadialPolynomial {
    rho.profile
        .shift_exponents(2.0)
        .integrate_from_zero()
        .expect("density exponents >= -1 are integrable against r^2")
        .shift_exponents(-2.0)
}

/// Potential in the gauge `V(0) = 0`, so that `dV/dr = -E`.
pub fn potential_from_field(field: &RadialPolynomial) -> Result<RadialPolynomial> {
    if let Some(k) = field.min_exponent() {
        if k < -EXPONENT_TOLERANCE {
            return Err(Error::GaugeUndefined { exponent: k });
        }
    }
    Ok(field.integrate_from_zero()?.scale(-1.0))
}

/// `∇²V + ρ` for `r > 0`; zero when `V` solves the Poisson equation.
pub fn poisson_residual(potential: &RadialPolynomial, rho: &ChargeDensity) -> RadialPolynomial {
    potential.radial_laplacian().add(&rho.profile)
}
