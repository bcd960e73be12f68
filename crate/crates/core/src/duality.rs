//! The electrostatic-to-quantum map.
//!
//! Writing the potential as `V = ln(ψ/A)` turns `∇²V = -ρ` into
//!
//! ```text
//! -½∇²ψ + (½|E₂|² + E₁E₂ - ρ/2)·ψ = -½E₁²·ψ
//! ```
//!
//! once the field is split into a constant part `E₁` and a varying part `E₂`.
//! The bracket is the quantum potential (its constant term is moved into the
//! energy) and the ground state is `ψ = A·e^(-S)` with `S = ∫₀ʳ E`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::electrostatics::{field_from_density, ChargeDensity};
use crate::oracle::quadrature::normalization_integral;
use crate::radial::{same_exponent, RadialPolynomial, EXPONENT_TOLERANCE};
use crate::specfun::erfcx;
use crate::{Error, Result};

/// `E = E₁ + E₂` with `E₁` constant and `E₂` made of positive powers only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldDecomposition {
    pub constant: f64,
    pub varying: RadialPolynomial,
}

impl FieldDecomposition {
    pub fn reconstruct(&self) -> RadialPolynomial {
        self.varying
            .add(&RadialPolynomial::monomial(self.constant, 0.0).expect("finite constant field"))
    }
}

pub fn decompose_field(field: &RadialPolynomial) -> Result<FieldDecomposition> {
    if let Some(k) = field.min_exponent() {
        if k < -EXPONENT_TOLERANCE {
            return Err(Error::NotDecomposable { exponent: k });
        }
    }
    Ok(FieldDecomposition {
        constant: field.coefficient_of(0.0),
        varying: field.without_exponent(0.0),
    })
}

/// Quantum potential `½E₂² + E₁E₂ - ρ/2` with its constant term split off.
///
/// Returns `(U, c0)` where `U` has no `r⁰` term and `c0` is the removed
/// constant.
pub fn quantum_potential(
    decomposition: &FieldDecomposition,
    rho: &ChargeDensity,
) -> (RadialPolynomial, f64) {
    let e2 = &decomposition.varying;
    let full = e2
        .multiply(e2)
        .scale(0.5)
        .add(&e2.scale(decomposition.constant))
        .add(&rho.profile().scale(-0.5));
    let offset = full.coefficient_of(0.0);
    (full.without_exponent(0.0), offset)
}

/// `E0 = -½E₁² - c0`.
pub fn ground_state_energy(decomposition: &FieldDecomposition, offset: f64) -> f64 {
    -0.5 * decomposition.constant * decomposition.constant - offset
}

/// `S(r) = ∫₀ʳ E(s) ds`, so that `ψ = A·e^(-S)` and `S(0) = 0`.
pub fn wavefunction_exponent(field: &RadialPolynomial) -> Result<RadialPolynomial> {
    if let Some(k) = field.min_exponent() {
        if k < -EXPONENT_TOLERANCE {
            return Err(Error::NotDecomposable { exponent: k });
        }
    }
    field.integrate_from_zero()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizationMethod {
    /// `A = 2Z^(3/2)`.
    Hydrogen,
    /// erfcx-based closed form for `ρ = 2Z/r + 3W`.
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualSolution {
    /// `U(r)`, without a constant term.
    pub potential: RadialPolynomial,
    /// Ground-state energy `E0`.
    pub energy: f64,
    /// `S(r)` with `ψ = A·e^(-S)`.
    pub exponent: RadialPolynomial,
    /// `A`; absent when `ψ` cannot be normalized.
    pub norm_constant: Option<f64>,
    pub normalization: Option<NormalizationMethod>,
    /// `E0 < 0` (and `ψ` normalizable).
    pub bound: bool,
    pub normalizable: bool,
}

/// Parameters of the density `ρ = 2Z/r + 3W`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualFamilyParams {
    pub z: f64,
    pub w: f64,
}

impl DualFamilyParams {
    pub fn new(z: f64, w: f64) -> Result<Self> {
        if !(z.is_finite() && w.is_finite() && z > 0.0 && w >= 0.0) {
            return Err(Error::InvalidFamily { z, w });
        }
        Ok(DualFamilyParams { z, w })
    }

    /// `[(2Z, -1), (3W, 0)]`.
    pub fn density(&self) -> ChargeDensity {
        ChargeDensity::from_pairs(&[(2.0 * self.z, -1.0), (3.0 * self.w, 0.0)])
            .expect("Z > 0 gives a non-empty density")
    }

    /// `-Z²/2 + 3W/2`.
    pub fn energy(&self) -> f64 {
        -0.5 * self.z * self.z + 1.5 * self.w
    }

    /// Recognizes `[(2Z, -1)]` and `[(2Z, -1), (3W, 0)]` with `Z, W > 0`.
    pub fn from_density(rho: &ChargeDensity) -> Option<Self> {
        match rho.profile().terms() {
            [a] if same_exponent(a.exponent, -1.0) && a.coefficient > 0.0 => {
                Some(DualFamilyParams {
                    z: a.coefficient / 2.0,
                    w: 0.0,
                })
            }
            [a, b]
                if same_exponent(a.exponent, -1.0)
                    && same_exponent(b.exponent, 0.0)
                    && a.coefficient > 0.0
                    && b.coefficient > 0.0 =>
            {
                Some(DualFamilyParams {
                    z: a.coefficient / 2.0,
                    w: b.coefficient / 3.0,
                })
            }
            _ => None,
        }
    }
}

/// Switch to the asymptotic series for `g(x)` beyond this argument.
const ASYMPTOTIC_FROM: f64 = 6.0;

/// Normalization constant of `ψ = A·e^(-Zr - Wr²/2)`.
///
/// With `x = Z/√W` and `D = -2Z√W + √π·e^(x²)·(W + 2Z²)·erfc(x) = W·g(x)`,
/// `A = 2W^(5/4)/√D = 2W^(3/4)/√g(x)`. `W = 0` is the hydrogen case
/// `A = 2Z^(3/2)`.
pub fn normalization_closed_form(params: &DualFamilyParams) -> Result<f64> {
    let DualFamilyParams { z, w } = *params;
    if w <= 0.0 {
        return Ok(2.0 * z.powf(1.5));
    }
    let x = z / w.sqrt();
    let g = normalization_kernel(x)?;
    if g.is_nan() || g <= 0.0 {
        return Err(Error::NumericInstability {
            denominator: w * g,
        });
    }
    Ok(2.0 * w.powf(0.75) / g.sqrt())
}

/// `g(x) = √π(1 + 2x²)·erfcx(x) - 2x`.
///
/// The two terms cancel to `O(x⁻³)` for large `x`, where the asymptotic series
/// `g(x) = Σ_{m≥2} (2 - 2m)·a_{m-1}·x^(1-2m)`, `a_n = (-1)ⁿ(2n-1)!!/2ⁿ`, is
/// used instead.
fn normalization_kernel(x: f64) -> Result<f64> {
    if x < ASYMPTOTIC_FROM {
        return Ok(PI.sqrt() * (1.0 + 2.0 * x * x) * erfcx(x)? - 2.0 * x);
    }
    let inv2 = 1.0 / (x * x);
    // a_{m-1} for m = 2 is a_1 = -1/2.
    let mut a = -0.5;
    let mut power = inv2 / x; // x^(1-2m) at m = 2
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    for m in 2..200 {
        let term = (2.0 - 2.0 * m as f64) * a * power;
        if term.abs() >= last {
            break;
        }
        sum += term;
        if term.abs() <= f64::EPSILON * sum.abs() {
            break;
        }
        last = term.abs();
        a *= -(2.0 * m as f64 - 1.0) / 2.0;
        power *= inv2;
    }
    Ok(sum)
}

/// The full map from a charge density to its dual ground state.
pub fn solve_dual(rho: &ChargeDensity) -> Result<DualSolution> {
    let field = field_from_density(rho);
    let decomposition = decompose_field(&field)?;
    let (potential, offset) = quantum_potential(&decomposition, rho);
    let energy = ground_state_energy(&decomposition, offset);
    let exponent = wavefunction_exponent(&field)?;

    let normalizable = exponent
        .leading()
        .is_some_and(|t| t.coefficient > 0.0 && t.exponent > 0.0);

    let (norm_constant, normalization) = if !normalizable {
        (None, None)
    } else if let Some(params) = DualFamilyParams::from_density(rho) {
        let method = if params.w > 0.0 {
            NormalizationMethod::ClosedForm
        } else {
            NormalizationMethod::Hydrogen
        };
        (Some(normalization_closed_form(&params)?), Some(method))
    } else {
        let integral = normalization_integral(&exponent, 1.0)?;
        (
            Some(1.0 / integral.value.sqrt()),
            Some(NormalizationMethod::Quadrature),
        )
    };

    Ok(DualSolution {
        potential,
        energy,
        exponent,
        norm_constant,
        normalization,
        bound: normalizable && energy < 0.0,
        normalizable,
    })
}

/// `ψ(r) = A·e^(-S(r))`.
pub fn wavefunction_eval(sol: &DualSolution, r: f64) -> Result<f64> {
    let a = sol.norm_constant.ok_or(Error::NotNormalized)?;
    Ok(a * (-sol.exponent.evaluate(r)?).exp())
}
