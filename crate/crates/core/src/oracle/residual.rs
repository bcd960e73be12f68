//! Finite-difference check of the log-transform identity
//! `∇²ψ/ψ - (ψ'/ψ)² = -ρ` on a sampled wavefunction.

use super::GridSpec;
use crate::duality::DualSolution;
use crate::electrostatics::ChargeDensity;
use crate::radial::RadialPolynomial;
use crate::{Error, Result};

/// Maximum over interior grid points of
/// `|∇²ψ/ψ - (ψ'/ψ)² + ρ| / (1 + |ρ|)`, with fourth-order central stencils.
///
/// The identity is invariant under scaling `ψ`, so each stencil works on
/// `ψ(r + jh)/ψ(r) = e^(-(S(r + jh) - S(r)))`. Sampling `A·e^(-S)` directly
/// would carry the rounding of `S` itself (`~ε·S`, large far out) into every
/// difference quotient.
pub fn fd_residual(sol: &DualSolution, rho: &ChargeDensity, grid: &GridSpec) -> Result<f64> {
    if sol.norm_constant.is_none() {
        return Err(Error::NotNormalized);
    }
    let h = grid.step();
    let mut worst: f64 = 0.0;
    for i in 2..grid.n() - 1 {
        let r = grid.point(i);
        let ratio = |j: f64| (-increment(&sol.exponent, r, j * h)).exp();
        let [m2, m1, c, p1, p2] = [ratio(-2.0), ratio(-1.0), 1.0, ratio(1.0), ratio(2.0)];
        let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
        let d2 = (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
        let laplacian = d2 + 2.0 * d1 / r;
        let log_slope = d1 / c;
        let density = rho.evaluate(r)?;
        let residual = (laplacian / c - log_slope * log_slope + density).abs() / (1.0 + density.abs());
        worst = worst.max(residual);
    }
    Ok(worst)
}

/// `S(r + d) - S(r)` without forming either value.
fn increment(s: &RadialPolynomial, r: f64, d: f64) -> f64 {
    s.terms()
        .iter()
        .map(|t| t.evaluate(r) * (t.exponent * (d / r).ln_1p()).exp_m1())
        .sum()
}
