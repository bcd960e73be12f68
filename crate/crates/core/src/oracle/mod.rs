//! Independent numerical checks of the analytic ground states.

pub mod numerov;
pub mod quadrature;
pub mod residual;

use serde::{Deserialize, Serialize};

use crate::duality::{self, solve_dual, DualFamilyParams};
use crate::electrostatics::ChargeDensity;
use crate::{Error, Result};

pub use numerov::{numerov_ground_state, GroundState};
pub use quadrature::{normalization_integral, simpson_quadrature, Quadrature};
pub use residual::fd_residual;

pub const MIN_INTERVALS: usize = 1000;
pub const MAX_STEP: f64 = 1e-2;

/// Pass thresholds used by [`verify`].
pub const ENERGY_PASS: f64 = 1e-5;
pub const RESIDUAL_PASS: f64 = 1e-6;
pub const NORM_PASS: f64 = 1e-8;

/// Window and spacing of the finite-difference identity check.
const FD_R_MIN: f64 = 0.1;
const FD_R_MAX: f64 = 10.0;
const FD_STEP: f64 = 1e-3;

/// Uniform radial grid `r_i = r_min + i·h`, `i = 0..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGrid")]
pub struct GridSpec {
    r_min: f64,
    r_max: f64,
    n: usize,
}

#[derive(Deserialize)]
struct RawGrid {
    r_min: f64,
    r_max: f64,
    n: usize,
}

impl TryFrom<RawGrid> for GridSpec {
    type Error = Error;

    fn try_from(raw: RawGrid) -> Result<Self> {
        GridSpec::new(raw.r_min, raw.r_max, raw.n)
    }
}

impl GridSpec {
    pub fn new(r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        if !(r_min.is_finite() && r_max.is_finite() && r_min > 0.0 && r_min < r_max) {
            return Err(Error::InvalidGrid(format!(
                "need 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        if n < MIN_INTERVALS {
            return Err(Error::InvalidGrid(format!(
                "need at least {MIN_INTERVALS} intervals, got {n}"
            )));
        }
        let h = (r_max - r_min) / n as f64;
        if h > MAX_STEP {
            return Err(Error::InvalidGrid(format!(
                "step {h} exceeds {MAX_STEP}"
            )));
        }
        Ok(GridSpec { r_min, r_max, n })
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn step(&self) -> f64 {
        (self.r_max - self.r_min) / self.n as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.r_min + i as f64 * self.step()
    }

    /// All `n + 1` grid points.
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n).map(|i| self.point(i))
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            r_min: 1e-6,
            r_max: 40.0,
            n: 40_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    /// `E0 ≥ 0`.
    NotBound,
    NotNormalizable,
    /// The shooting solver could not bracket or isolate a nodeless state.
    ShootingFailed,
    /// Every check ran but at least one missed its threshold.
    ToleranceExceeded,
}

impl FailureReason {
    /// Same string as the serialized form.
    pub fn code(&self) -> &'static str {
        match self {
            FailureReason::NotBound => "not_bound",
            FailureReason::NotNormalizable => "not_normalizable",
            FailureReason::ShootingFailed => "shooting_failed",
            FailureReason::ToleranceExceeded => "tolerance_exceeded",
        }
    }

    pub fn message(&self) -> &'static str {
        match self {
            FailureReason::NotBound => "E0 ≥ 0",
            FailureReason::NotNormalizable => "wavefunction is not normalizable",
            FailureReason::ShootingFailed => "shooting solver found no ground state",
            FailureReason::ToleranceExceeded => "a check exceeded its tolerance",
        }
    }
}

/// Analytic solution against its numerical cross-checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub analytic_e0: f64,
    pub numeric_e0: Option<f64>,
    pub abs_err: Option<f64>,
    pub node_count: Option<usize>,
    pub ode_residual_max: Option<f64>,
    /// `∫ r²|ψ|² dr` with the solution's normalization constant.
    pub norm_quadrature: Option<f64>,
    /// Normalization constant from the closed form, when one applies.
    pub norm_closed_form: Option<f64>,
    pub passed: bool,
    pub reason: Option<FailureReason>,
}

/// Solves `rho` analytically and checks the energy by Numerov shooting, the
/// log-transform identity by finite differences, and the normalization by
/// quadrature.
pub fn verify(rho: &ChargeDensity, grid: &GridSpec) -> Result<VerificationReport> {
    let sol = solve_dual(rho)?;
    let analytic = sol.energy;

    let norm_closed_form = DualFamilyParams::from_density(rho)
        .map(|p| duality::normalization_closed_form(&p))
        .transpose()?;

    let (ode_residual_max, norm_quadrature) = match sol.norm_constant {
        Some(a) => {
            let fd_hi = FD_R_MAX.min(grid.r_max());
            let fd_n = (((fd_hi - FD_R_MIN) / FD_STEP).round() as usize).max(MIN_INTERVALS);
            let fd_grid = GridSpec::new(FD_R_MIN, fd_hi, fd_n)?;
            let residual = fd_residual(&sol, rho, &fd_grid)?;
            let norm = normalization_integral(&sol.exponent, a)?.value;
            (Some(residual), Some(norm))
        }
        None => (None, None),
    };

    let mut report = VerificationReport {
        analytic_e0: analytic,
        numeric_e0: None,
        abs_err: None,
        node_count: None,
        ode_residual_max,
        norm_quadrature,
        norm_closed_form,
        passed: false,
        reason: None,
    };

    if !sol.normalizable {
        report.reason = Some(FailureReason::NotNormalizable);
        return Ok(report);
    }
    if !sol.bound {
        report.reason = Some(FailureReason::NotBound);
        return Ok(report);
    }

    let bracket = ((analytic - 1.0).min(2.0 * analytic), -1e-12);
    match numerov_ground_state(&sol.potential, grid, bracket) {
        Ok(gs) => {
            report.numeric_e0 = Some(gs.energy);
            report.abs_err = Some((analytic - gs.energy).abs());
            report.node_count = Some(gs.nodes);
        }
        Err(Error::NotGroundState { energy, nodes }) => {
            report.numeric_e0 = Some(energy);
            report.abs_err = Some((analytic - energy).abs());
            report.node_count = Some(nodes);
        }
        Err(Error::NoSignChange { .. }) => {
            report.reason = Some(FailureReason::ShootingFailed);
            return Ok(report);
        }
        Err(e) => return Err(e),
    }

    report.passed = report.abs_err.is_some_and(|e| e <= ENERGY_PASS)
        && report.ode_residual_max.is_some_and(|r| r <= RESIDUAL_PASS)
        && report.norm_quadrature.is_some_and(|n| (n - 1.0).abs() <= NORM_PASS)
        && report.node_count == Some(0);
    if !report.passed {
        report.reason = Some(if report.node_count == Some(0) {
            FailureReason::ToleranceExceeded
        } else {
            FailureReason::ShootingFailed
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_invariants() {
        assert!(GridSpec::new(0.0, 1.0, 1000).is_err());
        assert!(GridSpec::new(2.0, 1.0, 1000).is_err());
        assert!(GridSpec::new(1e-6, 40.0, 999).is_err());
        assert!(GridSpec::new(1e-6, 40.0, 3999).is_err());
        let g = GridSpec::new(1e-6, 40.0, 4000).unwrap();
        assert_eq!(g.points().count(), 4001);
        assert_eq!(g.point(0), 1e-6);
        assert!((g.point(4000) - 40.0).abs() < 1e-12);
        assert_eq!(GridSpec::default(), GridSpec::new(1e-6, 40.0, 40_000).unwrap());
    }

    #[test]
    fn verify_hydrogen() {
        let rho = ChargeDensity::from_pairs(&[(2.0, -1.0)]).unwrap();
        let report = verify(&rho, &GridSpec::default()).unwrap();
        assert!(report.passed, "{report:?}");
        assert!((report.numeric_e0.unwrap() + 0.5).abs() < 1e-6);
        assert_eq!(report.node_count, Some(0));
        assert_eq!(report.norm_closed_form, Some(2.0));
    }

    #[test]
    fn verify_unbound() {
        let rho = ChargeDensity::from_pairs(&[(2.0, -1.0), (3.0, 0.0)]).unwrap();
        let report = verify(&rho, &GridSpec::default()).unwrap();
        assert!(!report.passed);
        assert_eq!(report.reason, Some(FailureReason::NotBound));
        assert_eq!(report.analytic_e0, 1.0);
        assert_eq!(report.numeric_e0, None);
    }

    #[test]
    fn verify_mixed() {
        let rho = ChargeDensity::from_pairs(&[(4.0, -1.0), (0.3, 0.0)]).unwrap();
        let report = verify(&rho, &GridSpec::default()).unwrap();
        assert!(report.passed, "{report:?}");
        assert!((report.numeric_e0.unwrap() + 1.85).abs() < 1e-5);
    }
}
