//! Numerov shooting for the s-wave radial equation.
//!
//! With `u = r·ψ` the equation becomes `u'' = 2(U(r) - E)·u`, `u(0) = 0`.
//! The solution is integrated outward on a uniform grid and the energy is
//! bisected on the interior node count: below the lowest eigenvalue `u` has
//! no nodes, just above it one node appears.

use super::GridSpec;
use crate::radial::RadialPolynomial;
use crate::{Error, Result};

/// Bisection stops once the bracket is this narrow.
pub const ENERGY_TOLERANCE: f64 = 1e-10;

const RESCALE_ABOVE: f64 = 1e150;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundState {
    pub energy: f64,
    pub nodes: usize,
}

/// Potential sampled once on the grid; shooting only varies the energy.
pub struct Shooter {
    potential: Vec<f64>,
    radii: Vec<f64>,
    step: f64,
    coulomb: f64,
    constant: f64,
}

impl Shooter {
    pub fn new(potential: &RadialPolynomial, grid: &GridSpec) -> Result<Self> {
        let radii: Vec<f64> = grid.points().collect();
        let values = radii
            .iter()
            .map(|&r| potential.evaluate(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(Shooter {
            potential: values,
            radii,
            step: grid.step(),
            coulomb: potential.coefficient_of(-1.0),
            constant: potential.coefficient_of(0.0),
        })
    }

    /// Near the origin `U ≈ c/r + d`, whose regular solution is
    /// `u ≈ r + c·r² + (c² + d - E)/3·r³`.
    fn seed(&self, r: f64, energy: f64) -> f64 {
        let c = self.coulomb;
        let b = (c * c + self.constant - energy) / 3.0;
        r * (1.0 + r * (c + r * b))
    }

    /// Integrates outward at `energy`; returns the interior node count and
    /// the sign of `u` at the outer edge.
    pub fn shoot(&self, energy: f64) -> (usize, f64) {
        let h2 = self.step * self.step / 12.0;
        let f = |i: usize| 2.0 * (self.potential[i] - energy);

        let mut prev = self.seed(self.radii[0], energy);
        let mut curr = self.seed(self.radii[1], energy);
        let mut f_prev = f(0);
        let mut f_curr = f(1);
        let mut nodes = 0;
        let mut sign = curr.signum();

        for i in 1..self.radii.len() - 1 {
            let f_next = f(i + 1);
            let next = (2.0 * (1.0 + 5.0 * h2 * f_curr) * curr - (1.0 - h2 * f_prev) * prev)
                / (1.0 - h2 * f_next);
            if next != 0.0 && next.signum() != sign {
                nodes += 1;
                sign = next.signum();
            }
            prev = curr;
            curr = next;
            if curr.abs() > RESCALE_ABOVE {
                prev /= RESCALE_ABOVE;
                curr /= RESCALE_ABOVE;
            }
            f_prev = f_curr;
            f_curr = f_next;
        }
        (nodes, curr.signum())
    }

    pub fn nodes(&self, energy: f64) -> usize {
        self.shoot(energy).0
    }
}

/// Lowest eigenvalue of `-½u'' + U·u = E·u` inside `bracket`.
///
/// Fails when the node count does not change across the bracket, or when the
/// eigenvalue found is not nodeless.
pub fn numerov_ground_state(
    potential: &RadialPolynomial,
    grid: &GridSpec,
    bracket: (f64, f64),
) -> Result<GroundState> {
    let (mut lo, mut hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidBracket { lo, hi });
    }
    let shooter = Shooter::new(potential, grid)?;
    let base = shooter.nodes(lo);
    if shooter.nodes(hi) <= base {
        return Err(Error::NoSignChange { lo, hi });
    }
    while hi - lo > ENERGY_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if shooter.nodes(mid) > base {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let energy = 0.5 * (lo + hi);
    if base > 0 {
        return Err(Error::NotGroundState {
            energy,
            nodes: base,
        });
    }
    Ok(GroundState {
        energy,
        nodes: base,
    })
}
