//! Complementary error function with its scaled form `erfcx(x) = e^(x²)·erfc(x)`.
//!
//! For `|x| < 2` the value comes from the all-positive series
//! `erf(x) = (2/√π)·e^(-x²)·Σ 2ⁿx^(2n+1)/(2n+1)!!`. For `x ≥ 2` the scaled
//! form is evaluated first by the Laplace continued fraction, so products such
//! as `e^(Z²/W)·erfc(Z/√W)` never overflow. Negative arguments use reflection.

use std::f64::consts::PI;

use crate::{Error, Result};

const SERIES_LIMIT: f64 = 2.0;
const MAX_ITERATIONS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErfcResult {
    /// `erfc(x)`; underflows to zero past `x ≈ 26.5`.
    pub value: f64,
    /// `e^(x²)·erfc(x)`.
    pub scaled: f64,
}

pub fn erfc(x: f64) -> Result<ErfcResult> {
    if !x.is_finite() {
        return Err(Error::NonFinite(x));
    }
    if x < 0.0 {
        let pos = erfc_nonnegative(-x);
        return Ok(ErfcResult {
            value: 2.0 - pos.value,
            scaled: 2.0 * (x * x).exp() - pos.scaled,
        });
    }
    Ok(erfc_nonnegative(x))
}

/// Scaled complementary error function `e^(x²)·erfc(x)`.
pub fn erfcx(x: f64) -> Result<f64> {
    erfc(x).map(|e| e.scaled)
}

fn erfc_nonnegative(x: f64) -> ErfcResult {
    if x < SERIES_LIMIT {
        let value = 1.0 - erf_series(x);
        ErfcResult {
            value,
            scaled: value * (x * x).exp(),
        }
    } else {
        let scaled = erfcx_continued_fraction(x);
        ErfcResult {
            value: scaled * (-x * x).exp(),
            scaled,
        }
    }
}

fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    for n in 1..MAX_ITERATIONS {
        term *= 2.0 * x2 / (2 * n + 1) as f64;
        sum += term;
        if term <= sum * f64::EPSILON * 0.25 {
            break;
        }
    }
    2.0 / PI.sqrt() * (-x2).exp() * sum
}

/// `√π·erfcx(x) = 1/(x + (1/2)/(x + (2/2)/(x + (3/2)/(x + …))))`,
/// evaluated with the modified Lentz algorithm.
fn erfcx_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for n in 1..MAX_ITERATIONS {
        let a = n as f64 / 2.0;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        d = 1.0 / d;
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 0.5 * f64::EPSILON {
            break;
        }
    }
    1.0 / (PI.sqrt() * f)
}
