//! Composite Simpson quadrature on a [`GridSpec`], plus the normalization
//! integral `∫₀^∞ r²|ψ|² dr` with an asserted tail cutoff.

use super::GridSpec;
use crate::radial::RadialPolynomial;
use crate::{Error, Result};

/// Relative size of the integrand at the cutoff, compared with its peak.
pub const TAIL_RATIO: f64 = 1e-16;

const NORMALIZATION_R_MIN: f64 = 1e-8;
const NORMALIZATION_STEP: f64 = 1e-3;
const MAX_INTERVALS: usize = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Magnitude of the last panel's contribution.
    pub tail: f64,
    /// `|f(r_max)|`.
    pub endpoint: f64,
    /// Largest `|f|` seen on the grid.
    pub peak: f64,
    /// Intervals actually used (odd counts are bumped by one).
    pub intervals: usize,
}

/// Composite Simpson rule over `[r_min, r_max]`.
///
/// An odd interval count is made even by adding one interval, which shrinks
/// the step slightly.
pub fn simpson_quadrature<F>(f: F, grid: &GridSpec) -> Quadrature
where
    F: Fn(f64) -> f64,
{
    let n = if grid.n().is_multiple_of(2) { grid.n() } else { grid.n() + 1 };
    let a = grid.r_min();
    let h = (grid.r_max() - a) / n as f64;

    let mut sum = 0.0;
    let mut peak: f64 = 0.0;
    let mut last = [0.0; 3];
    for i in 0..=n {
        let r = if i == n { grid.r_max() } else { a + i as f64 * h };
        let fi = f(r);
        peak = peak.max(fi.abs());
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        sum += w * fi;
        if i + 3 > n {
            last[i + 2 - n] = fi;
        }
    }
    Quadrature {
        value: sum * h / 3.0,
        tail: h / 3.0 * (last[0].abs() + 4.0 * last[1].abs() + last[2].abs()),
        endpoint: last[2].abs(),
        peak,
        intervals: n,
    }
}

/// `∫₀^∞ r²·A²·e^(-2S(r)) dr`, truncated where the integrand has fallen below
/// [`TAIL_RATIO`] times its peak.
///
/// Requires the leading coefficient of `S` to be positive.
pub fn normalization_integral(exponent: &RadialPolynomial, amplitude: f64) -> Result<Quadrature> {
    match exponent.leading() {
        Some(t) if t.coefficient > 0.0 && t.exponent > 0.0 => {}
        _ => return Err(Error::NotNormalized),
    }
    let integrand = |r: f64| {
        let s = exponent.evaluate(r).unwrap_or(f64::INFINITY);
        amplitude * amplitude * r * r * (-2.0 * s).exp()
    };

    let r_max = tail_cutoff(&integrand)?;
    let n = ((r_max / NORMALIZATION_STEP).ceil() as usize).max(20_000);
    if n > MAX_INTERVALS {
        return Err(Error::InvalidGrid(format!(
            "normalization cutoff r = {r_max} needs too many intervals"
        )));
    }
    let grid = GridSpec::new(NORMALIZATION_R_MIN, r_max, n + n % 2)?;
    let q = simpson_quadrature(integrand, &grid);
    debug_assert!(q.endpoint <= TAIL_RATIO * q.peak);
    Ok(q)
}

/// Doubles a trial cutoff until the integrand there is below
/// `TAIL_RATIO` times the largest value sampled on `(0, cutoff]`.
fn tail_cutoff<F: Fn(f64) -> f64>(f: &F) -> Result<f64> {
    let mut r_max: f64 = 1.0;
    let mut peak: f64 = 0.0;
    let mut scanned = 0.0;
    while r_max < 1e6 {
        let samples = 1000;
        let h = (r_max - scanned) / samples as f64;
        for i in 1..=samples {
            peak = peak.max(f(scanned + i as f64 * h).abs());
        }
        scanned = r_max;
        let end = f(r_max).abs();
        if peak > 0.0 && end < TAIL_RATIO * peak {
            return Ok(r_max);
        }
        r_max *= 2.0;
    }
    Err(Error::NotNormalized)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_integral() {
        let grid = GridSpec::new(1e-8, 40.0, 20_000).unwrap();
        let q = simpson_quadrature(|r| r * r * (-2.0 * r).exp(), &grid);
        assert!((q.value - 0.25).abs() < 1e-10, "{}", q.value);
        let q = simpson_quadrature(|r| 4.0 * r * r * (-2.0 * r).exp(), &grid);
        assert!((q.value - 1.0).abs() < 1e-10);
        assert!(q.tail < 1e-14);
    }

    #[test]
    fn cubics_are_exact() {
        let grid = GridSpec::new(1.0, 2.0, 1000).unwrap();
        let cases: [(fn(f64) -> f64, f64); 4] = [
            (|_| 1.0, 1.0),
            (|x| x, 1.5),
            (|x| 3.0 * x * x - x, 7.0 - 1.5),
            (|x| x * x * x - 2.0 * x * x + 0.5, 3.75 - 14.0 / 3.0 + 0.5),
        ];
        for (f, exact) in cases {
            let q = simpson_quadrature(f, &grid).value;
            assert!((q - exact).abs() <= 1e-13 * exact.abs(), "{q} vs {exact}");
        }
    }

    #[test]
    fn odd_interval_count_is_bumped() {
        let grid = GridSpec::new(1.0, 2.0, 1001).unwrap();
        let q = simpson_quadrature(|x| x * x, &grid);
        assert_eq!(q.intervals, 1002);
        assert!((q.value - 7.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn hydrogen_normalization() {
        let s = RadialPolynomial::from_pairs(&[(1.0, 1.0)]).unwrap();
        let q = normalization_integral(&s, 2.0).unwrap();
        assert!((q.value - 1.0).abs() < 1e-10);
        assert!(q.endpoint < TAIL_RATIO * q.peak);
        assert!(q.tail < 1e-14);
    }

    #[test]
    fn rejects_growing_exponent() {
        let s = RadialPolynomial::from_pairs(&[(1.0, 1.0), (-0.1, 2.0)]).unwrap();
        assert_eq!(normalization_integral(&s, 1.0), Err(Error::NotNormalized));
        assert_eq!(
            normalization_integral(&RadialPolynomial::zero(), 1.0),
            Err(Error::NotNormalized)
        );
    }
}
