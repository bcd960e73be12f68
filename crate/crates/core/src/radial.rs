//! Finite sums of real power laws in the radial coordinate.
//!
//! Every radial quantity in the crate (density, field, potentials, the
//! wavefunction exponent) is a [`RadialPolynomial`]: a canonical, sorted
//! list of `c·r^k` terms with distinct exponents and non-zero coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Two exponents closer than this are the same power of `r`.
pub const EXPONENT_TOLERANCE: f64 = 1e-12;

/// Merged coefficients below this magnitude are dropped.
pub const ZERO_COEFFICIENT: f64 = 1e-300;

/// A single monomial `coefficient · r^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerTerm {
    #[serde(rename = "c")]
    pub coefficient: f64,
    #[serde(rename = "k")]
    pub exponent: f64,
}

impl PowerTerm {
    pub fn new(coefficient: f64, exponent: f64) -> Result<Self> {
        if !coefficient.is_finite() || !exponent.is_finite() {
            return Err(Error::InvalidTerm {
                coefficient,
                exponent,
            });
        }
        Ok(PowerTerm {
            coefficient,
            exponent,
        })
    }

    pub fn evaluate(&self, r: f64) -> f64 {
        self.coefficient * power(r, self.exponent)
    }
}

impl From<(f64, f64)> for PowerTerm {
    fn from((coefficient, exponent): (f64, f64)) -> Self {
        PowerTerm {
            coefficient,
            exponent,
        }
    }
}

fn power(r: f64, exponent: f64) -> f64 {
    if exponent.fract() == 0.0 && exponent.abs() < i32::MAX as f64 {
        r.powi(exponent as i32)
    } else {
        r.powf(exponent)
    }
}

pub(crate) fn same_exponent(a: f64, b: f64) -> bool {
    (a - b).abs() < EXPONENT_TOLERANCE
}

/// Canonical sum of power terms, sorted by strictly increasing exponent.
///
/// The empty term list is the zero polynomial.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<PowerTerm>", into = "Vec<PowerTerm>")]
pub struct RadialPolynomial {
    terms: Vec<PowerTerm>,
}

impl TryFrom<Vec<PowerTerm>> for RadialPolynomial {
    type Error = Error;

    fn try_from(terms: Vec<PowerTerm>) -> Result<Self> {
        RadialPolynomial::canonicalize(terms)
    }
}

impl From<RadialPolynomial> for Vec<PowerTerm> {
    fn from(p: RadialPolynomial) -> Self {
        p.terms
    }
}

impl RadialPolynomial {
    pub fn zero() -> Self {
        RadialPolynomial { terms: Vec::new() }
    }

    /// Merges duplicate exponents, drops zero coefficients and sorts.
    pub fn canonicalize<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<PowerTerm>,
    {
        let terms = terms
            .into_iter()
            .map(|t| {
                let t = t.into();
                PowerTerm::new(t.coefficient, t.exponent)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_finite_terms(terms))
    }

    /// Shorthand for `canonicalize` over `(coefficient, exponent)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::canonicalize(pairs.iter().copied())
    }

    /// A single term `coefficient · r^exponent`.
    pub fn monomial(coefficient: f64, exponent: f64) -> Result<Self> {
        Self::canonicalize([PowerTerm::new(coefficient, exponent)?])
    }

    fn from_finite_terms(mut terms: Vec<PowerTerm>) -> Self {
        terms.sort_by(|a, b| a.exponent.total_cmp(&b.exponent));

        let mut merged: Vec<PowerTerm> = Vec::with_capacity(terms.len());
        for term in terms {
            match merged.last_mut() {
                Some(last) if same_exponent(last.exponent, term.exponent) => {
                    last.coefficient += term.coefficient;
                }
                _ => merged.push(term),
            }
        }
        merged.retain(|t| t.coefficient.abs() >= ZERO_COEFFICIENT);
        RadialPolynomial { terms: merged }
    }

    pub fn terms(&self) -> &[PowerTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `r^exponent`, zero when the term is absent.
    pub fn coefficient_of(&self, exponent: f64) -> f64 {
        self.terms
            .iter()
            .find(|t| same_exponent(t.exponent, exponent))
            .map_or(0.0, |t| t.coefficient)
    }

    /// Copy of `self` without the `r^exponent` term.
    pub fn without_exponent(&self, exponent: f64) -> Self {
        RadialPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|t| !same_exponent(t.exponent, exponent))
                .copied()
                .collect(),
        }
    }

    pub fn min_exponent(&self) -> Option<f64> {
        self.terms.first().map(|t| t.exponent)
    }

    pub fn max_exponent(&self) -> Option<f64> {
        self.terms.last().map(|t| t.exponent)
    }

    /// The term with the highest exponent.
    pub fn leading(&self) -> Option<&PowerTerm> {
        self.terms.last()
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coefficient.abs())
            .fold(0.0, f64::max)
    }

    /// True when every coefficient is at most `tolerance` in magnitude.
    pub fn vanishes_within(&self, tolerance: f64) -> bool {
        self.max_abs_coefficient() <= tolerance
    }

    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if self.terms.is_empty() {
            return Ok(0.0);
        }
        let singular = self.terms[0].exponent < 0.0;
        if r.is_nan() || r < 0.0 || (r == 0.0 && singular) {
            return Err(Error::Domain { r });
        }
        Ok(self.terms.iter().map(|t| t.evaluate(r)).sum())
    }

    pub fn add(&self, other: &Self) -> Self {
        let terms = self.terms.iter().chain(&other.terms).copied().collect();
        Self::from_finite_terms(terms)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, factor: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| PowerTerm {
                coefficient: t.coefficient * factor,
                exponent: t.exponent,
            })
            .collect();
        Self::from_finite_terms(terms)
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(PowerTerm {
                    coefficient: a.coefficient * b.coefficient,
                    exponent: a.exponent + b.exponent,
                });
            }
        }
        Self::from_finite_terms(terms)
    }

    /// Multiplies by `r^shift`.
    pub fn shift_exponents(&self, shift: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| PowerTerm {
                coefficient: t.coefficient,
                exponent: t.exponent + shift,
            })
            .collect();
        Self::from_finite_terms(terms)
    }

    pub fn derivative(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|t| !same_exponent(t.exponent, 0.0))
            .map(|t| PowerTerm {
                coefficient: t.coefficient * t.exponent,
                exponent: t.exponent - 1.0,
            })
            .collect();
        Self::from_finite_terms(terms)
    }

    /// Antiderivative that vanishes at `r = 0`.
    ///
    /// Requires every exponent to be strictly greater than -1.
    pub fn integrate_from_zero(&self) -> Result<Self> {
        if let Some(bad) = self
            .terms
            .iter()
            .find(|t| t.exponent <= -1.0 + EXPONENT_TOLERANCE)
        {
            return Err(Error::NonIntegrable {
                exponent: bad.exponent,
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|t| PowerTerm {
                coefficient: t.coefficient / (t.exponent + 1.0),
                exponent: t.exponent + 1.0,
            })
            .collect();
        Ok(Self::from_finite_terms(terms))
    }

    /// The s-wave Laplacian `(1/r²) d/dr (r² d/dr)`.
    ///
    /// `c·r^k` maps to `c·k(k+1)·r^(k-2)`, so constants and `1/r` are
    /// annihilated (harmonic away from the origin).
    pub fn radial_laplacian(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|t| !same_exponent(t.exponent, 0.0) && !same_exponent(t.exponent, -1.0))
            .map(|t| PowerTerm {
                coefficient: t.coefficient * t.exponent * (t.exponent + 1.0),
                exponent: t.exponent - 2.0,
            })
            .collect();
        Self::from_finite_terms(terms)
    }
}

impl fmt::Display for RadialPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if t.exponent == 0.0 {
                write!(f, "{}", t.coefficient)?;
            } else {
                write!(f, "{}*r^{}", t.coefficient, t.exponent)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(pairs: &[(f64, f64)]) -> RadialPolynomial {
        RadialPolynomial::from_pairs(pairs).unwrap()
    }

    fn pairs(p: &RadialPolynomial) -> Vec<(f64, f64)> {
        p.terms().iter().map(|t| (t.coefficient, t.exponent)).collect()
    }

    #[test]
    fn canonicalize_merges_cancels_and_sorts() {
        assert_eq!(pairs(&poly(&[(2.0, -1.0), (3.0, -1.0)])), vec![(5.0, -1.0)]);
        assert!(poly(&[(1.0, 0.0), (-1.0, 0.0)]).is_zero());
        assert_eq!(
            pairs(&poly(&[(3.0, 1.0), (2.0, -1.0)])),
            vec![(2.0, -1.0), (3.0, 1.0)]
        );
    }

    #[test]
    fn canonicalize_merges_nearly_equal_exponents() {
        let p = poly(&[(1.0, 2.0), (1.0, 2.0 + 1e-13)]);
        assert_eq!(p.len(), 1);
        assert_eq!(p.coefficient_of(2.0), 2.0);
    }

    #[test]
    fn canonicalize_rejects_non_finite() {
        assert!(matches!(
            RadialPolynomial::from_pairs(&[(f64::NAN, 1.0)]),
            Err(Error::InvalidTerm { .. })
        ));
        assert!(matches!(
            RadialPolynomial::from_pairs(&[(1.0, f64::INFINITY)]),
            Err(Error::InvalidTerm { .. })
        ));
    }

    #[test]
    fn denormal_coefficients_are_dropped() {
        assert!(poly(&[(1e-310, 1.0)]).is_zero());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(poly(&[(2.0, -1.0)]).evaluate(2.0).unwrap(), 1.0);
        assert_eq!(RadialPolynomial::zero().evaluate(0.0).unwrap(), 0.0);
        assert_eq!(RadialPolynomial::zero().evaluate(3.7).unwrap(), 0.0);
        assert_eq!(poly(&[(1.0, -1.0), (3.0, 0.0)]).evaluate(0.5).unwrap(), 5.0);
    }

    #[test]
    fn evaluate_domain() {
        assert!(matches!(
            poly(&[(1.0, -1.0)]).evaluate(0.0),
            Err(Error::Domain { .. })
        ));
        assert!(poly(&[(1.0, -1.0)]).evaluate(-1.0).is_err());
        assert_eq!(poly(&[(2.0, 0.0), (1.0, 1.0)]).evaluate(0.0).unwrap(), 2.0);
    }

    #[test]
    fn evaluate_at_one_sums_coefficients() {
        let p = poly(&[(1.5, -1.0), (-0.25, 0.5), (4.0, 3.0)]);
        assert!((p.evaluate(1.0).unwrap() - 5.25).abs() < 1e-15);
    }

    #[test]
    fn add_and_scale() {
        let sum = poly(&[(1.0, -1.0)]).add(&poly(&[(1.0, 0.0)]));
        assert_eq!(pairs(&sum), vec![(1.0, -1.0), (1.0, 0.0)]);
        assert!(poly(&[(2.0, -1.0)]).scale(0.0).is_zero());
        let p = poly(&[(1.0, -1.0), (0.3, 2.5)]);
        assert!(p.add(&p.scale(-1.0)).is_zero());
    }

    #[test]
    fn multiply_examples() {
        let w = 0.7;
        let sq = poly(&[(w, 1.0)]).multiply(&poly(&[(w, 1.0)]));
        assert_eq!(pairs(&sq), vec![(w * w, 2.0)]);
        assert!(poly(&[(1.0, 1.0)]).multiply(&RadialPolynomial::zero()).is_zero());
        let p = poly(&[(1.0, -1.0), (1.0, 0.0)]);
        assert_eq!(
            pairs(&p.multiply(&p)),
            vec![(1.0, -2.0), (2.0, -1.0), (1.0, 0.0)]
        );
    }

    #[test]
    fn integrate_examples() {
        let z = 1.3;
        let w = 0.4;
        assert_eq!(pairs(&poly(&[(z, 0.0)]).integrate_from_zero().unwrap()), vec![(z, 1.0)]);
        assert_eq!(
            pairs(&poly(&[(w, 1.0)]).integrate_from_zero().unwrap()),
            vec![(w / 2.0, 2.0)]
        );
        assert!(RadialPolynomial::zero().integrate_from_zero().unwrap().is_zero());
    }

    #[test]
    fn integrate_rejects_singular_terms() {
        assert!(matches!(
            poly(&[(1.0, -1.0)]).integrate_from_zero(),
            Err(Error::NonIntegrable { .. })
        ));
        assert!(poly(&[(1.0, -1.5)]).integrate_from_zero().is_err());
        assert!(poly(&[(1.0, -0.5)]).integrate_from_zero().is_ok());
    }

    #[test]
    fn radial_laplacian_examples() {
        let z = 2.0;
        assert_eq!(
            pairs(&poly(&[(-z, 1.0)]).radial_laplacian()),
            vec![(-2.0 * z, -1.0)]
        );
        assert!(poly(&[(4.2, 0.0)]).radial_laplacian().is_zero());
        assert!(poly(&[(4.2, -1.0)]).radial_laplacian().is_zero());
    }

    #[test]
    fn serde_uses_c_k_records() {
        let p = poly(&[(2.0, -1.0), (0.5, 0.0)]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[{"c":2.0,"k":-1.0},{"c":0.5,"k":0.0}]"#);
        let back: RadialPolynomial = serde_json::from_str(r#"[{"c":1,"k":0},{"c":2,"k":-1},{"c":1,"k":0}]"#).unwrap();
        assert_eq!(pairs(&back), vec![(2.0, -1.0), (2.0, 0.0)]);
    }

    fn arb_terms() -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec(
            (-5.0f64..5.0, prop::sample::select(vec![-1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0])),
            0..6,
        )
    }

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    proptest! {
        #[test]
        fn canonicalize_is_idempotent(ts in arb_terms()) {
            let once = RadialPolynomial::from_pairs(&ts).unwrap();
            let twice = RadialPolynomial::canonicalize(once.terms().to_vec()).unwrap();
            prop_assert_eq!(once.clone(), twice);
            for pair in once.terms().windows(2) {
                prop_assert!(pair[0].exponent < pair[1].exponent);
            }
        }

        #[test]
        fn evaluate_is_linear(a in arb_terms(), b in arb_terms(), r in 0.1f64..10.0) {
            let p = RadialPolynomial::from_pairs(&a).unwrap();
            let q = RadialPolynomial::from_pairs(&b).unwrap();
            let lhs = p.add(&q).evaluate(r).unwrap();
            let rhs = p.evaluate(r).unwrap() + q.evaluate(r).unwrap();
            // Scale by the term magnitudes so cancellation does not inflate the error.
            let mag: f64 = p.terms().iter().chain(q.terms()).map(|t| t.evaluate(r).abs()).sum();
            prop_assert!((lhs - rhs).abs() <= 1e-14 * mag.max(1e-300) * 4.0);
        }

        #[test]
        fn multiply_is_pointwise(a in arb_terms(), b in arb_terms(), r in 0.1f64..10.0) {
            let p = RadialPolynomial::from_pairs(&a).unwrap();
            let q = RadialPolynomial::from_pairs(&b).unwrap();
            let lhs = p.multiply(&q).evaluate(r).unwrap();
            let rhs = p.evaluate(r).unwrap() * q.evaluate(r).unwrap();
            let mag: f64 = p.terms().iter().map(|t| t.evaluate(r).abs()).sum::<f64>()
                * q.terms().iter().map(|t| t.evaluate(r).abs()).sum::<f64>();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * mag.max(1e-300));
        }

        #[test]
        fn derivative_inverts_integral(a in arb_terms(), r in 0.1f64..10.0) {
            let integrable: Vec<_> = a.into_iter().filter(|&(_, k)| k > -1.0).collect();
            let p = RadialPolynomial::from_pairs(&integrable).unwrap();
            let back = p.integrate_from_zero().unwrap().derivative();
            let lhs = back.evaluate(r).unwrap();
            let rhs = p.evaluate(r).unwrap();
            let mag: f64 = p.terms().iter().map(|t| t.evaluate(r).abs()).sum();
            prop_assert!(rel_close(lhs, rhs, 1e-12) || (lhs - rhs).abs() <= 1e-12 * mag);
        }

        #[test]
        fn laplacian_matches_composed_form(a in arb_terms()) {
            let p = RadialPolynomial::from_pairs(&a).unwrap();
            let composed = p.derivative().shift_exponents(2.0).derivative().shift_exponents(-2.0);
            prop_assert_eq!(p.radial_laplacian(), composed);
        }
    }
}
