//! The density mini-language.
//!
//! ```text
//! density := term ("+" term)*
//! term := NUMBER | NUMBER "/r" | NUMBER "*r^" NUMBER
//! ```
//!
//! Whitespace is ignored. A bare number is an `r⁰` term and `c/r` is an
//! `r⁻¹` term. A document starting with `[` is read as a JSON list of
//! `{"c": .., "k": ..}` records instead.

use psdual::{ChargeDensity, PowerTerm, RadialPolynomial};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DensityError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unsupported density term at byte {offset}: exponent {exponent} is below -1")]
    Unsupported { offset: usize, exponent: f64 },

    #[error("{0}")]
    Invalid(#[from] psdual::Error),
}

impl DensityError {
    pub fn reason_code(&self) -> &'static str {
        match self {
            DensityError::Syntax { .. } => "syntax",
            DensityError::Unsupported { .. } => "unsupported_density",
            DensityError::Invalid(e) => e.reason_code(),
        }
    }

    pub fn offset(&self) -> Option<usize> {
        match self {
            DensityError::Syntax { offset, .. } | DensityError::Unsupported { offset, .. } => Some(*offset),
            DensityError::Invalid(_) => None,
        }
    }
}

pub fn parse_density(input: &str) -> Result<ChargeDensity, DensityError> {
    if input.trim_start().starts_with('[') {
        return parse_records(input);
    }
    let mut parser = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    loop {
        parser.skip_ws();
        let start = parser.pos;
        let term = parser.term()?;
        if term.exponent < -1.0 {
            return Err(DensityError::Unsupported {
                offset: start,
                exponent: term.exponent,
            });
        }
        terms.push(term);
        parser.skip_ws();
        match parser.peek() {
            None => break,
            Some(b'+') => parser.pos += 1,
            Some(_) => return Err(parser.error("expected '+' or end of input")),
        }
    }
    Ok(ChargeDensity::new(RadialPolynomial::canonicalize(terms)?)?)
}

fn parse_records(input: &str) -> Result<ChargeDensity, DensityError> {
    let terms: Vec<PowerTerm> = serde_json::from_str(input).map_err(|e| DensityError::Syntax {
        offset: byte_offset(input, e.line(), e.column()),
        message: e.to_string(),
    })?;
    if let Some(t) = terms.iter().find(|t| t.exponent < -1.0) {
        return Err(DensityError::Unsupported {
            offset: 0,
            exponent: t.exponent,
        });
    }
    Ok(ChargeDensity::new(RadialPolynomial::canonicalize(terms)?)?)
}

fn byte_offset(src: &str, line: usize, column: usize) -> usize {
    let before: usize = src.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    before + column.saturating_sub(1)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> DensityError {
        DensityError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), DensityError> {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", byte as char)))
        }
    }

    fn term(&mut self) -> Result<PowerTerm, DensityError> {
        let coefficient = self.number()?;
        self.skip_ws();
        let exponent = match self.peek() {
            Some(b'/') => {
                self.pos += 1;
                self.expect(b'r')?;
                -1.0
            }
            Some(b'*') => {
                self.pos += 1;
                self.expect(b'r')?;
                self.expect(b'^')?;
                self.skip_ws();
                self.number()?
            }
            _ => 0.0,
        };
        Ok(PowerTerm {
            coefficient,
            exponent,
        })
    }

    fn number(&mut self) -> Result<f64, DensityError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let from = p.pos;
            while p.peek().is_some_and(|b| b.is_ascii_digit()) {
                p.pos += 1;
            }
            p.pos - from
        };
        if matches!(self.peek(), Some(b'+' | b'-')) {
            self.pos += 1;
        }
        let mut mantissa = digits(self);
        if self.peek() == Some(b'.') {
            self.pos += 1;
            mantissa += digits(self);
        }
        if mantissa == 0 {
            self.pos = start;
            return Err(self.error("expected a number"));
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = mark;
                return Err(self.error("malformed exponent"));
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let value: f64 = text.parse().map_err(|_| DensityError::Syntax {
            offset: start,
            message: format!("invalid number '{text}'"),
        })?;
        if !value.is_finite() {
            return Err(DensityError::Syntax {
                offset: start,
                message: format!("number '{text}' is out of range"),
            });
        }
        Ok(value)
    }
}

/// Mini-language form of a polynomial; `parse_density` reads it back exactly.
pub fn render_polynomial(p: &RadialPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    p.terms()
        .iter()
        .map(|t| {
            if t.exponent == -1.0 {
                format!("{}/r", t.coefficient)
            } else if t.exponent == 0.0 {
                format!("{}", t.coefficient)
            } else {
                format!("{}*r^{}", t.coefficient, t.exponent)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn render_density(rho: &ChargeDensity) -> String {
    render_polynomial(rho.profile())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pairs(rho: &ChargeDensity) -> Vec<(f64, f64)> {
        rho.profile()
            .terms()
            .iter()
            .map(|t| (t.coefficient, t.exponent))
            .collect()
    }

    #[test]
    fn family_densities() {
        assert_eq!(pairs(&parse_density("2/r").unwrap()), vec![(2.0, -1.0)]);
        assert_eq!(
            pairs(&parse_density("2/r + 0.3").unwrap()),
            vec![(2.0, -1.0), (0.3, 0.0)]
        );
    }

    #[test]
    fn general_terms_and_whitespace() {
        let rho = parse_density(" 1.5e-1 * r ^ 2+4/ r+-1*r^0.5 ").unwrap();
        assert_eq!(pairs(&rho), vec![(4.0, -1.0), (-1.0, 0.5), (0.15, 2.0)]);
        assert_eq!(pairs(&parse_density("1/r + 1/r").unwrap()), vec![(2.0, -1.0)]);
    }

    #[test]
    fn below_floor_is_unsupported() {
        let err = parse_density("1*r^-2").unwrap_err();
        assert_eq!(err.reason_code(), "unsupported_density");
        assert_eq!(err.offset(), Some(0));
        let err = parse_density("2/r + 1*r^-1.5").unwrap_err();
        assert_eq!(err.offset(), Some(6));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let cases = [
            ("", 0),
            ("2/x", 2),
            ("2 + ", 4),
            ("2 3", 2),
            ("abc", 0),
            ("2*r^", 4),
            ("1e", 1),
            ("2/r +", 5),
        ];
        for (src, offset) in cases {
            let err = parse_density(src).unwrap_err();
            assert_eq!(err.reason_code(), "syntax", "{src:?}");
            assert_eq!(err.offset(), Some(offset), "{src:?}: {err}");
        }
    }

    #[test]
    fn cancelling_terms_are_empty() {
        assert_eq!(
            parse_density("1 + -1").unwrap_err().reason_code(),
            "empty_density"
        );
    }

    #[test]
    fn json_records() {
        let rho = parse_density(r#"[{"c": 2, "k": -1}, {"c": 0.3, "k": 0}]"#).unwrap();
        assert_eq!(pairs(&rho), vec![(2.0, -1.0), (0.3, 0.0)]);
        assert_eq!(
            parse_density(r#"[{"c": 1, "k": -3}]"#).unwrap_err().reason_code(),
            "unsupported_density"
        );
        let err = parse_density("[{\"c\": 1,\n \"k\": }]").unwrap_err();
        assert_eq!(err.reason_code(), "syntax");
        assert_eq!(err.offset(), Some(16));
    }

    #[test]
    fn render_examples() {
        assert_eq!(render_density(&parse_density("0.3 + 2/r").unwrap()), "2/r + 0.3");
        assert_eq!(render_density(&parse_density("5*r^2").unwrap()), "5*r^2");
    }

    fn arb_density() -> impl Strategy<Value = ChargeDensity> {
        prop::collection::vec(
            (
                prop_oneof![-5.0f64..5.0, (1i32..100).prop_map(|i| i as f64 / 8.0)],
                prop_oneof![
                    prop::sample::select(vec![-1.0, 0.0, 1.0, 2.0, 3.0]),
                    -1.0f64..4.0
                ],
            ),
            1..=4,
        )
        .prop_filter_map("empty", |ts| ChargeDensity::from_pairs(&ts).ok())
    }

    proptest! {
        #[test]
        fn render_then_parse_is_identity(rho in arb_density()) {
            let text = render_density(&rho);
            prop_assert_eq!(parse_density(&text).unwrap(), rho);
        }
    }
}
