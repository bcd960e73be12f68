use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid term: coefficient {coefficient}, exponent {exponent} (must be finite)")]
    InvalidTerm { coefficient: f64, exponent: f64 },

    #[error("cannot evaluate at r = {r}")]
    Domain { r: f64 },

    #[error("term with exponent {exponent} is not integrable at the origin")]
    NonIntegrable { exponent: f64 },

    #[error("charge density has no terms")]
    EmptyDensity,

    #[error("density exponent {exponent} is below -1")]
    UnsupportedDensity { exponent: f64 },

    #[error("field term with exponent {exponent} makes the gauge V(0) = 0 undefined")]
    GaugeUndefined { exponent: f64 },

    #[error("field term with exponent {exponent} cannot be split into constant and varying parts")]
    NotDecomposable { exponent: f64 },

    #[error("family parameters out of range: Z = {z}, W = {w}")]
    InvalidFamily { z: f64, w: f64 },

    #[error("normalization denominator is not positive (D = {denominator})")]
    NumericInstability { denominator: f64 },

    #[error("wavefunction has no normalization constant")]
    NotNormalized,

    #[error("non-finite argument {0}")]
    NonFinite(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid energy bracket [{lo}, {hi}]")]
    InvalidBracket { lo: f64, hi: f64 },

    #[error("no eigenvalue in bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("eigenvalue {energy} has {nodes} interior nodes, not a ground state")]
    NotGroundState { energy: f64, nodes: usize },
}

impl Error {
    /// Stable machine-readable identifier for the error kind.
    pub fn reason_code(&self) -> &'static str {
        match self {
            Error::InvalidTerm { .. } => "invalid_term",
            Error::Domain { .. } => "domain",
            Error::NonIntegrable { .. } => "non_integrable",
            Error::EmptyDensity => "empty_density",
            Error::UnsupportedDensity { .. } => "unsupported_density",
            Error::GaugeUndefined { .. } => "gauge_undefined",
            Error::NotDecomposable { .. } => "not_decomposable",
            Error::InvalidFamily { .. } => "invalid_family",
            Error::NumericInstability { .. } => "numeric_instability",
            Error::NotNormalized => "not_normalized",
            Error::NonFinite(_) => "non_finite",
            Error::InvalidGrid(_) => "invalid_grid",
            Error::InvalidBracket { .. } => "invalid_bracket",
            Error::NoSignChange { .. } => "bracket",
            Error::NotGroundState { .. } => "not_ground_state",
        }
    }
}
