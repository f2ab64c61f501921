use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero: reciprocal of 0 requested")]
    ZeroDenominator,

    #[error("pole at k={index}: the term with index {index} has a vanishing denominator at x = {x}")]
    Pole { index: u64, x: String },

    #[error("divergent input: |x| = {abs_x} >= 1, the series only converges for |x| < 1")]
    DivergentInput { abs_x: String },

    #[error("coefficient rule has no growth bound; certified evaluation of an infinite series needs one")]
    UnboundedCoefficients,

    #[error("invalid exponent sequence: {0}")]
    InvalidExponents(String),

    #[error("invalid base {0}: the base must be greater than 1")]
    InvalidBase(String),

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("exponent {0} is too large to expand exactly")]
    ExponentOverflow(String),
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }

    /// True for errors caused by the caller's input rather than by the library.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::ExponentOverflow(_))
    }
}
