//! Certified arbitrary-precision evaluation of lacunary series, the
//! Σ 1/(2^n - 1) constant, the curve family Σ 1/(a^k + x), and exact
//! verification of three-triangular-number representations.

pub mod cli;
pub mod constants;
pub mod curves;
pub mod error;
pub mod eureka;
pub mod precision;
pub mod series;

pub use error::{Error, Result};
pub use precision::{CertifiedDecimal, Rational};
