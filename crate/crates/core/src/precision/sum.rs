use num_bigint::BigInt;
use num_traits::Zero;

use super::decimal::CertifiedDecimal;
use super::rational::Rational;

/// Number of decimal digits in `n` (at least 1).
pub(crate) fn decimal_len(n: usize) -> u32 {
    n.max(1).ilog10() + 1
}

/// Running sum of rationals, each rounded to a fixed number of decimal
/// places, with the accumulated rounding radius tracked exactly.
#[derive(Debug)]
pub(crate) struct FixedSum {
    scale: u32,
    mantissa: BigInt,
    error: Rational,
    terms: usize,
}

impl FixedSum {
    pub(crate) fn new(scale: u32) -> Self {
        Self {
            scale,
            mantissa: BigInt::zero(),
            error: Rational::zero(),
            terms: 0,
        }
    }

    /// Working scale that keeps the rounding error of `terms` additions
    /// below half a unit at `digits` places.
    pub(crate) fn scale_for(digits: u32, terms: usize) -> u32 {
        digits + decimal_len(terms.saturating_mul(2)) + 1
    }

    pub(crate) fn add_rational(&mut self, q: &Rational) {
        let d = CertifiedDecimal::from_rational(q, self.scale);
        self.add_decimal(&d);
    }

    pub(crate) fn add_decimal(&mut self, d: &CertifiedDecimal) {
        let d = d.round_to_digits(self.scale);
        self.mantissa += d.mantissa();
        if !d.is_exact() {
            self.error += d.error();
        }
        self.terms += 1;
    }

    pub(crate) fn terms(&self) -> usize {
        self.terms
    }

    pub(crate) fn into_decimal(self) -> CertifiedDecimal {
        CertifiedDecimal::new(self.mantissa, self.scale, self.error)
    }

    /// Add the truncation bound `tail` to the radius and round to `digits` places.
    pub(crate) fn finish(self, tail: &Rational, digits: u32) -> CertifiedDecimal {
        self.into_decimal().widen(tail).round_to_digits(digits)
    }
}
