//! Exact rationals and certified fixed-point decimals.
//!
//! Every numeric result in this crate is a [`CertifiedDecimal`]: a decimal
//! midpoint `mantissa * 10^-scale` together with an exact, non-negative
//! rational radius. The true value is guaranteed to lie in
//! `[midpoint - radius, midpoint + radius]`. Arithmetic is exact on the
//! mantissas and every rounding step adds its exact discrepancy to the
//! radius, so enclosures never shrink below what is mathematically justified.

mod decimal;
mod rational;
mod sum;

pub use decimal::{recip_int_plus, CertifiedDecimal};
pub use rational::{abs, parse_rational, pow10, pow_rational, render_rational, Rational};
pub(crate) use sum::{decimal_len, FixedSum};

/// Extra decimal places carried internally by every evaluator on top of
/// the requested digit count.
pub const GUARD_DIGITS: u32 = 10;

/// A decimal string whose every printed digit is certified, plus the
/// enclosure it was read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certified {
    pub text: String,
    pub digits_certified: u32,
    pub enclosure: CertifiedDecimal,
}

impl Certified {
    pub fn is_complete(&self, digits: u32) -> bool {
        self.digits_certified >= digits
    }
}

/// Evaluate with increasing precision until the enclosure pins all
/// `digits` decimal places of the correctly rounded result.
///
/// `eval` is called with a requested digit count; it is retried at
/// `digits + 20` and `digits + 60` when the first enclosure straddles a
/// rounding boundary. If no attempt pins every digit, the best attempt
/// is returned with `digits_certified < digits` and a text rounded from
/// the midpoint.
pub fn certify<F>(digits: u32, mut eval: F) -> crate::Result<Certified>
where
    F: FnMut(u32) -> crate::Result<CertifiedDecimal>,
{
    let mut last = None;
    for extra in [0u32, 20, 60] {
        let enclosure = eval(digits + extra)?;
        if let Some(text) = enclosure.to_fixed(digits) {
            return Ok(Certified {
                text,
                digits_certified: digits,
                enclosure,
            });
        }
        last = Some(enclosure);
    }
    let enclosure = last.expect("at least one attempt");
    let text = enclosure.round_to_digits(digits).mantissa_string();
    Ok(Certified {
        text,
        digits_certified: enclosure.certified_digits(digits),
        enclosure,
    })
}
