use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number in canonical form (positive denominator, reduced).
pub type Rational = BigRational;

pub fn pow10(exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), exp as usize)
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

/// Exact `x^n`; `0^0` is 1.
pub fn pow_rational(x: &Rational, n: u32) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    // Powers of coprime integers stay coprime, so the result is canonical.
    Rational::new_raw(x.numer().pow(n), x.denom().pow(n))
}

/// Parse `"p/q"`, an integer, or a decimal literal such as `"-0.125"`.
/// Decimal literals are converted exactly.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::parse(input, "empty input"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let numer = parse_int(p.trim()).ok_or_else(|| Error::parse(input, "bad numerator"))?;
        let denom = parse_int(q.trim()).ok_or_else(|| Error::parse(input, "bad denominator"))?;
        if denom.is_zero() {
            return Err(Error::parse(input, "zero denominator"));
        }
        return Ok(Rational::new(numer, denom));
    }

    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::parse(input, "no digits"));
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(input, "expected p/q or a decimal literal"));
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = digits.parse().map_err(|_| Error::parse(input, "no digits"))?;
    if negative {
        numer = -numer;
    }
    let frac_len = u32::try_from(frac_part.len()).map_err(|_| Error::parse(input, "too long"))?;
    Ok(Rational::new(numer, pow10(frac_len)))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// `"p/q"`, or just `"p"` for integers.
pub fn render_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
