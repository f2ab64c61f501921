use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{pow10, Rational};
use crate::error::{Error, Result};

/// Decimal places kept in the radius beyond the value's own scale. Radii are
/// rounded up to this resolution so their denominators stay powers of ten.
const RADIUS_EXTRA_DIGITS: u32 = 6;

/// Fixed-point decimal `mantissa * 10^-scale` with a rigorous absolute-error
/// radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedDecimal {
    mantissa: BigInt,
    scale: u32,
    error: Rational,
}

/// Nearest integer to `n / d` for `d > 0`, ties away from zero.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    let twice: BigInt = r * 2u32;
    match twice.cmp(d) {
        Ordering::Greater => q + 1u32,
        Ordering::Equal if !n.is_negative() => q + 1u32,
        _ => q,
    }
}

/// Smallest rational with denominator `10^digits` that is `>= r`.
fn round_up_radius(r: Rational, digits: u32) -> Rational {
    let den = pow10(digits);
    if (&den % r.denom()).is_zero() {
        return r;
    }
    let scaled = r.numer() * &den;
    let ceil = scaled.div_ceil(r.denom());
    Rational::new(ceil, den)
}

impl CertifiedDecimal {
    pub fn new(mantissa: BigInt, scale: u32, error: Rational) -> Self {
        assert!(!error.is_negative(), "error radius must be non-negative");
        Self {
            mantissa,
            scale,
            error,
        }
    }

    pub fn exact(mantissa: BigInt, scale: u32) -> Self {
        Self::new(mantissa, scale, Rational::zero())
    }

    pub fn zero() -> Self {
        Self::exact(BigInt::zero(), 0)
    }

    /// Nearest decimal with `scale` places to `q`; the radius is the exact
    /// rounding discrepancy, rounded up to a few digits below the scale.
    pub fn from_rational(q: &Rational, scale: u32) -> Self {
        let scaled = q.numer() * pow10(scale);
        let mantissa = round_div(&scaled, q.denom());
        let approx = Rational::new(mantissa.clone(), pow10(scale));
        let delta = (q - approx).abs();
        Self::new(mantissa, scale, round_up_radius(delta, scale + RADIUS_EXTRA_DIGITS))
    }

    /// Smallest decimal interval at `scale` places that contains `[lo, hi]`.
    pub fn from_interval(lo: &Rational, hi: &Rational, scale: u32) -> Self {
        assert!(lo <= hi, "empty interval");
        let mid = (lo + hi) / Rational::from_integer(2.into());
        let centre = Self::from_rational(&mid, scale).mantissa;
        let value = Rational::new(centre.clone(), pow10(scale));
        let radius = std::cmp::max((&value - lo).abs(), (hi - &value).abs());
        Self::new(centre, scale, round_up_radius(radius, scale + RADIUS_EXTRA_DIGITS))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn error(&self) -> &Rational {
        &self.error
    }

    pub fn is_exact(&self) -> bool {
        self.error.is_zero()
    }

    /// The midpoint as an exact rational.
    pub fn value(&self) -> Rational {
        Rational::new(self.mantissa.clone(), pow10(self.scale))
    }

    pub fn lower(&self) -> Rational {
        self.value() - &self.error
    }

    pub fn upper(&self) -> Rational {
        self.value() + &self.error
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.lower() <= *q && *q <= self.upper()
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// True when this interval lies inside `other` widened by `margin` on both sides.
    pub fn within(&self, other: &Self, margin: &Rational) -> bool {
        other.lower() - margin <= self.lower() && self.upper() <= other.upper() + margin
    }

    /// Strictly below `other`: every point of `self` is smaller than every point of `other`.
    pub fn certainly_lt(&self, other: &Self) -> bool {
        self.upper() < other.lower()
    }

    /// Common part of several enclosures, `None` if they do not all meet.
    pub fn intersection(items: &[Self]) -> Option<(Rational, Rational)> {
        let lo = items.iter().map(Self::lower).max()?;
        let hi = items.iter().map(Self::upper).min()?;
        (lo <= hi).then_some((lo, hi))
    }

    /// Add `extra` to the radius.
    pub fn widen(&self, extra: &Rational) -> Self {
        assert!(!extra.is_negative());
        let error = round_up_radius(&self.error + extra, self.scale + RADIUS_EXTRA_DIGITS);
        Self::new(self.mantissa.clone(), self.scale, error)
    }

    fn rescaled_mantissa(&self, scale: u32) -> BigInt {
        debug_assert!(scale >= self.scale);
        &self.mantissa * pow10(scale - self.scale)
    }

    /// Re-express at exactly `digits` decimal places. Dropped digits are
    /// rounded to nearest and the discrepancy is added to the radius, so the
    /// result still encloses the whole input interval.
    pub fn round_to_digits(&self, digits: u32) -> Self {
        if digits >= self.scale {
            return Self::new(self.rescaled_mantissa(digits), digits, self.error.clone());
        }
        let divisor = pow10(self.scale - digits);
        let mantissa = round_div(&self.mantissa, &divisor);
        let back = &mantissa * &divisor;
        let delta = Rational::new((&self.mantissa - back).abs(), pow10(self.scale));
        let error = round_up_radius(&self.error + delta, digits + RADIUS_EXTRA_DIGITS);
        Self::new(mantissa, digits, error)
    }

    /// The correctly rounded `digits`-place string, if every point of the
    /// interval rounds to it.
    pub fn to_fixed(&self, digits: u32) -> Option<String> {
        let lo = round_rational(&self.lower(), digits);
        let hi = round_rational(&self.upper(), digits);
        (lo == hi).then(|| format_fixed(&lo, digits))
    }

    /// Largest `d <= max_digits` for which [`Self::to_fixed`] succeeds, or 0.
    pub fn certified_digits(&self, max_digits: u32) -> u32 {
        (0..=max_digits)
            .rev()
            .find(|&d| self.to_fixed(d).is_some())
            .unwrap_or(0)
    }

    /// The midpoint written out with exactly `scale` decimals.
    pub fn mantissa_string(&self) -> String {
        format_fixed(&self.mantissa, self.scale)
    }

    /// Largest `k` with `error <= 10^-k`; `None` for an exact value.
    pub fn error_exponent(&self) -> Option<i64> {
        if self.error.is_zero() {
            return None;
        }
        let num = self.error.numer();
        let den = self.error.denom();
        // error ~ 10^(len(num) - len(den)); refine exactly from there.
        let mut k = den.to_string().len() as i64 - num.to_string().len() as i64 - 1;
        let fits = |k: i64| -> bool {
            if k >= 0 {
                num * pow10(k as u32) <= *den
            } else {
                *num <= den * pow10((-k) as u32)
            }
        };
        while !fits(k) {
            k -= 1;
        }
        while fits(k + 1) {
            k += 1;
        }
        Some(k)
    }
}

fn round_rational(q: &Rational, digits: u32) -> BigInt {
    round_div(&(q.numer() * pow10(digits)), q.denom())
}

fn format_fixed(mantissa: &BigInt, scale: u32) -> String {
    let digits = mantissa.abs().to_string();
    let scale = scale as usize;
    let padded = if digits.len() <= scale {
        format!("{}{}", "0".repeat(scale + 1 - digits.len()), digits)
    } else {
        digits
    };
    let sign = if mantissa.is_negative() { "-" } else { "" };
    if scale == 0 {
        return format!("{sign}{padded}");
    }
    let (int_part, frac_part) = padded.split_at(padded.len() - scale);
    format!("{sign}{int_part}.{frac_part}")
}

impl fmt::Display for CertifiedDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.error_exponent() {
            None => write!(f, "{} ± 0", self.mantissa_string()),
            Some(k) => write!(f, "{} ± 1e{}", self.mantissa_string(), -k),
        }
    }
}

impl Add for &CertifiedDecimal {
    type Output = CertifiedDecimal;

    fn add(self, rhs: Self) -> CertifiedDecimal {
        let scale = self.scale.max(rhs.scale);
        let mantissa = self.rescaled_mantissa(scale) + rhs.rescaled_mantissa(scale);
        CertifiedDecimal::new(mantissa, scale, &self.error + &rhs.error)
    }
}

impl Neg for &CertifiedDecimal {
    type Output = CertifiedDecimal;

    fn neg(self) -> CertifiedDecimal {
        CertifiedDecimal::new(-&self.mantissa, self.scale, self.error.clone())
    }
}

impl Sub for &CertifiedDecimal {
    type Output = CertifiedDecimal;

    fn sub(self, rhs: Self) -> CertifiedDecimal {
        self + &(-rhs)
    }
}

impl Mul for &CertifiedDecimal {
    type Output = CertifiedDecimal;

    /// Interval product `|a|·eb + |b|·ea + ea·eb`, then rounded outward to the
    /// larger of the two scales.
    fn mul(self, rhs: Self) -> CertifiedDecimal {
        let a = self.value().abs();
        let b = rhs.value().abs();
        let error = &a * &rhs.error + &b * &self.error + &self.error * &rhs.error;
        let exact = CertifiedDecimal::new(
            &self.mantissa * &rhs.mantissa,
            self.scale + rhs.scale,
            error,
        );
        exact.round_to_digits(self.scale.max(rhs.scale))
    }
}

/// `1/q` to `digits` decimal places with radius at most `10^-digits`.
pub fn recip_int_plus(q: &Rational, digits: u32) -> Result<CertifiedDecimal> {
    if q.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(CertifiedDecimal::from_rational(&q.recip(), digits))
}

impl From<i64> for CertifiedDecimal {
    fn from(v: i64) -> Self {
        Self::exact(v.into(), 0)
    }
}

impl CertifiedDecimal {
    pub fn one() -> Self {
        Self::exact(BigInt::one(), 0)
    }
}
