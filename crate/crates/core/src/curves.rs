//! The curve family `y(x) = Σ_{k≥0} σ_k / (a^k + x)` and its variants.
//!
//! `σ_k` is `+1` (uniform) or `(-1)^k` (alternating). In the powered mode the
//! denominators are `a^k + x^k` instead, starting from `1/(1 + 1) = 1/2` at
//! `k = 0`.
//!
//! Truncation: in fixed mode, once `a^k ≥ 2|x|` we have `|a^k + x| ≥ a^k / 2`,
//! so the tail from `N` on is at most `Σ_{k≥N} 2 a^-k = 2 a^(1-N) / (a - 1)`.
//! In powered mode let `b = max(a, |x|)` and `c = min(a, |x|)`; once
//! `(c/b)^k ≤ 1/2` (or always, when `x = a`) we have `|a^k + x^k| ≥ b^k / 2` and
//! the same bound holds with `b` in place of `a`. Terms before that point are
//! summed as exact rationals.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::precision::{
    pow10, render_rational, CertifiedDecimal, FixedSum, Rational, GUARD_DIGITS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Signs {
    Uniform,
    Alternating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArgMode {
    /// Denominator `a^k + x`.
    Fixed,
    /// Denominator `a^k + x^k`.
    Powered,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    base: Rational,
    signs: Signs,
    mode: ArgMode,
}

impl CurveSpec {
    /// Rejects `base ≤ 1`: at `a = 1` every ordinate is infinite.
    pub fn new(base: Rational, signs: Signs, mode: ArgMode) -> Result<Self> {
        if base <= Rational::one() {
            return Err(Error::InvalidBase(render_rational(&base)));
        }
        Ok(Self { base, signs, mode })
    }

    pub fn with_integer_base(base: i64, signs: Signs, mode: ArgMode) -> Result<Self> {
        Self::new(Rational::from_integer(base.into()), signs, mode)
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn signs(&self) -> Signs {
        self.signs
    }

    pub fn mode(&self) -> ArgMode {
        self.mode
    }

    fn sign(&self, k: u64) -> Rational {
        match self.signs {
            Signs::Alternating if k % 2 == 1 => -Rational::one(),
            _ => Rational::one(),
        }
    }

    /// Index of the vanishing denominator at `x`, if any.
    pub fn pole_index(&self, x: &Rational) -> Option<u64> {
        if !x.is_negative() {
            return None;
        }
        match self.mode {
            ArgMode::Fixed => {
                let target = -x;
                let mut power = Rational::one();
                let mut k = 0;
                while power < target {
                    power *= &self.base;
                    k += 1;
                }
                (power == target).then_some(k)
            }
            // x^k = -a^k has a rational solution only for odd k, namely x = -a.
            ArgMode::Powered => (*x == -&self.base).then_some(1),
        }
    }
}

/// The three command-line variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Plus,
    Alt,
    Powers,
}

impl Variant {
    pub fn spec(self, base: i64) -> Result<CurveSpec> {
        let (signs, mode) = match self {
            Variant::Plus => (Signs::Uniform, ArgMode::Fixed),
            Variant::Alt => (Signs::Alternating, ArgMode::Fixed),
            Variant::Powers => (Signs::Uniform, ArgMode::Powered),
        };
        CurveSpec::with_integer_base(base, signs, mode)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Plus => "plus",
            Variant::Alt => "alt",
            Variant::Powers => "powers",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" => Ok(Variant::Plus),
            "alt" => Ok(Variant::Alt),
            "powers" => Ok(Variant::Powers),
            _ => Err(Error::parse(s, "expected plus, alt or powers")),
        }
    }
}

/// Exact ordinate at `x = 0`.
pub fn value_at_zero(c: &CurveSpec) -> Rational {
    let a = &c.base;
    let one = Rational::one();
    let half = Rational::new(1.into(), 2.into());
    match (c.mode, c.signs) {
        (ArgMode::Fixed, Signs::Uniform) => a / (a - &one),
        (ArgMode::Fixed, Signs::Alternating) => a / (a + &one),
        // 1/2 + Σ_{k≥1} a^-k
        (ArgMode::Powered, Signs::Uniform) => half + &one / (a - &one),
        // 1/2 + Σ_{k≥1} (-1)^k a^-k
        (ArgMode::Powered, Signs::Alternating) => half - &one / (a + &one),
    }
}

/// Abscissas where the curve has a pole: `-1, -a, ..., -a^K` in fixed mode,
/// just `-a` in powered mode.
pub fn poles(c: &CurveSpec, upto: u64) -> Vec<Rational> {
    match c.mode {
        ArgMode::Fixed => {
            let mut power = Rational::one();
            let mut out = Vec::with_capacity(upto as usize + 1);
            for _ in 0..=upto {
                out.push(-&power);
                power *= &c.base;
            }
            out
        }
        ArgMode::Powered => vec![-&c.base],
    }
}

fn pole_error(index: u64, x: &Rational) -> Error {
    Error::Pole {
        index,
        x: render_rational(x),
    }
}

/// Certified ordinate at `x` with radius at most `10^-digits`.
pub fn eval_curve(c: &CurveSpec, x: &Rational, digits: u32) -> Result<CertifiedDecimal> {
    if let Some(k) = c.pole_index(x) {
        return Err(pole_error(k, x));
    }
    let work = digits + GUARD_DIGITS;
    let one = Rational::one();
    let abs_x = x.abs();
    let half = Rational::new(1.into(), 2.into());

    // `dominant` is the geometric ratio of the tail, `exact_until` the first
    // index from which |denominator| ≥ dominant^k / 2 holds.
    let (dominant, exact_until) = match c.mode {
        ArgMode::Fixed => {
            let twice = &abs_x * Rational::from_integer(2.into());
            let mut power = one.clone();
            let mut k = 0u64;
            while power < twice {
                power *= &c.base;
                k += 1;
            }
            (c.base.clone(), k)
        }
        ArgMode::Powered => {
            let (big, small) = if abs_x > c.base {
                (abs_x.clone(), c.base.clone())
            } else {
                (c.base.clone(), abs_x.clone())
            };
            let k = if *x == c.base {
                0
            } else {
                let ratio = &small / &big;
                let mut power = one.clone();
                let mut k = 0u64;
                while power > half {
                    power *= &ratio;
                    k += 1;
                }
                k
            };
            (big, k)
        }
    };

    // tail from N on: 2 b^(1-N) / (b - 1) ≤ 10^-w / 2
    let budget = Rational::new(1.into(), pow10(work) * 2u32);
    let tail_factor = Rational::from_integer(2.into()) * &dominant / (&dominant - &one);
    let mut end = exact_until;
    let mut dominant_power = power_of(&dominant, end);
    while &tail_factor / &dominant_power > budget {
        dominant_power *= &dominant;
        end += 1;
    }
    let tail = &tail_factor / &dominant_power;

    let term = |k: u64, base_power: &Rational| -> Rational {
        let denominator = match c.mode {
            ArgMode::Fixed => base_power + x,
            ArgMode::Powered => base_power + power_of(x, k),
        };
        c.sign(k) / denominator
    };

    let mut exact = Rational::zero();
    let mut base_power = one.clone();
    for k in 0..exact_until {
        exact += term(k, &base_power);
        base_power *= &c.base;
    }
    let rounded_terms = (end - exact_until) as usize + 1;
    let mut sum = FixedSum::new(FixedSum::scale_for(work, rounded_terms));
    sum.add_rational(&exact);
    for k in exact_until..end {
        sum.add_rational(&term(k, &base_power));
        base_power *= &c.base;
    }
    Ok(sum.finish(&tail, work))
}

fn power_of(x: &Rational, k: u64) -> Rational {
    crate::precision::pow_rational(x, u32::try_from(k).expect("power index fits in u32"))
}

/// One abscissa of a sampled curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleRow {
    pub x: Rational,
    pub y: Sample,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sample {
    Value(CertifiedDecimal),
    Pole(u64),
}

/// `steps` equally spaced abscissas from `from` to `to` inclusive.
pub fn sample_grid(from: &Rational, to: &Rational, steps: usize) -> Result<Vec<Rational>> {
    if from >= to {
        return Err(Error::InvalidRange(format!(
            "start {} must be below end {}",
            render_rational(from),
            render_rational(to)
        )));
    }
    if steps < 2 {
        return Err(Error::InvalidRange(format!("need at least 2 steps, got {steps}")));
    }
    let width = (to - from) / Rational::from_integer((steps - 1).into());
    Ok((0..steps)
        .map(|i| from + &width * Rational::from_integer(i.into()))
        .collect())
}

pub fn sample_curve(
    c: &CurveSpec,
    from: &Rational,
    to: &Rational,
    steps: usize,
    digits: u32,
) -> Result<Vec<SampleRow>> {
    sample_grid(from, to, steps)?
        .into_iter()
        .map(|x| {
            let y = match c.pole_index(&x) {
                Some(k) => Sample::Pole(k),
                None => Sample::Value(eval_curve(c, &x, digits)?),
            };
            Ok(SampleRow { x, y })
        })
        .collect()
}
