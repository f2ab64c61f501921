//! Certified evaluation of lacunary power series `y = Σ A_n x^(α_n)`.
//!
//! The exponents come from an [`ExponentSequence`] (geometric, polygonal,
//! squares, or an explicit list) and the coefficients from a
//! [`Coefficients`] rule. Evaluation is restricted to `|x| < 1` for
//! infinite series. The truncation point is chosen from the bound
//!
//! ```text
//! Σ_{n≥N} |A_n| |x|^(α_n)  ≤  C (N+1)^d d! |x|^(α_N) / (1 - |x|)^(d+1)
//! ```
//!
//! which holds whenever `|A_n| ≤ C (n+1)^d` and the exponents are strictly
//! increasing integers (so `α_n ≥ α_N + (n - N)`), using
//! `Σ_j (j+1)^d r^j ≤ d! / (1-r)^(d+1)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::precision::{
    decimal_len, parse_rational, pow10, pow_rational, render_rational, CertifiedDecimal,
    FixedSum, Rational, GUARD_DIGITS,
};

/// Strictly increasing sequence of non-negative integer exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSequence(Kind);

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    /// `a^n`
    Geometric(BigUint),
    /// `((s-2) n^2 - (s-4) n) / 2`; order 3 is trigonal, order 4 the squares.
    Polygonal(u32),
    Explicit(Vec<BigUint>),
}

impl ExponentSequence {
    pub fn geometric(base: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidExponents(format!(
                "geometric base must be at least 2, got {base}"
            )));
        }
        Ok(Self(Kind::Geometric(base.into())))
    }

    pub fn polygonal(order: u32) -> Result<Self> {
        if order < 3 {
            return Err(Error::InvalidExponents(format!(
                "polygonal order must be at least 3, got {order}"
            )));
        }
        Ok(Self(Kind::Polygonal(order)))
    }

    pub fn trigonal() -> Self {
        Self(Kind::Polygonal(3))
    }

    pub fn squares() -> Self {
        Self(Kind::Polygonal(4))
    }

    /// A finite list; rejected unless strictly increasing.
    pub fn explicit<I, T>(exponents: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        let list: Vec<BigUint> = exponents.into_iter().map(Into::into).collect();
        if let Some(w) = list.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidExponents(format!(
                "explicit exponents must be strictly increasing ({} is followed by {})",
                w[0], w[1]
            )));
        }
        Ok(Self(Kind::Explicit(list)))
    }

    /// `α_n`, or `None` past the end of an explicit list.
    pub fn term(&self, n: u64) -> Option<BigUint> {
        match &self.0 {
            Kind::Geometric(base) => Some(base.pow(u32::try_from(n).ok()?)),
            Kind::Polygonal(order) => {
                let n = BigInt::from(n);
                let s = i64::from(*order);
                let twice = (s - 2) * &n * &n - (s - 4) * &n;
                Some((twice / 2u32).to_biguint().expect("polygonal numbers are non-negative"))
            }
            Kind::Explicit(list) => list.get(usize::try_from(n).ok()?).cloned(),
        }
    }

    /// Number of terms for explicit lists; `None` for infinite sequences.
    pub fn len(&self) -> Option<usize> {
        match &self.0 {
            Kind::Explicit(list) => Some(list.len()),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.len().is_some()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = BigUint> + '_ {
        (0u64..).map_while(move |n| self.term(n))
    }
}

impl fmt::Display for ExponentSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Kind::Geometric(base) => write!(f, "geometric:{base}"),
            Kind::Polygonal(3) => f.write_str("trigonal"),
            Kind::Polygonal(4) => f.write_str("squares"),
            Kind::Polygonal(order) => write!(f, "polygonal:{order}"),
            Kind::Explicit(list) => {
                let items: Vec<String> = list.iter().map(ToString::to_string).collect();
                write!(f, "explicit:{}", items.join(","))
            }
        }
    }
}

impl FromStr for ExponentSequence {
    type Err = Error;

    /// `trigonal`, `squares`, `geometric:A`, `polygonal:S`, `explicit:e0,e1,...`
    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        let number = |what: &str| -> Result<u64> {
            arg.ok_or_else(|| Error::parse(s, format!("{kind} needs a {what}")))?
                .parse()
                .map_err(|_| Error::parse(s, format!("bad {what}")))
        };
        match kind {
            "trigonal" | "triangular" => Ok(Self::trigonal()),
            "squares" => Ok(Self::squares()),
            "geometric" => Self::geometric(number("base")?),
            "polygonal" => {
                let order = number("order")?;
                Self::polygonal(u32::try_from(order).map_err(|_| Error::parse(s, "order too large"))?)
            }
            "explicit" => {
                let arg = arg.ok_or_else(|| Error::parse(s, "explicit needs a list"))?;
                let list = arg
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| t.trim().parse::<BigUint>().map_err(|_| Error::parse(s, "bad exponent")))
                    .collect::<Result<Vec<_>>>()?;
                Self::explicit(list)
            }
            _ => Err(Error::parse(s, "unknown exponent kind")),
        }
    }
}

/// `|A_n| ≤ constant · (n+1)^degree` for all `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientBound {
    pub constant: Rational,
    pub degree: u32,
}

/// Rule producing the exact coefficient `A_n`.
#[derive(Clone)]
pub enum Coefficients {
    /// Every coefficient is 1.
    Ones,
    /// The listed values repeated cyclically.
    Cycle(Vec<Rational>),
    /// An arbitrary rule; infinite series need a `bound` to be evaluated.
    Rule {
        rule: Arc<dyn Fn(u64) -> Rational + Send + Sync>,
        bound: Option<CoefficientBound>,
    },
}

impl fmt::Debug for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ones => f.write_str("Ones"),
            Self::Cycle(values) => f.debug_tuple("Cycle").field(values).finish(),
            Self::Rule { bound, .. } => f.debug_struct("Rule").field("bound", bound).finish(),
        }
    }
}

impl Coefficients {
    pub fn rule<F>(rule: F, bound: Option<CoefficientBound>) -> Self
    where
        F: Fn(u64) -> Rational + Send + Sync + 'static,
    {
        Self::Rule {
            rule: Arc::new(rule),
            bound,
        }
    }

    /// Parse a comma-separated list of rationals into a [`Coefficients::Cycle`].
    pub fn parse_list(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::Cycle(values))
    }

    pub fn get(&self, n: u64) -> Rational {
        match self {
            Self::Ones => Rational::one(),
            Self::Cycle(values) if values.is_empty() => Rational::zero(),
            Self::Cycle(values) => values[(n % values.len() as u64) as usize].clone(),
            Self::Rule { rule, .. } => rule(n),
        }
    }

    pub fn bound(&self) -> Option<CoefficientBound> {
        match self {
            Self::Ones => Some(CoefficientBound {
                constant: Rational::one(),
                degree: 0,
            }),
            Self::Cycle(values) => Some(CoefficientBound {
                constant: values.iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero),
                degree: 0,
            }),
            Self::Rule { bound, .. } => bound.clone(),
        }
    }

    fn render(&self) -> String {
        match self {
            Self::Ones => "ones".into(),
            Self::Cycle(values) => values.iter().map(render_rational).collect::<Vec<_>>().join(","),
            Self::Rule { .. } => "rule".into(),
        }
    }
}

/// `y = Σ A_n x^(α_n)`.
#[derive(Debug, Clone)]
pub struct LacunarySeries {
    coefficients: Coefficients,
    exponents: ExponentSequence,
}

impl LacunarySeries {
    pub fn new(coefficients: Coefficients, exponents: ExponentSequence) -> Self {
        Self {
            coefficients,
            exponents,
        }
    }

    /// `1 + x + x^3 + x^6 + x^10 + ...`
    pub fn trigonal() -> Self {
        Self::new(Coefficients::Ones, ExponentSequence::trigonal())
    }

    pub fn with_unit_coefficients(exponents: ExponentSequence) -> Self {
        Self::new(Coefficients::Ones, exponents)
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    pub fn exponents(&self) -> &ExponentSequence {
        &self.exponents
    }

    pub fn describe(&self) -> String {
        format!("{} with coefficients {}", self.exponents, self.coefficients.render())
    }
}

/// Exact value of the first `count` terms (fewer if the exponent list is shorter).
pub fn partial_sum(series: &LacunarySeries, x: &Rational, count: usize) -> Result<Rational> {
    let mut total = Rational::zero();
    for_each_term(series, x, count, |_, term| total += term)?;
    Ok(total)
}

fn for_each_term<F>(series: &LacunarySeries, x: &Rational, count: usize, mut f: F) -> Result<()>
where
    F: FnMut(u64, Rational),
{
    let mut power = Rational::one();
    let mut previous = BigUint::zero();
    for (n, exponent) in series.exponents.iter().take(count).enumerate() {
        let gap = (&exponent - &previous)
            .to_u32()
            .ok_or_else(|| Error::ExponentOverflow(exponent.to_string()))?;
        power *= pow_rational(x, gap);
        previous = exponent;
        let coefficient = series.coefficients.get(n as u64);
        if !coefficient.is_zero() {
            f(n as u64, coefficient * &power);
        }
    }
    Ok(())
}

/// Certified value of the series at `x`, with radius at most `10^-digits`.
pub fn eval_series(series: &LacunarySeries, x: &Rational, digits: u32) -> Result<CertifiedDecimal> {
    let work = digits + GUARD_DIGITS;
    let (count, tail) = match series.exponents.len() {
        Some(len) => (len, Rational::zero()),
        None => {
            let abs_x = x.abs();
            if abs_x >= Rational::one() {
                return Err(Error::DivergentInput {
                    abs_x: render_rational(&abs_x),
                });
            }
            truncation(series, &abs_x, work)?
        }
    };
    let mut sum = FixedSum::new(FixedSum::scale_for(work, count));
    for_each_term(series, x, count, |_, term| sum.add_rational(&term))?;
    Ok(sum.finish(&tail, work))
}

/// Smallest `N` whose tail bound is at most half a unit at `work` places,
/// together with that bound.
fn truncation(series: &LacunarySeries, abs_x: &Rational, work: u32) -> Result<(usize, Rational)> {
    let bound = series
        .coefficients
        .bound()
        .ok_or(Error::UnboundedCoefficients)?;
    let degree = bound.degree;
    let factorial: BigInt = (1..=degree).map(BigInt::from).product();
    let shrink = pow_rational(&(Rational::one() - abs_x), degree + 1);
    let budget = Rational::new(BigInt::one(), pow10(work) * 2u32);

    for n in 0usize.. {
        let growth = Rational::from_integer(BigInt::from(n + 1).pow(degree) * &factorial);
        let factor = &bound.constant * growth / &shrink;
        if factor.is_zero() {
            return Ok((n, Rational::zero()));
        }
        let exponent = series
            .exponents
            .term(n as u64)
            .expect("infinite exponent sequence");
        let factor_digits = decimal_len(factor.ceil().to_integer().to_usize().unwrap_or(usize::MAX));
        let scale = work + 10 + factor_digits;
        let power = pow_upper(abs_x, &exponent, scale);
        let tail = Rational::new(power, pow10(scale)) * factor;
        if tail <= budget {
            return Ok((n, tail));
        }
    }
    unreachable!("unbounded loop over n")
}

/// Upper bound `m` (as `m · 10^-scale`) for `base^exp` with `0 ≤ base < 1`,
/// by square-and-multiply with every intermediate rounded up.
pub(crate) fn pow_upper(base: &Rational, exp: &BigUint, scale: u32) -> BigInt {
    let unit = pow10(scale);
    if exp.is_zero() {
        return unit;
    }
    if base.is_zero() {
        return BigInt::zero();
    }
    let base_up = (base.numer() * &unit).div_ceil(base.denom());
    let mut acc = unit.clone();
    for bit in (0..exp.bits()).rev() {
        acc = (&acc * &acc).div_ceil(&unit);
        if exp.bit(bit) {
            acc = (&acc * &base_up).div_ceil(&unit);
        }
        if acc <= BigInt::one() {
            // ceil keeps a single unit in place from here on
            return BigInt::one();
        }
    }
    acc
}

/// True when the first `probe` exponents have constant differences; such a
/// series is a rational function of `x` in disguise.
pub fn is_arithmetic_progression(exponents: &ExponentSequence, probe: usize) -> bool {
    let terms: Vec<BigUint> = exponents.iter().take(probe.max(3)).collect();
    terms
        .windows(3)
        .all(|w| &w[1] - &w[0] == &w[2] - &w[1])
}

/// The `n`-th triangular number `n(n+1)/2`.
pub fn trigonal_exponent(n: u64) -> u128 {
    let n = u128::from(n);
    n * (n + 1) / 2
}

/// True when `m` is a triangular number, i.e. `8m + 1` is a perfect square.
pub fn is_trigonal(m: u64) -> bool {
    let t = 8 * u128::from(m) + 1;
    let r = t.isqrt();
    r * r == t
}
