//! The constant `Σ_{n≥1} 1/(2^n - 1) = 1.6066951524...` by three independent routes.
//!
//! * **direct**: sum `1/(2^n - 1)` for `n = 1..N`. Since `1/(2^n - 1) ≤ 2·2^-n`,
//!   the tail after `N` is at most `2·2^-N`.
//! * **theta**: expanding each term as a geometric series gives the double sum
//!   `Σ_{m,n≥1} 2^-(mn)`. Grouping the lattice points by `n - m = ±k` gives
//!   `Θ_0 + 2 Σ_{k≥1} Θ_k` with `Θ_k = Σ_{x≥1} 2^-(x² + kx)`. Successive terms
//!   of `Θ_k` shrink by at least a factor 8, so `Θ_k ≤ 2^-k` and an inner tail
//!   is at most twice its first omitted term. The outer tail after `K` is at
//!   most `2 Σ_{k>K} 2^-k = 2·2^-K`.
//! * **divisor**: grouping the same double sum by `N = mn` gives
//!   `Σ_{N≥1} d(N) 2^-N`. With `d(N) ≤ N`,
//!   `Σ_{N>M} d(N) 2^-N ≤ Σ_{N>M} N 2^-N = (M + 2)·2^-M`.
//!
//! Each route spends half of its `10^-w` budget (`w` = digits + guard) on
//! truncation and half on per-term rounding.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::precision::{pow10, CertifiedDecimal, FixedSum, Rational, GUARD_DIGITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EbMethod {
    Direct,
    Theta,
    Divisor,
}

impl EbMethod {
    pub const ALL: [EbMethod; 3] = [EbMethod::Direct, EbMethod::Theta, EbMethod::Divisor];

    pub fn name(self) -> &'static str {
        match self {
            EbMethod::Direct => "direct",
            EbMethod::Theta => "theta",
            EbMethod::Divisor => "divisor",
        }
    }
}

impl fmt::Display for EbMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EbMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(EbMethod::Direct),
            "theta" => Ok(EbMethod::Theta),
            "divisor" => Ok(EbMethod::Divisor),
            _ => Err(Error::parse(s, "expected direct, theta or divisor")),
        }
    }
}

/// Result of one route together with its work counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EbEvaluation {
    pub method: EbMethod,
    pub value: CertifiedDecimal,
    /// Terms summed in total.
    pub terms: usize,
    /// Longest single inner sum (equals `terms` for the one-level routes).
    pub max_inner_terms: usize,
}

pub fn eb(method: EbMethod, digits: u32) -> CertifiedDecimal {
    eb_with_stats(method, digits).value
}

pub fn eb_with_stats(method: EbMethod, digits: u32) -> EbEvaluation {
    match method {
        EbMethod::Direct => direct(digits),
        EbMethod::Theta => theta(digits),
        EbMethod::Divisor => divisor(digits),
    }
}

pub fn eb_direct(digits: u32) -> CertifiedDecimal {
    direct(digits).value
}

pub fn eb_theta(digits: u32) -> CertifiedDecimal {
    theta(digits).value
}

pub fn eb_divisor(digits: u32) -> CertifiedDecimal {
    divisor(digits).value
}

fn two_pow(e: u64) -> BigInt {
    BigInt::one() << e
}

/// `2^-e` as an exact rational.
fn inv_two_pow(e: u64) -> Rational {
    Rational::new(BigInt::one(), two_pow(e))
}

/// Smallest `n` with `2^n ≥ target`.
fn log2_ceil(target: &BigInt) -> u64 {
    let bits = target.bits();
    if two_pow(bits - 1) == *target {
        bits - 1
    } else {
        bits
    }
}

fn direct(digits: u32) -> EbEvaluation {
    let work = digits + GUARD_DIGITS;
    // 2·2^-N ≤ 10^-w / 2  <=>  2^N ≥ 4·10^w
    let n_max = log2_ceil(&(pow10(work) * 4u32));
    let tail = inv_two_pow(n_max - 1);

    let mut sum = FixedSum::new(FixedSum::scale_for(work, n_max as usize));
    for n in 1..=n_max {
        let denominator = two_pow(n) - 1u32;
        sum.add_rational(&Rational::new(BigInt::one(), denominator));
    }
    let terms = sum.terms();
    EbEvaluation {
        method: EbMethod::Direct,
        value: sum.finish(&tail, work),
        terms,
        max_inner_terms: terms,
    }
}

/// Number of `x ≥ 1` with `x² + kx < limit`.
fn inner_count(k: u64, limit: u64) -> u64 {
    let mut x = 0;
    while (x + 1) * (x + 1) + k * (x + 1) < limit {
        x += 1;
    }
    x
}

fn theta(digits: u32) -> EbEvaluation {
    let work = digits + GUARD_DIGITS;
    let budget_scale = pow10(work);
    // outer tail 2·2^-K ≤ 10^-w / 4  <=>  2^K ≥ 8·10^w
    let k_max = log2_ceil(&(&budget_scale * 8u32));
    // each of the K+1 inner tails, doubled for k ≥ 1, is at most
    // 4·2^-(x²+kx) for the first omitted x; keep it below 10^-w / (4(K+1)).
    let limit = log2_ceil(&(&budget_scale * 16u32 * (k_max + 1)));

    let counts: Vec<u64> = (0..=k_max).map(|k| inner_count(k, limit)).collect();
    let total: u64 = counts.iter().sum();
    let max_inner = counts.iter().copied().max().unwrap_or(0);

    let mut sum = FixedSum::new(FixedSum::scale_for(work, total as usize));
    let mut tail = Rational::from_integer(2.into()) * inv_two_pow(k_max);
    for (k, &count) in counts.iter().enumerate() {
        let k = k as u64;
        let weight: u64 = if k == 0 { 1 } else { 2 };
        for x in 1..=count {
            sum.add_rational(&(Rational::from_integer(weight.into()) * inv_two_pow(x * x + k * x)));
        }
        let next = count + 1;
        tail += Rational::from_integer((2 * weight).into()) * inv_two_pow(next * next + k * next);
    }
    EbEvaluation {
        method: EbMethod::Theta,
        value: sum.finish(&tail, work),
        terms: total as usize,
        max_inner_terms: max_inner as usize,
    }
}

/// `Θ_k = Σ_{x≥1} 2^-(x² + kx)` to `digits` places.
pub fn theta_component(k: u64, digits: u32) -> CertifiedDecimal {
    let work = digits + GUARD_DIGITS;
    let limit = log2_ceil(&(pow10(work) * 4u32));
    let count = inner_count(k, limit);
    let mut sum = FixedSum::new(FixedSum::scale_for(work, count as usize));
    for x in 1..=count {
        sum.add_rational(&inv_two_pow(x * x + k * x));
    }
    let next = count + 1;
    let tail = Rational::from_integer(2.into()) * inv_two_pow(next * next + k * next);
    sum.finish(&tail, work)
}

/// Number of divisors of `n` (`n ≥ 1`) by trial division up to `√n`.
pub fn divisor_count(n: u64) -> u64 {
    assert!(n >= 1, "divisor_count needs n ≥ 1");
    let mut count = 0;
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            count += if d * d == n { 1 } else { 2 };
        }
        d += 1;
    }
    count
}

fn divisor(digits: u32) -> EbEvaluation {
    let work = digits + GUARD_DIGITS;
    // (M + 2)·2^-M ≤ 10^-w / 2
    let half_budget = Rational::new(BigInt::one(), pow10(work) * 2u32);
    let mut m = log2_ceil(&pow10(work));
    let tail_at = |m: u64| Rational::from_integer((m + 2).into()) * inv_two_pow(m);
    while tail_at(m) > half_budget {
        m += 1;
    }

    let mut sum = FixedSum::new(FixedSum::scale_for(work, m as usize));
    for n in 1..=m {
        let d = divisor_count(n);
        sum.add_rational(&(Rational::from_integer(d.into()) * inv_two_pow(n)));
    }
    let terms = sum.terms();
    EbEvaluation {
        method: EbMethod::Divisor,
        value: sum.finish(&tail_at(m), work),
        terms,
        max_inner_terms: terms,
    }
}
