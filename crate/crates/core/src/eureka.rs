//! Truncated integer power series and the cube of `1 + x + x^3 + x^6 + ...`.
//!
//! The coefficient of `x^n` in the cube counts the ordered triples of
//! triangular numbers summing to `n`. Every coefficient being positive is
//! exactly the statement that each `n` is a sum of three triangular numbers;
//! [`verify_three_trigonal`] checks this up to a bound and reports what it
//! finds rather than assuming it.

use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::precision::Rational;
use crate::series::{is_trigonal, trigonal_exponent};

/// Dense power series `c_0 + c_1 x + ... + c_N x^N + O(x^(N+1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolySeries {
    coefficients: Vec<BigInt>,
}

impl IntPolySeries {
    pub fn zero(degree: usize) -> Self {
        Self {
            coefficients: vec![BigInt::zero(); degree + 1],
        }
    }

    /// Panics on an empty list: a truncated series keeps at least `c_0`.
    pub fn from_coefficients(coefficients: Vec<BigInt>) -> Self {
        assert!(!coefficients.is_empty(), "a series has at least one coefficient");
        Self { coefficients }
    }

    pub fn truncation_degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coefficients[n]
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// Exact value of the truncated polynomial at `x` (Horner).
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    /// Cauchy product truncated at the smaller of the two degrees.
    pub fn multiply(&self, other: &Self) -> Self {
        let degree = self.truncation_degree().min(other.truncation_degree());
        let mut out = Self::zero(degree);
        for (i, a) in self.coefficients.iter().enumerate().take(degree + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients[..=degree - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coefficients[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl Mul for &IntPolySeries {
    type Output = IntPolySeries;

    fn mul(self, rhs: Self) -> IntPolySeries {
        self.multiply(rhs)
    }
}

/// `1 + x + x^3 + x^6 + ...` truncated at degree `degree`.
pub fn trigonal_gf(degree: usize) -> IntPolySeries {
    let mut out = IntPolySeries::zero(degree);
    for m in (0u64..)
        .map(trigonal_exponent)
        .take_while(|&t| t <= degree as u128)
    {
        out.coefficients[m as usize] = BigInt::one();
    }
    out
}

pub fn cube_trigonal(degree: usize) -> IntPolySeries {
    let t = trigonal_gf(degree);
    &(&t * &t) * &t
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checked: u64,
    pub failures: Vec<u64>,
}

impl VerificationReport {
    /// Zero coefficients of a cube series, i.e. `n` with no representation.
    pub fn from_cube(cube: &IntPolySeries) -> Self {
        let failures = cube
            .coefficients()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_zero())
            .map(|(n, _)| n as u64)
            .collect();
        Self {
            checked: cube.coefficients().len() as u64,
            failures,
        }
    }

    pub fn all_represented(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check every `n ≤ bound` for a representation as a sum of three
/// triangular numbers.
pub fn verify_three_trigonal(bound: usize) -> VerificationReport {
    VerificationReport::from_cube(&cube_trigonal(bound))
}

/// Coefficient of `x^n` in the cube, as a machine integer.
pub fn r3(n: usize) -> u64 {
    cube_trigonal(n)
        .coeff(n)
        .to_u64()
        .expect("r3 fits in u64")
}

/// Ordered triples of triangular numbers summing to `n`, by direct search.
pub fn oracle_r3(n: u64) -> u64 {
    let trigonals: Vec<u64> = (0u64..)
        .map(|i| i * (i + 1) / 2)
        .take_while(|&t| t <= n)
        .collect();
    let mut count = 0;
    for &a in &trigonals {
        for &b in trigonals.iter().take_while(|&&b| a + b <= n) {
            if is_trigonal(n - a - b) {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(cs: &[i64]) -> IntPolySeries {
        IntPolySeries::from_coefficients(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Ordered triples by enumerating every index triple.
    fn enumerate_triples(n: u64) -> u64 {
        let t: Vec<u64> = (0..=n).map(|i| i * (i + 1) / 2).filter(|&t| t <= n).collect();
        let mut count = 0;
        for a in &t {
            for b in &t {
                for c in &t {
                    if a + b + c == n {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn generating_function() {
        assert_eq!(trigonal_gf(6), series(&[1, 1, 0, 1, 0, 0, 1]));
        assert_eq!(trigonal_gf(0), series(&[1]));
        let ones: Vec<usize> = trigonal_gf(21)
            .coefficients()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_one())
            .map(|(i, _)| i)
            .collect();
        assert_eq!(ones, [0, 1, 3, 6, 10, 15, 21]);
    }

    #[test]
    fn multiplication() {
        assert_eq!(&series(&[1, 1]) * &series(&[1, 1]), series(&[1, 2]));
        assert_eq!(
            &series(&[1, 1, 0]) * &series(&[1, 1, 0]),
            series(&[1, 2, 1])
        );
        let p = series(&[3, -1, 4, 1]);
        assert_eq!(&p * &series(&[1, 0, 0, 0]), p);
        assert_eq!(&p * &series(&[1]), series(&[3]));
        let square = &trigonal_gf(10) * &trigonal_gf(10);
        assert_eq!(*square.coeff(2), BigInt::from(1));
    }

    #[test]
    fn small_cube_coefficients() {
        let cube = cube_trigonal(12);
        assert_eq!(*cube.coeff(0), BigInt::from(1));
        assert_eq!(*cube.coeff(3), BigInt::from(4));
        assert_eq!(enumerate_triples(3), 4);
        for n in 0..=12u64 {
            assert_eq!(cube.coeff(n as usize).to_u64().unwrap(), enumerate_triples(n), "n = {n}");
        }
    }

    #[test]
    fn oracle_values() {
        assert_eq!(oracle_r3(0), 1);
        assert_eq!(oracle_r3(1), 3);
        assert_eq!(oracle_r3(5), enumerate_triples(5));
        assert_eq!(oracle_r3(6), r3(6));
        for n in 0..60 {
            assert_eq!(oracle_r3(n), enumerate_triples(n));
        }
    }

    #[test]
    fn verification_reports() {
        let r = verify_three_trigonal(0);
        assert_eq!(r, VerificationReport { checked: 1, failures: vec![] });
        let r = verify_three_trigonal(100);
        assert_eq!(r.checked, 101);
        assert!(r.all_represented());
    }

    #[test]
    fn report_lists_missing_coefficients() {
        // squares of the generating function miss e.g. n = 5 (5 is not T_a + T_b)
        let t = trigonal_gf(12);
        let r = VerificationReport::from_cube(&(&t * &t));
        assert!(r.failures.contains(&5));
        for n in &r.failures {
            let reps = (0..=*n).filter(|&a| is_trigonal(a) && is_trigonal(n - a)).count();
            assert_eq!(reps, 0);
        }
    }

    #[test]
    fn horner_evaluation() {
        let p = series(&[1, 2, 3]);
        assert_eq!(p.eval(&Rational::new(1.into(), 2.into())), Rational::new(11.into(), 4.into()));
    }
}
