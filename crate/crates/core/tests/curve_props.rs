//! Shape of the reciprocal-sum curves.

use lacunary::curves::{eval_curve, poles, value_at_zero, ArgMode, CurveSpec, Signs};
use lacunary::precision::{pow10, Rational};
use lacunary::Error;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn spec() -> impl Strategy<Value = CurveSpec> {
    (2i64..=10, any::<bool>(), any::<bool>()).prop_map(|(a, alt, powered)| {
        let signs = if alt { Signs::Alternating } else { Signs::Uniform };
        let mode = if powered { ArgMode::Powered } else { ArgMode::Fixed };
        CurveSpec::with_integer_base(a, signs, mode).unwrap()
    })
}

fn nonnegative_x() -> impl Strategy<Value = Rational> {
    (0i64..=100_000, 1i64..=100).prop_map(|(n, d)| q(n, d))
}

/// Smallest `K` with `a^K ≥ 2x` for an integer base `a`.
fn doubling_index(a: i64, x: &Rational) -> u32 {
    let mut k = 0;
    let mut p = Rational::one();
    let target = x * q(2, 1);
    while p < target {
        p *= q(a, 1);
        k += 1;
    }
    k
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn uniform_curve_decreases(a in 2i64..=10, x1 in nonnegative_x(), x2 in nonnegative_x()) {
        prop_assume!(x1 != x2);
        let spec = CurveSpec::with_integer_base(a, Signs::Uniform, ArgMode::Fixed).unwrap();
        let (lo, hi) = if x1 < x2 { (x1, x2) } else { (x2, x1) };
        let mut separated = false;
        for digits in [10, 30, 80] {
            let y_lo = eval_curve(&spec, &lo, digits).unwrap();
            let y_hi = eval_curve(&spec, &hi, digits).unwrap();
            prop_assert!(!y_lo.certainly_lt(&y_hi));
            if y_hi.certainly_lt(&y_lo) {
                separated = true;
                break;
            }
        }
        prop_assert!(separated);
    }

    #[test]
    fn decay_bound(a in 2i64..=10, x in (1i64..=1_000_000).prop_map(|n| q(n, 1))) {
        // terms below K contribute at most 1/x each, the rest at most a^-k
        let spec = CurveSpec::with_integer_base(a, Signs::Uniform, ArgMode::Fixed).unwrap();
        let k = doubling_index(a, &x);
        let a_k = Rational::from_integer(num_bigint::BigInt::from(a).pow(k));
        let bound = q(k as i64, 1) / &x + q(a, 1) / (a_k * q(a - 1, 1));
        let y = eval_curve(&spec, &x, 20).unwrap();
        prop_assert!(y.upper() <= bound);
        prop_assert!(y.lower().is_positive());
    }

    #[test]
    fn alternating_below_uniform(a in 2i64..=10, x in nonnegative_x()) {
        let uniform = CurveSpec::with_integer_base(a, Signs::Uniform, ArgMode::Fixed).unwrap();
        let alt = CurveSpec::with_integer_base(a, Signs::Alternating, ArgMode::Fixed).unwrap();
        let u = eval_curve(&uniform, &x, 30).unwrap();
        let v = eval_curve(&alt, &x, 30).unwrap();
        prop_assert!(v.certainly_lt(&u));
    }

    #[test]
    fn zero_matches_closed_form(c in spec(), digits in 1u32..60) {
        let y = eval_curve(&c, &Rational::zero(), digits).unwrap();
        prop_assert!(y.contains(&value_at_zero(&c)));
        prop_assert!(*y.error() <= Rational::new(1.into(), pow10(digits)));
    }

    #[test]
    fn refinement_is_consistent(c in spec(), n in -5000i64..=5000, d in 1i64..=50, digits in 1u32..40) {
        let x = q(n, d);
        prop_assume!(c.pole_index(&x).is_none());
        let coarse = eval_curve(&c, &x, digits).unwrap();
        let fine = eval_curve(&c, &x, digits + 15).unwrap();
        prop_assert!(fine.within(&coarse, coarse.error()));
        prop_assert!(coarse.contains(&fine.value()));
    }
}

#[test]
fn poles_are_reported() {
    let c = CurveSpec::with_integer_base(3, Signs::Uniform, ArgMode::Fixed).unwrap();
    for (k, p) in poles(&c, 5).iter().enumerate() {
        assert_eq!(c.pole_index(p), Some(k as u64));
        assert!(matches!(eval_curve(&c, p, 5), Err(Error::Pole { index, .. }) if index == k as u64));
    }
}

#[test]
fn blow_up_near_poles() {
    let c = CurveSpec::with_integer_base(2, Signs::Uniform, ArgMode::Fixed).unwrap();
    for j in 3..=8u32 {
        let eps = Rational::new(1.into(), pow10(j));
        let floor = Rational::from_integer(pow10(j - 1));
        for x in [q(-2, 1) + &eps, q(-2, 1) - &eps] {
            let y = eval_curve(&c, &x, 10).unwrap();
            let magnitude = if y.lower().is_positive() { y.lower() } else { -y.upper() };
            assert!(magnitude > floor, "x = {x}");
        }
    }
}
