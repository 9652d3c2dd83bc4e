//! Exact rational scalars: parsing, fractional parts, and the first periodic
//! Bernoulli function.
//!
//! All values are `num_rational::BigRational`, which stores fractions in
//! lowest terms with a positive denominator, so equality of values is
//! structural equality.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Shorthand for a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Fractional part `{x}`, the unique representative of `x` in `[0, 1)`.
pub fn fract(x: &Rational) -> Rational {
    x - x.floor()
}

/// First periodic Bernoulli function: `{x} - 1/2` off the integers, `0` on them.
///
/// Odd modulo 1: `b1(-x) = -b1(x)` for every rational `x`.
pub fn b1(x: &Rational) -> Rational {
    if is_integer(x) {
        Rational::zero()
    } else {
        fract(x) - rat(1, 2)
    }
}

/// Parses `"p/q"`, `"p"`, or `"-p/q"` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse rational from {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Formats as `"p/q"`, or `"p"` when the value is an integer.
pub fn format_rational(x: &Rational) -> String {
    if is_integer(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    let n = x.numer();
    let d = x.denom();
    // Values in this crate have small numerators and denominators; fall back
    // to a lossy string conversion only for pathological sizes.
    match (i128::try_from(n.clone()), i128::try_from(d.clone())) {
        (Ok(n), Ok(d)) => n as f64 / d as f64,
        _ => {
            x.numer().to_string().parse::<f64>().unwrap()
                / x.denom().to_string().parse::<f64>().unwrap()
        }
    }
}

/// `e(x) = exp(2 pi i x)` evaluated from an exact angle.
pub fn unit_circle(angle: &Rational) -> num_complex::Complex64 {
    let t = 2.0 * std::f64::consts::PI * to_f64(&fract(angle));
    num_complex::Complex64::new(t.cos(), t.sin())
}

pub fn sum_is_integer(x: &Rational, y: &Rational) -> bool {
    is_integer(&(x + y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    #[test]
    fn b1_on_integers_and_half() {
        assert!(b1(&rat_int(0)).is_zero());
        assert!(b1(&rat_int(7)).is_zero());
        assert!(b1(&rat(-3, 1)).is_zero());
        assert!(b1(&rat(1, 2)).is_zero());
    }

    #[test]
    fn b1_third() {
        assert_eq!(b1(&rat(1, 3)), rat(-1, 6));
        assert_eq!(b1(&rat(-1, 3)), rat(1, 6));
    }

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["3/4", "-3/4", "5", "-5", "7/1"] {
            let x = parse_rational(s).unwrap();
            assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    proptest! {
        #[test]
        fn b1_is_odd(n in -200i64..200, d in 1i64..50) {
            let x = rat(n, d);
            prop_assert!((b1(&x) + b1(&-&x)).is_zero());
        }

        #[test]
        fn fract_complement(n in -200i64..200, d in 1i64..50) {
            let x = rat(n, d);
            let s = fract(&x) + fract(&(rat_int(1) - &x));
            if is_integer(&x) {
                prop_assert!(s.is_zero());
            } else {
                prop_assert_eq!(s, rat_int(1));
            }
        }
    }
}
