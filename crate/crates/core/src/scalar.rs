// SPDX-License-Identifier: Apache-2.0

//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All algorithms are written against [`Scalar`]. Exactness is a property
//! of the chosen type: [`Rational`] (arbitrary precision) and the
//! fixed-width [`num_rational::Ratio`] types give exact answers, `f64`
//! gives fast approximations for exploration only.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational used by all exact entry points.
pub type Rational = BigRational;

/// Numeric field the algorithms are generic over.
pub trait Scalar:
    Num + Signed + FromPrimitive + Clone + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn from_count(count: u64) -> Self {
        Self::from_u64(count).expect("count representable in scalar type")
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_i64(numer).expect("numerator representable")
            / Self::from_i64(denom).expect("denominator representable")
    }
}

impl<T> Scalar for T where
    T: Num + Signed + FromPrimitive + Clone + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

/// `numer / denom` as a [`Rational`].
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer as a [`Rational`].
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `p`, `-p` or `p/r`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let parsed = match text.split_once('/') {
        Some((numer, denom)) => {
            let numer: BigInt = numer.trim().parse().map_err(|_| bad_rational(text))?;
            let denom: BigInt = denom.trim().parse().map_err(|_| bad_rational(text))?;
            if denom.is_zero() {
                return Err(bad_rational(text));
            }
            Rational::new(numer, denom)
        }
        None => Rational::from_integer(text.parse().map_err(|_| bad_rational(text))?),
    };
    Ok(parsed)
}

fn bad_rational(text: &str) -> Error {
    Error::Parse(format!("not a rational number: {text:?}"))
}

/// Converts an exact rational into another scalar type.
///
/// Fixed-width targets must be able to hold numerator and denominator.
pub fn convert<T: Scalar>(value: &Rational) -> T {
    let numer = T::from_bigint_parts(value.numer());
    let denom = T::from_bigint_parts(value.denom());
    numer / denom
}

trait FromBigInt: Sized {
    fn from_bigint_parts(value: &BigInt) -> Self;
}

impl<T: Scalar> FromBigInt for T {
    fn from_bigint_parts(value: &BigInt) -> Self {
        if let Some(small) = value.to_i64() {
            return T::from_i64(small).expect("integer representable");
        }
        // Horner over base 2^32 keeps this independent of T's width.
        let (sign, digits) = value.to_u32_digits();
        let base = T::from_u64(1 << 32).expect("2^32 representable");
        let mut acc = T::zero();
        for digit in digits.iter().rev() {
            acc = acc * base.clone() + T::from_u32(*digit).expect("digit representable");
        }
        if sign == num_bigint::Sign::Minus {
            -acc
        } else {
            acc
        }
    }
}

/// Exact decimal expansion truncated towards zero after `digits` places.
pub fn to_decimal(value: &Rational, digits: usize) -> String {
    let negative = value.is_negative();
    let numer = value.numer().abs();
    let denom = value.denom().clone();
    let (whole, mut rem) = numer.div_rem(&denom);
    let mut out = String::new();
    if negative && !(whole.is_zero() && rem.is_zero()) {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if digits > 0 {
        out.push('.');
        let ten = BigInt::from(10);
        for _ in 0..digits {
            rem *= &ten;
            let (digit, next) = rem.div_rem(&denom);
            out.push_str(&digit.to_string());
            rem = next;
        }
    }
    out
}

/// Smallest integer `>= value`.
pub fn ceil_to_int(value: &Rational) -> BigInt {
    value.ceil().to_integer()
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()))
}

/// The same rational as a fixed-width ratio when it fits.
pub fn to_ratio_i64(value: &Rational) -> Option<Ratio<i64>> {
    Some(Ratio::new(value.numer().to_i64()?, value.denom().to_i64()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-1/3").unwrap(), rat(-1, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn decimal_expansion_is_truncated_exactly() {
        assert_eq!(to_decimal(&rat(7, 9), 5), "0.77777");
        assert_eq!(to_decimal(&rat(-1, 8), 4), "-0.1250");
        assert_eq!(to_decimal(&int(2), 0), "2");
    }

    #[test]
    fn converts_between_scalar_types() {
        let x = rat(7, 9);
        let f: f64 = convert(&x);
        assert!((f - 7.0 / 9.0).abs() < 1e-15);
        let r: Ratio<i64> = convert(&x);
        assert_eq!(r, Ratio::new(7, 9));
        let big = Rational::from_integer(BigInt::from(1u64 << 40) * BigInt::from(3));
        let f: f64 = convert(&big);
        assert_eq!(f, 3.0 * (1u64 << 40) as f64);
    }

    #[test]
    fn common_denominator_is_lcm() {
        let xs = [rat(1, 4), rat(5, 6), int(2)];
        assert_eq!(common_denominator(xs.iter()), BigInt::from(12));
    }
}
