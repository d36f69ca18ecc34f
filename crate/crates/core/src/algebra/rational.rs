use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn invert(v: &Rational) -> Result<Rational> {
    if v.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(v.recip())
    }
}

/// `base^exp` for a signed exponent, with `0^0 = 1`.
pub fn rational_pow(base: &Rational, exp: i32) -> Result<Rational> {
    if exp >= 0 {
        Ok(num_traits::pow(base.clone(), exp as usize))
    } else {
        Ok(num_traits::pow(invert(base)?, exp.unsigned_abs() as usize))
    }
}

/// `Some(n)` when the value is an integer.
pub fn to_integer(v: &Rational) -> Option<BigInt> {
    v.is_integer().then(|| v.to_integer())
}

/// Accepts `"a"`, `"a/b"` and `"-a/b"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::param(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(v: &Rational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}
