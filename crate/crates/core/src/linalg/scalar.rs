//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact rational number in canonical reduced form.
pub type Scalar = BigRational;

#[inline]
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

#[inline]
pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[inline]
pub fn zero() -> Scalar {
    Scalar::zero()
}

#[inline]
pub fn one() -> Scalar {
    Scalar::one()
}

/// `1/n!`
pub fn inv_factorial(n: usize) -> Scalar {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= BigInt::from(k);
    }
    BigRational::new(BigInt::one(), f)
}

/// Parses `"3"`, `"-2/5"` or a plain integer.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Canonical text form: `"3"` or `"-2/5"`.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Reads a scalar from JSON: integers, `"p/q"` strings or `[num, den]` pairs.
pub fn scalar_from_json(v: &serde_json::Value) -> Result<Scalar> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(int(i))
            } else {
                parse_scalar(&n.to_string())
            }
        }
        serde_json::Value::String(s) => parse_scalar(s),
        serde_json::Value::Array(a) if a.len() == 2 => {
            let n = scalar_from_json(&a[0])?;
            let d = scalar_from_json(&a[1])?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(n / d)
        }
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

pub fn scalar_to_json(x: &Scalar) -> serde_json::Value {
    if x.is_integer() && x.numer().bits() < 53 {
        serde_json::Value::from(x.numer().to_string().parse::<i64>().unwrap())
    } else {
        serde_json::Value::String(format_scalar(x))
    }
}

/// `(-1)^n` as a scalar.
#[inline]
pub fn sign(n: i64) -> Scalar {
    if n.rem_euclid(2) == 0 {
        one()
    } else {
        -one()
    }
}

pub fn is_negative(x: &Scalar) -> bool {
    x.is_negative()
}
