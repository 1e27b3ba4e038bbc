//! Small helpers for exact rational scalars.
//!
//! Depths, support points, and levels throughout the crate are
//! [`BigRational`] values. This module centralizes parsing, formatting,
//! and the exact `f64` conversions the other modules share.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational `{input}`: {reason}")]
pub struct RationalParseError {
    pub input: String,
    pub reason: String,
}

/// Canonical rendering: `p` when the denominator is one, else `p/q`.
pub fn fmt(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, or a plain decimal such as `2.5` (kept exact).
pub fn parse(s: &str) -> Result<BigRational, RationalParseError> {
    let err = |reason: &str| RationalParseError {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err("empty string"));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = den.trim().parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let sign = if int.trim_start().starts_with('-') {
            -1
        } else {
            1
        };
        let i: BigInt = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| err("bad integer part"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("bad fractional part"));
        }
        let f: BigInt = frac.parse().map_err(|_| err("bad fractional part"))?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let whole = BigRational::from_integer(i);
        let part = BigRational::new(f, scale);
        return Ok(if sign < 0 { whole - part } else { whole + part });
    }
    let n: BigInt = t.parse().map_err(|_| err("bad integer"))?;
    Ok(BigRational::from_integer(n))
}

/// Rational from two machine integers.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Nearest `f64`. Our rationals come from small integers, so this never
/// hits the overflow path of the underlying conversion in practice.
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational value of a finite `f64`.
pub fn from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}
