//! Exact rational numbers.
//!
//! Every probability, cumulative value and copula evaluation in the crate is a
//! [`Rational`]: an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. Decimal literals are parsed losslessly, so `"0.20"`
//! becomes `1/5`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `num / den` as a rational. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"a/b"`, an integer, or a finite decimal such as `"-0.35"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = parse_integer(num.trim()).ok_or_else(bad)?;
        let den: BigInt = parse_integer(den.trim()).ok_or_else(bad)?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits_ok = |d: &str| d.bytes().all(|b| b.is_ascii_digit());
    if !digits_ok(whole) || !digits_ok(frac) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let denom = num_traits::pow(BigInt::from(10u8), frac.len());
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let unsigned = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if unsigned.is_empty() || !unsigned.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical exact form: `"7/20"`, `"0"`, `"-3"`.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Decimal rendering for display. Terminating fractions are printed exactly;
/// everything else is rounded half-away-from-zero to `places` digits and
/// prefixed with `~`.
pub fn format_decimal(value: &Rational, places: usize) -> String {
    let negative = value.is_negative();
    let magnitude = value.abs();
    let scale = num_traits::pow(BigInt::from(10u8), places);
    let scaled = magnitude.numer() * &scale;
    let (quot, rem) = scaled.div_rem(magnitude.denom());
    let exact = rem.is_zero();
    let rounded = if !exact && (&rem * 2u8) >= *magnitude.denom() {
        quot + 1u8
    } else {
        quot
    };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let mut frac = format!("{:0>width$}", frac_part.to_string(), width = places);
    while frac.ends_with('0') {
        frac.pop();
    }
    let sign = if negative && !(int_part.is_zero() && frac.is_empty()) {
        "-"
    } else {
        ""
    };
    let body = if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    };
    if exact {
        body
    } else {
        format!("~{body}")
    }
}

pub fn in_unit_interval(value: &Rational) -> bool {
    !value.is_negative() && *value <= one()
}
