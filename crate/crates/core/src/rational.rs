// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact probabilities.
//!
//! Probabilities are [`num::BigRational`]s, always in lowest terms with a
//! positive denominator. Text input accepts decimal literals (`"0.35"`),
//! fractions (`"7/20"`) and integers; parsing never goes through floating
//! point.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_usize(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"3/10"`, `"0.3"`, `".3"`, `"1"` or `"-2.5"` exactly.
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::parse("empty number"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_integer(num.trim(), text)?;
        let den = parse_integer(den.trim(), text)?;
        if den.is_zero() {
            return Err(Error::parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::parse(format!("not a number: {text:?}")));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(Error::parse(format!("not a number: {text:?}")));
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits
            .parse()
            .map_err(|_| Error::parse(format!("not a number: {text:?}")))?
    };
    let denom = num::pow(BigInt::from(10u32), frac_part.len());
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn parse_integer(s: &str, whole: &str) -> Result<BigInt> {
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::parse(format!("not a number: {whole:?}")));
    }
    s.parse().map_err(|_| Error::parse(format!("not a number: {whole:?}")))
}

/// Canonical fraction text: `"19/32"`, `"1"`, `"0"`.
pub fn to_fraction_string(r: &Rational) -> String {
    r.to_string()
}

/// Decimal rendering rounded half away from zero to `digits` places, with
/// trailing zeros removed (`19/50` → `"0.38"`).
pub fn to_decimal_string(r: &Rational, digits: usize) -> String {
    let scale = num::pow(BigInt::from(10u32), digits);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut units = q;
    if rem * BigInt::from(2u32) >= *scaled.denom() {
        units += 1;
    }
    let (int_part, frac_part) = units.div_rem(&scale);
    let mut frac = format!("{:0>width$}", frac_part.to_string(), width = digits);
    while frac.ends_with('0') {
        frac.pop();
    }
    let sign = if r.is_negative() && !(int_part.is_zero() && frac.is_empty()) {
        "-"
    } else {
        ""
    };
    if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn is_probability(r: &Rational) -> bool {
    r.numer().sign() != Sign::Minus && r <= &one()
}

/// True for 0 < p < 1.
pub fn is_uncertain(r: &Rational) -> bool {
    r.is_positive() && r < &one()
}
