//! Scalar backends.
//!
//! Every matrix and vector in the crate is generic over [`Scalar`], which is
//! implemented for exact arbitrary-precision rationals ([`BigRational`]) and
//! IEEE-754 doubles (`f64`). The two backends are never mixed inside one
//! value; [`Number`] is the tagged form used at the I/O boundary.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Numeric backend shared by matrices, vectors and polynomials.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` for the rational backend.
    const EXACT: bool;
    /// Name used in matrix files (`"rational"` or `"float"`).
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// `num / den`; `den` must be non-zero.
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact rational value. Every finite double is a dyadic rational, so this
    /// never loses information for finite inputs.
    fn to_rational(&self) -> Option<BigRational>;
    fn abs(&self) -> Self;
    fn is_zero(&self) -> bool;

    /// Zero test: exact for rationals, `|x| <= tol` for floats.
    fn near_zero(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.to_f64().abs() <= tol
        }
    }

    /// `x >= 0` exactly, or `x >= -tol` for floats.
    fn near_nonneg(&self, tol: f64) -> bool {
        if Self::EXACT {
            *self >= Self::zero()
        } else {
            self.to_f64() >= -tol
        }
    }

    /// `a == b` exactly, or `|a - b| <= tol` for floats.
    fn near_eq(&self, other: &Self, tol: f64) -> bool {
        (self.clone() - other.clone()).near_zero(tol)
    }

    fn into_number(self) -> Number;
    fn from_number(n: &Number) -> Self;
}

/// Which scalar backend a value or file uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Rational,
    Float,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Rational => "rational",
            Backend::Float => "float",
        }
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rational" | "exact" => Ok(Backend::Rational),
            "float" | "f64" => Ok(Backend::Float),
            other => Err(Error::Parse(format!("unknown scalar backend `{other}`"))),
        }
    }
}

impl Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    const BACKEND: Backend = Backend::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn into_number(self) -> Number {
        Number::Rational(self)
    }
    fn from_number(n: &Number) -> Self {
        match n {
            Number::Rational(r) => r.clone(),
            Number::Float(f) => BigRational::from_float(*f).unwrap_or_else(Zero::zero),
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn into_number(self) -> Number {
        Number::Float(self)
    }
    fn from_number(n: &Number) -> Self {
        n.to_f64()
    }
}

/// A parsed scalar literal, tagged with its backend.
#[derive(Debug, Clone, PartialEq)]
pub enum Number {
    Rational(BigRational),
    Float(f64),
}

impl Number {
    pub fn backend(&self) -> Backend {
        match self {
            Number::Rational(_) => Backend::Rational,
            Number::Float(_) => Backend::Float,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Rational(r) => Scalar::to_f64(r),
            Number::Float(f) => *f,
        }
    }
}

impl Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_scalar(self))
    }
}

impl FromStr for Number {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

/// Parses `p/q`, an integer, or a decimal literal.
///
/// Fractions and integers become exact rationals (reduced, positive
/// denominator); anything with a decimal point or exponent becomes a float.
pub fn parse_scalar(text: &str) -> Result<Number> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty scalar literal".into()));
    }
    if let Some((num, den)) = t.split_once('/') {
        let num = parse_int(num)?;
        let den = parse_int(den)?;
        if Zero::is_zero(&den) {
            return Err(Error::Parse(format!("zero denominator in `{t}`")));
        }
        return Ok(Number::Rational(BigRational::new(num, den)));
    }
    if is_integer_literal(t) {
        return Ok(Number::Rational(BigRational::from_integer(parse_int(t)?)));
    }
    if !is_decimal_literal(t) {
        return Err(Error::Parse(format!("malformed scalar literal `{t}`")));
    }
    let v: f64 = t
        .parse()
        .map_err(|_| Error::Parse(format!("malformed scalar literal `{t}`")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("non-finite scalar `{t}`")));
    }
    Ok(Number::Float(v))
}

/// Parses a literal directly into the rational backend. Decimal literals are
/// converted exactly (`"0.1"` becomes `1/10`, not the nearest double).
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    match parse_scalar(t)? {
        Number::Rational(r) => Ok(r),
        Number::Float(_) => parse_decimal_exact(t),
    }
}

/// Parses a literal directly into the float backend.
pub fn parse_float(text: &str) -> Result<f64> {
    Ok(parse_scalar(text)?.to_f64())
}

/// Canonical text form: `p/q` (or `p`) for rationals, shortest round-trip
/// decimal for floats. Float output always carries a `.` or exponent so it
/// re-parses as a float.
pub fn format_scalar(value: &Number) -> String {
    match value {
        Number::Rational(r) => format_rational(r),
        Number::Float(f) => format!("{f:?}"),
    }
}

pub(crate) fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    let s = s.trim();
    if !is_integer_literal(s) {
        return Err(Error::Parse(format!("malformed integer `{s}`")));
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s))
        .map_err(|_| Error::Parse(format!("malformed integer `{s}`")))
}

fn is_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn is_decimal_literal(s: &str) -> bool {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(idx) => (&body[..idx], Some(&body[idx + 1..])),
        None => (body, None),
    };
    let mut parts = mantissa.splitn(2, '.');
    let int_part = parts.next().unwrap_or("");
    let frac_part = parts.next();
    let int_ok = int_part.bytes().all(|b| b.is_ascii_digit());
    let frac_ok = frac_part.is_none_or(|f| f.bytes().all(|b| b.is_ascii_digit()));
    let has_digits = !int_part.is_empty() || frac_part.is_some_and(|f| !f.is_empty());
    let exp_ok = exponent.is_none_or(is_integer_literal);
    let is_decimal = frac_part.is_some() || exponent.is_some();
    int_ok && frac_ok && has_digits && exp_ok && is_decimal
}

fn parse_decimal_exact(s: &str) -> Result<BigRational> {
    let err = || Error::Parse(format!("malformed decimal `{s}`"));
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(idx) => {
            let exp: i64 = body[idx + 1..].parse().map_err(|_| err())?;
            (&body[..idx], exp)
        }
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || exponent.unsigned_abs() > 4096 {
        return Err(err());
    }
    let mut value = BigRational::from_integer(BigInt::from_str(&digits).map_err(|_| err())?);
    let shift = exponent - frac_part.len() as i64;
    let ten = BigRational::from_integer(BigInt::from(10));
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    Ok(if negative { -value } else { value })
}
