//! Exact rational helpers: literal parsing, decimal rendering and the
//! fixed-denominator rounding used by iterative semantics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseRationalError;

pub type Rational = BigRational;

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn pow10(exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), exp as usize)
}

/// Parses `p/q`, an integer, or a plain decimal such as `0.7` or `-.25`.
/// Decimals are converted exactly (`0.7` is `7/10`).
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let invalid = || ParseRationalError::Invalid(text.to_string());
    if let Some((p, q)) = text.split_once('/') {
        let numer: BigInt = p.trim().parse().map_err(|_| invalid())?;
        let denom: BigInt = q.trim().parse().map_err(|_| invalid())?;
        if denom.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(text.to_string()));
        }
        return Ok(Rational::new(numer, denom));
    }
    let (negative, digits) = match text.as_bytes()[0] {
        b'-' => (true, &text[1..]),
        b'+' => (false, &text[1..]),
        _ => (false, text),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(invalid());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(invalid());
    }
    let mut numer: BigInt = if whole.is_empty() {
        BigInt::zero()
    } else {
        whole.parse().map_err(|_| invalid())?
    };
    let scale = pow10(frac.len() as u32);
    numer *= &scale;
    if !frac.is_empty() {
        numer += frac.parse::<BigInt>().map_err(|_| invalid())?;
    }
    if negative {
        numer = -numer;
    }
    Ok(Rational::new(numer, scale))
}

/// Rounds half away from zero to `digits` decimal places.
pub fn format_decimal(value: &Rational, digits: u32) -> String {
    let scale = pow10(digits);
    let scaled = value * Rational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let negative = rounded.is_negative();
    let (whole, frac) = rounded.abs().div_rem(&scale);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{whole}");
    }
    format!(
        "{sign}{whole}.{frac:0>width$}",
        frac = frac.to_string(),
        width = digits as usize
    )
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Floors `value` onto the grid `1/denom` when its own denominator is larger
/// than `denom`; values already on a coarser grid are returned unchanged.
pub fn floor_to_denominator(value: Rational, denom: &BigInt) -> Rational {
    if value.denom() <= denom {
        return value;
    }
    let grid = Rational::from_integer(denom.clone());
    Rational::new((value * &grid).floor().to_integer(), denom.clone())
}

pub fn in_unit_interval(value: &Rational) -> bool {
    !value.is_negative() && *value <= Rational::one()
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// `value * denom` as an integer; `denom` must be a multiple of the value's denominator.
pub fn scale_to_integer(value: &Rational, denom: &BigInt) -> BigInt {
    debug_assert!((denom % value.denom()).is_zero());
    value.numer() * (denom / value.denom())
}
