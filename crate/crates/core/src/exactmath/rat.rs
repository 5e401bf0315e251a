//! Arbitrary-precision rationals.
//!
//! `Rat` is `num_rational::BigRational`, which already maintains the
//! invariants we need: the denominator is positive, numerator and denominator
//! are coprime, and zero is canonically `0/1`.  This module adds the
//! string forms used throughout the JSON interfaces ("p/q", integers plain).

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Shorthand for small rational constants.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parse "p/q" or "p" into a rational.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid integer {t:?}")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(num, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Render a rational as "p/q", or "p" when the denominator is one.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal expansion of a rational with `digits` fractional digits, rounded
/// half away from zero.
pub fn rat_to_decimal(r: &Rat, digits: usize) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = r.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    // round(|r| * 10^digits)
    let scaled = abs * Rat::from_integer(scale.clone());
    let (q, rem) = (
        scaled.numer() / scaled.denom(),
        scaled.numer() % scaled.denom(),
    );
    let rounded = if &rem * 2 >= *scaled.denom() { q + 1 } else { q };
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac:0>width$}", frac = frac_part, width = digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(rat_to_string(&rat_from_str("3/6").unwrap()), "1/2");
        assert_eq!(rat_to_string(&rat_from_str("-4/2").unwrap()), "-2");
        assert_eq!(rat_to_string(&rat_from_str(" 7 ").unwrap()), "7");
        assert_eq!(rat_to_string(&rat_from_str("5/-10").unwrap()), "-1/2");
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("a").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rat_to_decimal(&rat(1, 2), 3), "0.500");
        assert_eq!(rat_to_decimal(&rat(-1, 3), 4), "-0.3333");
        assert_eq!(rat_to_decimal(&rat(2, 3), 4), "0.6667");
        assert_eq!(rat_to_decimal(&rat(3, 1), 2), "3.00");
    }
}
