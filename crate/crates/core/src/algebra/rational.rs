//! Arbitrary-precision rational numbers.
//!
//! `Rat` is `num_rational::BigRational`, which already maintains the
//! invariants we need: numerator and denominator coprime, denominator
//! positive, zero stored as 0/1. This keeps equality structural, so rationals
//! (and matrices of them) can be hashed directly.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

pub fn rat_from_i64(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Exact text form: `n` for integers, `n/d` otherwise.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `n` or `n/d` (optionally signed) into a rational.
pub fn rat_parse(text: &str) -> Result<Rat> {
    let s = text.trim();
    let err = |msg: &str| Error::Parse {
        position: 0,
        message: format!("{msg}: {s:?}"),
    };
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: Int = num_str.parse().map_err(|_| err("invalid integer"))?;
    match den_str {
        None => Ok(Rat::from_integer(num)),
        Some(d) => {
            let den: Int = d.parse().map_err(|_| err("invalid denominator"))?;
            if den.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// True when the rational is an integer after normalization.
pub fn rat_is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Sign-normalizing helper: `1` for positive, `-1` for negative, `0` for zero.
pub fn rat_signum(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "7", "-3", "5/3", "-22/7"] {
            let r = rat_parse(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        // normalization
        assert_eq!(rat_to_string(&rat_parse("4/6").unwrap()), "2/3");
        assert_eq!(rat_to_string(&rat_parse("3/3").unwrap()), "1");
        assert_eq!(rat_to_string(&rat_parse("2/-4").unwrap()), "-1/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(rat_parse("1/0").is_err());
    }
}
