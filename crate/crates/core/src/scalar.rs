//! Exact rational scalars.
//!
//! All coefficient arithmetic in this crate is done over Q with
//! arbitrary-precision numerators and denominators. There is no floating
//! point anywhere; zero-testing of polynomials has to be exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

/// The ground field: arbitrary-precision rationals, always in lowest terms
/// with positive denominator (guaranteed by `BigRational`).
pub type Rat = BigRational;

/// Shorthand for an integer scalar.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for a fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a decimal-free rational literal: `p`, `-p`, or `p/q`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational literal".into());
    }
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(Rat::from_integer)
            .map_err(|_| format!("invalid integer literal `{s}`")),
        Some((num, den)) => {
            let n = BigInt::from_str(num.trim())
                .map_err(|_| format!("invalid numerator `{num}`"))?;
            let d = BigInt::from_str(den.trim())
                .map_err(|_| format!("invalid denominator `{den}`"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Formats a rational as a decimal-free string: `3`, `-3`, `3/2`.
pub fn fmt_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Sign of a rational as -1, 0, or 1.
pub fn sign(q: &Rat) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["0", "7", "-7", "3/2", "-3/2", "10/4"] {
            let q = parse_rat(s).unwrap();
            let t = fmt_rat(&q);
            assert_eq!(parse_rat(&t).unwrap(), q);
        }
        assert_eq!(parse_rat("10/4").unwrap(), ratio(5, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("").is_err());
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
