//! Exact rationals and their `"num/den"` wire encoding.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn is_nonneg_integer(q: &Rational) -> bool {
    is_integral(q) && !q.is_negative()
}

/// Formats as `"n"` for integers and `"n/d"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Accepts `"n"`, `"-n"` and `"n/d"` with `d != 0`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
