//! Exact signed fractions.
//!
//! All transition values, amplitudes and probabilities in this crate are
//! arbitrary-precision rationals; there is no floating point anywhere in the
//! simulation path. `num-rational` keeps fractions in lowest terms with a
//! positive denominator, which is exactly the canonical form we need.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = num_rational::BigRational;

/// `n/d` as a canonical rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::BadRational(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let num: BigInt = p.parse().map_err(|_| bad())?;
            let den: BigInt = q.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
        None => {
            let num: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(num))
        }
    }
}

/// Compact form: bare integer when the denominator is 1, `p/q` otherwise.
pub fn display_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Always `p/q`, including `1/1` and `0/1`. Used wherever probabilities are
/// reported, so that a decimal point can never appear in output.
pub fn display_prob(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Absolute value.
pub fn rabs(r: &Rational) -> Rational {
    r.abs()
}
