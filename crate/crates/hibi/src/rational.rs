//! Exact rational scalars.
//!
//! All scalar arithmetic in this crate is done with [`Rational`], an
//! arbitrary-precision fraction kept in lowest terms with a positive
//! denominator, so equality of values is equality of representations.
//! Rationals cross the serialization boundary as the string `"p/q"`
//! (`"p"` when the denominator is 1); both forms parse back.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::ToPrimitive;

pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair; reduces to lowest terms.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical string form: `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .trim()
        .parse()
        .map_err(|e| format!("invalid rational {s:?}: {e}"))?;
    let den: BigInt = den
        .trim()
        .parse()
        .map_err(|e| format!("invalid rational {s:?}: {e}"))?;
    if den == BigInt::from(0) {
        return Err(format!("invalid rational {s:?}: zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Nearest `f64`, for display columns only.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
