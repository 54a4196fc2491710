//! The ground field: arbitrary-precision rationals.
//!
//! Scalars are always kept reduced (gcd of numerator and denominator is 1)
//! with a positive denominator; zero is `0/1`. The canonical text form is
//! `p` for integers and `p/q` otherwise.

use num::bigint::BigInt;
use num::{One, Signed};

pub type Scalar = num::BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Rational scalar `p/q`.
///
/// Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Scalar {
    assert!(q != 0, "zero denominator");
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical text form: `p` when the denominator is 1, `p/q` otherwise.
pub fn fmt_rat(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q` with integer `p` and positive integer `q`.
/// The result is reduced to canonical form.
pub fn parse_rat(text: &str) -> Option<Scalar> {
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p, q),
        None => (text, "1"),
    };
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if !q.is_positive() {
        return None;
    }
    Some(Scalar::new(p, q))
}
