//! Exact scalar arithmetic: arbitrary-precision rationals.
//!
//! Every quantity in this crate is exact; nothing is ever rounded. The
//! scalar type is [`num_rational::BigRational`], which keeps values in
//! lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Falling factorial `n!/(n-k)! = n(n-1)...(n-k+1)`. Requires `k <= n`.
pub fn falling_factorial(n: usize, k: usize) -> BigInt {
    assert!(k <= n, "falling_factorial: k={k} exceeds n={n}");
    ((n - k + 1)..=n).fold(BigInt::one(), |acc, m| acc * BigInt::from(m))
}

/// Parse "num/den" or a bare integer "num", exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = |message: String| Error::Parse { position: 0, message };
    let t = s.trim();
    let (numer, denom) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let n: BigInt = numer
        .parse()
        .map_err(|e| err(format!("invalid rational {s:?}: {e}")))?;
    let d: BigInt = match denom {
        Some(d) => d
            .parse()
            .map_err(|e| err(format!("invalid rational {s:?}: {e}")))?,
        None => BigInt::one(),
    };
    if num_traits::Zero::is_zero(&d) {
        return Err(err(format!("invalid rational {s:?}: zero denominator")));
    }
    Ok(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let r = rat(4, -6);
        assert_eq!(r, rat(-2, 3));
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(4), BigInt::from(24));
        assert_eq!(factorial(10), BigInt::from(3628800u64));
        assert_eq!(falling_factorial(4, 2), BigInt::from(12));
        assert_eq!(falling_factorial(7, 0), BigInt::from(1));
        assert_eq!(falling_factorial(7, 7), factorial(7));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3", "-3", "1/2", "-7/3", "0"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("q").is_err());
    }
}
