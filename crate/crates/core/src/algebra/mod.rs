//! Exact rationals and graded-commutative polynomials in the fixed alphabet
//! `x` (degree 0), `eta` (degree -1), `t` (degree 0) and `dt` (degree +1).
//!
//! The odd generators `eta` and `dt` square to zero and anticommute. A
//! monomial is always stored in the factor order `x^a eta t^b dt`, and every
//! product is brought back to that order with its Koszul sign.

mod monomial;
mod parse;
mod poly;

pub use monomial::Monomial;
pub use parse::{parse_poly, ParseError, ParseErrorKind};
pub use poly::GradedPoly;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// `n!!` with the conventions `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}
