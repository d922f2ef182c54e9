//! Exact rational scalars and the ring abstraction shared by forms and matrices.

use std::fmt;
use std::ops::{Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

/// Builds the integer scalar `n`.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Builds `num/den`; panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` (optional sign, surrounding whitespace allowed).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || Error::Parse(format!("malformed rational `{text}`"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{text}`")));
    }
    Ok(Scalar::new(num, den))
}

/// How a coefficient is printed in front of a basis symbol.
pub struct CoeffParts {
    pub negative: bool,
    /// `None` when the coefficient is plus or minus one.
    pub body: Option<String>,
}

/// Commutative ring with exact (partial) division: rationals and polynomials
/// over them.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    fn from_scalar(s: &Scalar) -> Self;

    /// Exact quotient `self / divisor`, `None` if the division is not exact.
    fn try_div(&self, divisor: &Self) -> Option<Self>;

    fn scale(&self, s: &Scalar) -> Self {
        self.clone() * Self::from_scalar(s)
    }

    fn coeff_parts(&self) -> CoeffParts;
}

impl Ring for Scalar {
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }

    fn try_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            None
        } else {
            Some(self / divisor)
        }
    }

    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }

    fn coeff_parts(&self) -> CoeffParts {
        let abs = self.abs();
        CoeffParts { negative: self.is_negative(), body: if abs.is_one() { None } else { Some(abs.to_string()) } }
    }
}
