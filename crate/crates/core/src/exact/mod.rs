//! Exact scalars and dense linear algebra.
//!
//! Everything downstream is generic over [`Field`]. The exact instances are
//! [`BigRational`] and [`Cyclotomic`]; [`Fp`] is a word-sized prime field used
//! only for rank lower bounds (a rank computed modulo a prime never exceeds
//! the rank over the rationals).

mod cyclotomic;
mod fp;
mod matrix;

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
pub use fp::Fp;
pub use matrix::{Echelon, Matrix, RowReducer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational {0} has a denominator that vanishes in the target field")]
    NotRepresentable(String),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

/// A field with exact equality.
///
/// The in-place reference operators are required so that big-number
/// implementations can avoid clones in inner loops.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Image of a rational number; fails when the denominator is not
    /// invertible in the field.
    fn from_rational(q: &BigRational) -> Result<Self, ExactError>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
            .expect("integers embed in every field used here")
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r *= other;
        r
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r += other;
        r
    }

    fn sub_ref(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r -= other;
        r
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += &a.mul_ref(b);
    }

    fn div_ref(&self, other: &Self) -> Result<Self, ExactError> {
        let inv = other.inv().ok_or(ExactError::DivisionByZero)?;
        Ok(self.mul_ref(&inv))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            let b2 = base.clone();
            base *= &b2;
            e >>= 1;
        }
        acc
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(q: &BigRational) -> Result<Self, ExactError> {
        Ok(q.clone())
    }
}

/// Shorthand for a rational from a numerator and denominator.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"-p/q"` or an integer.
pub fn parse_rational(s: &str) -> Result<BigRational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ExactError::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Canonical `p/q` text form (integers without a denominator).
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Converts an integral rational to `i64`.
pub fn to_i64(q: &BigRational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn abs_rat(q: &BigRational) -> BigRational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("2/3").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&int(-7)), "-7");
    }

    #[test]
    fn rational_inverse() {
        assert_eq!(rat(2, 3).inv(), Some(rat(3, 2)));
        assert_eq!(int(0).inv(), None);
        assert_eq!(int(0).div_ref(&int(0)), Err(ExactError::DivisionByZero));
        assert_eq!(rat(2, 3).pow(3), rat(8, 27));
    }
}
