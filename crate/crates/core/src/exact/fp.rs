use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{ExactError, Field};

/// Integers modulo the Mersenne prime 2^31 - 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp(u32);

impl Fp {
    pub const MODULUS: u64 = (1 << 31) - 1;

    pub fn new(v: u64) -> Self {
        Fp((v % Self::MODULUS) as u32)
    }

    pub fn value(self) -> u64 {
        self.0 as u64
    }

    fn reduce_big(n: &BigInt) -> u64 {
        let m = BigInt::from(Self::MODULUS);
        n.mod_floor(&m).to_u64().expect("residue fits in u64")
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, Self::MODULUS)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        let s = self.0 as u64 + o.0 as u64;
        Fp(if s >= Self::MODULUS { s - Self::MODULUS } else { s } as u32)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        let s = self.0 as u64 + Self::MODULUS - o.0 as u64;
        Fp(if s >= Self::MODULUS { s - Self::MODULUS } else { s } as u32)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        Fp(((self.0 as u64 * o.0 as u64) % Self::MODULUS) as u32)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::zero() - self
    }
}

impl<'a> AddAssign<&'a Fp> for Fp {
    fn add_assign(&mut self, o: &'a Fp) {
        *self = *self + *o;
    }
}

impl<'a> SubAssign<&'a Fp> for Fp {
    fn sub_assign(&mut self, o: &'a Fp) {
        *self = *self - *o;
    }
}

impl<'a> MulAssign<&'a Fp> for Fp {
    fn mul_assign(&mut self, o: &'a Fp) {
        *self = *self * *o;
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp(1)
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat
        let mut e = Self::MODULUS - 2;
        let mut base = *self;
        let mut acc = Fp::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        Some(acc)
    }

    fn from_rational(q: &BigRational) -> Result<Self, ExactError> {
        let d = Fp::new(Self::reduce_big(q.denom()));
        let inv = d
            .inv()
            .ok_or_else(|| ExactError::NotRepresentable(q.to_string()))?;
        Ok(Fp::new(Self::reduce_big(q.numer())) * inv)
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        let s = self.0 as u64 + (a.0 as u64 * b.0 as u64) % Self::MODULUS;
        self.0 = (s % Self::MODULUS) as u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn inverse_and_embedding() {
        let a = Fp::from_rational(&rat(2, 3)).unwrap();
        assert_eq!(a * Fp::new(3), Fp::new(2));
        assert_eq!(Fp::from_rational(&rat(-1, 1)).unwrap(), -Fp::one());
        assert_eq!(Fp::new(12345).inv().unwrap() * Fp::new(12345), Fp::one());
        assert!(Fp::zero().inv().is_none());
    }
}
