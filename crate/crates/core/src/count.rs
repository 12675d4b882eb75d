use core::fmt;
use core::ops::{Mul, MulAssign};

use alloc::string::String;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Exact non-negative integer used for degrees and group orders.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn pow(&self, exponent: u64) -> Self {
        let mut acc = BigUint::one();
        let mut base = self.0.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        BigCount(acc)
    }

    /// `self ^ exponent` where the exponent is itself a count.
    pub fn pow_big(&self, exponent: &BigCount) -> crate::Result<Self> {
        if self.0.is_one() || self.0.is_zero() {
            return Ok(self.clone());
        }
        let e = exponent.to_u64().ok_or_else(|| {
            crate::Error::NotRepresentable(alloc::format!("{self}^{exponent}"))
        })?;
        Ok(self.pow(e))
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn to_usize(&self) -> Option<usize> {
        self.0.to_usize()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    /// Decimal string form, used for serialization.
    pub fn to_decimal(&self) -> String {
        self.0.to_str_radix(10)
    }

    pub fn parse_decimal(text: &str) -> Option<Self> {
        BigUint::parse_bytes(text.as_bytes(), 10).map(BigCount)
    }

    /// Number of decimal digits.
    pub fn digits(&self) -> usize {
        self.to_decimal().len()
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<usize> for BigCount {
    fn from(v: usize) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl Mul for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl Mul<&BigCount> for &BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 * &rhs.0)
    }
}

impl MulAssign<&BigCount> for BigCount {
    fn mul_assign(&mut self, rhs: &BigCount) {
        self.0 *= &rhs.0;
    }
}

impl MulAssign<u64> for BigCount {
    fn mul_assign(&mut self, rhs: u64) {
        self.0 *= rhs;
    }
}

impl core::iter::Product for BigCount {
    fn product<I: Iterator<Item = BigCount>>(iter: I) -> BigCount {
        iter.fold(BigCount::one(), |a, b| a * b)
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}
