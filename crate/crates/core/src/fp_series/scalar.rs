use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{check_odd_prime, SeriesError};
use crate::arith::pow_mod;

/// A residue modulo an odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    p: u32,
    value: u32,
}

impl FpScalar {
    pub fn new(p: u32, value: i64) -> Result<Self, SeriesError> {
        check_odd_prime(p as u64)?;
        Ok(Self::reduce(p, value))
    }

    pub(crate) fn reduce(p: u32, value: i64) -> Self {
        let v = value.rem_euclid(p as i64) as u32;
        FpScalar { p, value: v }
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        let v = pow_mod(self.value as u64, self.p as u64 - 2, self.p as u64);
        Some(FpScalar { p: self.p, value: v as u32 })
    }

    pub fn pow(self, e: u64) -> Self {
        let v = pow_mod(self.value as u64, e, self.p as u64);
        FpScalar { p: self.p, value: v as u32 }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        FpScalar { p: self.p, value: ((self.value as u64 + rhs.value as u64) % self.p as u64) as u32 }
    }
}

impl Sub for FpScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FpScalar {
    type Output = Self;
    fn neg(self) -> Self {
        FpScalar { p: self.p, value: (self.p - self.value) % self.p }
    }
}

impl Mul for FpScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        FpScalar { p: self.p, value: ((self.value as u64 * rhs.value as u64) % self.p as u64) as u32 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_mod_7() {
        let p = 7;
        for a in 0..7 {
            let x = FpScalar::new(p, a).unwrap();
            assert_eq!(x + (-x), FpScalar::new(p, 0).unwrap());
            if a != 0 {
                assert_eq!(x * x.inv().unwrap(), FpScalar::new(p, 1).unwrap());
            } else {
                assert!(x.inv().is_none());
            }
        }
    }

    #[test]
    fn negative_values_reduce() {
        assert_eq!(FpScalar::new(5, -1).unwrap().value(), 4);
        assert_eq!(FpScalar::new(5, -13).unwrap().value(), 2);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(FpScalar::new(9, 1).is_err());
        assert_eq!(FpScalar::new(2, 1), Err(SeriesError::UnsupportedCharacteristic));
    }
}
