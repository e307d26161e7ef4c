use std::fmt;
use std::ops::{Add, Div, Mul, Rem, Sub};
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::NumericError;

/// Arbitrary-precision nonnegative integer.
///
/// Decimal strings are the only textual form: parsing accepts ASCII digits
/// only (leading zeros allowed), rendering never emits leading zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigNat(BigUint);

impl BigNat {
    pub fn zero() -> Self {
        BigNat(BigUint::zero())
    }

    pub fn one() -> Self {
        BigNat(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_even(&self) -> bool {
        self.0.is_even()
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn to_u128(&self) -> Option<u128> {
        self.0.to_u128()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn pow10(exp: u32) -> Self {
        BigNat(BigUint::from(10u32).pow(exp))
    }

    pub fn pow(&self, exp: u32) -> Self {
        BigNat(self.0.pow(exp))
    }

    pub fn checked_sub(&self, rhs: &BigNat) -> Option<BigNat> {
        if rhs.0 > self.0 {
            None
        } else {
            Some(BigNat(&self.0 - &rhs.0))
        }
    }

    /// `(self / d, self % d)`; panics on a zero divisor like the primitive ops.
    pub fn div_rem(&self, d: &BigNat) -> (BigNat, BigNat) {
        let (q, r) = self.0.div_rem(&d.0);
        (BigNat(q), BigNat(r))
    }

    pub fn is_multiple_of(&self, d: &BigNat) -> bool {
        !d.is_zero() && (&self.0 % &d.0).is_zero()
    }

    pub fn gcd(&self, other: &BigNat) -> BigNat {
        BigNat(self.0.gcd(&other.0))
    }

    /// Number of decimal digits in the canonical rendering.
    pub fn decimal_len(&self) -> usize {
        self.0.to_str_radix(10).len()
    }
}

impl From<u32> for BigNat {
    fn from(v: u32) -> Self {
        BigNat(BigUint::from(v))
    }
}

impl From<u64> for BigNat {
    fn from(v: u64) -> Self {
        BigNat(BigUint::from(v))
    }
}

impl From<u128> for BigNat {
    fn from(v: u128) -> Self {
        BigNat(BigUint::from(v))
    }
}

impl From<BigUint> for BigNat {
    fn from(v: BigUint) -> Self {
        BigNat(v)
    }
}

impl FromStr for BigNat {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(NumericError::InvalidDigits(s.to_string()));
        }
        BigUint::parse_bytes(s.as_bytes(), 10)
            .map(BigNat)
            .ok_or_else(|| NumericError::InvalidDigits(s.to_string()))
    }
}

impl fmt::Display for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&BigNat> for &BigNat {
            type Output = BigNat;
            fn $method(self, rhs: &BigNat) -> BigNat {
                BigNat($tr::$method(&self.0, &rhs.0))
            }
        }

        impl $tr<BigNat> for BigNat {
            type Output = BigNat;
            fn $method(self, rhs: BigNat) -> BigNat {
                BigNat($tr::$method(self.0, rhs.0))
            }
        }

        impl $tr<&BigNat> for BigNat {
            type Output = BigNat;
            fn $method(self, rhs: &BigNat) -> BigNat {
                BigNat($tr::$method(self.0, &rhs.0))
            }
        }

        impl $tr<u64> for &BigNat {
            type Output = BigNat;
            fn $method(self, rhs: u64) -> BigNat {
                BigNat($tr::$method(&self.0, rhs))
            }
        }

        impl $tr<u64> for BigNat {
            type Output = BigNat;
            fn $method(self, rhs: u64) -> BigNat {
                BigNat($tr::$method(self.0, rhs))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);
forward_binop!(Rem, rem);
