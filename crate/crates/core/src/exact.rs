//! Exact integer helpers: integer square roots, checked powers and a
//! half-integer type for bound values.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{KakeyaError, Result};

/// floor(sqrt(n)) without floating point error.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    // Newton iteration from an upper bound
    let mut x = 1u64 << ((64 - n.leading_zeros()).div_ceil(2));
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// ceil(sqrt(n)).
pub fn ceil_sqrt(n: u64) -> u64 {
    let s = isqrt(n);
    if s * s == n {
        s
    } else {
        s + 1
    }
}

pub fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| KakeyaError::Overflow(format!("{base}^{exp} does not fit in 64 bits")))
}

pub(crate) fn pow_i128(base: u64, exp: u32) -> Result<i128> {
    (base as i128)
        .checked_pow(exp)
        .ok_or_else(|| KakeyaError::Overflow(format!("{base}^{exp} does not fit in 128 bits")))
}

/// An exact multiple of 1/2, stored as its double.
///
/// Serializes as a JSON integer when integral and as the string `"N/2"`
/// otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Half(i128);

impl Half {
    pub fn from_twice(twice: i128) -> Half {
        Half(twice)
    }

    pub fn from_int(v: i128) -> Half {
        Half(2 * v)
    }

    pub fn twice(self) -> i128 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn ceil(self) -> i128 {
        self.0.div_euclid(2) + self.0.rem_euclid(2)
    }

    pub fn floor(self) -> i128 {
        self.0.div_euclid(2)
    }
}

impl std::ops::Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for Half {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_integer() {
            s.serialize_i128(self.0 / 2)
        } else {
            s.serialize_str(&self.to_string())
        }
    }
}
