//! Integers that stay in a machine word until they overflow.
//!
//! Elimination rows over `A_{k,d,n}` are dominated by tiny entries with an
//! occasional long one, so a word-or-bignum enum avoids most allocations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Z {
    S(i64),
    B(BigInt),
}

impl Z {
    pub fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Z::S(v),
            None => Z::B(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Z::S(v) => BigInt::from(*v),
            Z::B(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Z::S(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Z::S(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Z::S(v) => *v < 0,
            Z::B(b) => b.is_negative(),
        }
    }

    pub fn bits(&self) -> u64 {
        match self {
            Z::S(v) => u64::from(64 - v.unsigned_abs().leading_zeros()),
            Z::B(b) => b.bits(),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Z::S(v) => match v.checked_neg() {
                Some(n) => Z::S(n),
                None => Z::B(-BigInt::from(*v)),
            },
            Z::B(b) => Z::from_big(-b),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let (Z::S(a), Z::S(b)) = (self, other) {
            if let Some(p) = a.checked_mul(*b) {
                return Z::S(p);
            }
        }
        Z::from_big(self.to_big() * other.to_big())
    }

    /// `self·a − other·b`.
    pub fn mul_sub(&self, a: &Self, other: &Self, b: &Self) -> Self {
        if let (Z::S(x), Z::S(y), Z::S(u), Z::S(v)) = (self, a, other, b) {
            let r = i128::from(*x) * i128::from(*y) - i128::from(*u) * i128::from(*v);
            if let Ok(r) = i64::try_from(r) {
                return Z::S(r);
            }
            return Z::from_big(BigInt::from(r));
        }
        Z::from_big(self.to_big() * a.to_big() - other.to_big() * b.to_big())
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn div_exact(&self, other: &Self) -> Self {
        if let (Z::S(a), Z::S(b)) = (self, other) {
            if let Some(q) = a.checked_div(*b) {
                return Z::S(q);
            }
        }
        Z::from_big(self.to_big() / other.to_big())
    }

    /// Nonnegative gcd; drops to machine words as soon as one side fits.
    pub fn gcd(&self, other: &Self) -> Self {
        let word = |x: u64| match i64::try_from(x) {
            Ok(v) => Z::S(v),
            Err(_) => Z::B(BigInt::from(x)),
        };
        match (self, other) {
            (Z::S(a), Z::S(b)) => word(a.unsigned_abs().gcd(&b.unsigned_abs())),
            (Z::S(0), Z::B(b)) | (Z::B(b), Z::S(0)) => Z::from_big(b.abs()),
            (Z::S(a), Z::B(b)) | (Z::B(b), Z::S(a)) => {
                let a = a.unsigned_abs();
                let r = (b.magnitude() % a)
                    .to_u64()
                    .expect("remainder below a word");
                word(a.gcd(&r))
            }
            (Z::B(a), Z::B(b)) => Z::from_big(a.gcd(b)),
        }
    }
}
