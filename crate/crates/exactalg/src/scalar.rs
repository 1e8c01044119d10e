//! Scalar traits shared by every generic routine in the crate.
//!
//! Everything is exact: the two concrete fields are the rationals and the
//! Gaussian rationals, and rational functions over either of them.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Commutative ring with unit.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Send
        + Sync
        + Zero
        + One
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
        + Neg<Output = Self>
{
}

/// A ring in which exact division (when the quotient exists) is computable.
///
/// Used by fraction-free elimination; the caller guarantees divisibility.
pub trait ExactDiv: Ring {
    fn div_exact(&self, other: &Self) -> Self;
}

/// Field of characteristic zero carrying an involution.
///
/// The involution is complex conjugation for the Gaussian rationals and the
/// identity for the rationals.
pub trait Field: Ring + Div<Output = Self> {
    fn conj(&self) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// True when the element is fixed by [`Field::conj`].
    fn is_self_conj(&self) -> bool {
        self.conj() == *self
    }

    fn from_rational(q: &BigRational) -> Self;

    /// Returns `Some(q)` when the element is a rational number.
    fn to_rational(&self) -> Option<BigRational>;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(v)))
    }
}

impl<F: Field> ExactDiv for F {
    fn div_exact(&self, other: &Self) -> Self {
        self.clone() / other.clone()
    }
}

/// Exact rationals, denominators positive and coprime to numerators.
pub type Rational = BigRational;

impl Field for BigRational {
    fn conj(&self) -> Self {
        self.clone()
    }

    fn is_self_conj(&self) -> bool {
        true
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"3"`, `"-3/4"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        Some(BigRational::from_integer(s.parse().ok()?))
    }
}

pub fn rational_sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}
