//! Coefficient backends.
//!
//! `Rational` is the reference backend: every comparison is exact. The `f64`
//! backend runs the same pipelines with a fixed absolute tolerance and exists
//! for timing comparisons only.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact arbitrary-precision rational.
pub type Rational = BigRational;

/// Absolute tolerance used by the floating-point backend.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
{
    /// Short backend name used in reports.
    const BACKEND: &'static str;
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn to_f64(&self) -> f64;

    /// Exact zero test (used for pruning stored coefficients).
    fn is_zero(&self) -> bool;
    /// Zero for comparison purposes: exact on rationals, within tolerance on floats.
    fn is_negligible(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_one(&self) -> bool;
    fn abs(&self) -> Self;
    /// Square root when it exists in the backend (rational squares only for `Rational`).
    fn sqrt_exact(&self) -> Option<Self>;

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_negligible()
    }
}

impl Scalar for Rational {
    const BACKEND: &'static str = "rational";
    const EXACT: bool = true;

    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negligible(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn sqrt_exact(&self) -> Option<Self> {
        if Signed::is_negative(self) {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &rn * &rn == *n && &rd * &rd == *d {
            Some(Rational::new(rn, rd))
        } else {
            None
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Scalar for f64 {
    const BACKEND: &'static str = "float";
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_negligible(&self) -> bool {
        f64::abs(*self) < FLOAT_TOLERANCE
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
    fn is_one(&self) -> bool {
        *self == 1.0
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt_exact(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

/// `num/den` as a rational; panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int<T: Scalar>(v: i64) -> T {
    T::from_i64(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_only_for_squares() {
        assert_eq!(ratio(9, 25).sqrt_exact(), Some(ratio(3, 5)));
        assert_eq!(ratio(2, 1).sqrt_exact(), None);
        assert_eq!(ratio(-4, 1).sqrt_exact(), None);
    }

    #[test]
    fn reduced_form_is_canonical() {
        let q = ratio(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
    }

    #[test]
    fn float_tolerance() {
        assert!(1e-12f64.is_negligible());
        assert!(!1e-6f64.is_negligible());
    }
}
