//! Vectors of ℝⁿ with Euclidean inner product.

use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Vector<T> {
    c: Vec<T>,
}

impl<T: Scalar> Vector<T> {
    pub fn new(c: Vec<T>) -> Self {
        Vector { c }
    }

    pub fn zero(n: usize) -> Self {
        Vector { c: vec![T::zero(); n] }
    }

    /// The coordinate vector `e_i` (1-based).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.c[i - 1] = T::one();
        v
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Vector { c: c.iter().map(|&x| T::from_i64(x)).collect() }
    }

    pub fn from_rational(v: &Vector<Rational>) -> Self {
        Vector { c: v.c.iter().map(T::from_rational).collect() }
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.c
    }

    /// Component `i` (1-based).
    pub fn get(&self, i: usize) -> &T {
        &self.c[i - 1]
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.n(), other.n());
        let mut acc = T::zero();
        for (a, b) in self.c.iter().zip(&other.c) {
            if !a.is_zero() && !b.is_zero() {
                acc += a.mul_ref(b);
            }
        }
        acc
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn scale(&self, s: &T) -> Self {
        Vector { c: self.c.iter().map(|x| x.mul_ref(s)).collect() }
    }

    pub fn is_negligible(&self) -> bool {
        self.c.iter().all(Scalar::is_negligible)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.n() == other.n() && (self - other).is_negligible()
    }

    /// `self + s·other`
    pub fn axpy(&self, s: &T, other: &Self) -> Self {
        Vector {
            c: self.c.iter().zip(&other.c).map(|(a, b)| a.clone() + s.mul_ref(b)).collect(),
        }
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        if self.n() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: n, found: self.n() })
        }
    }

    pub fn check_unit(&self) -> Result<()> {
        let q = self.norm_sq();
        if (q.clone() - T::one()).is_negligible() {
            Ok(())
        } else {
            Err(Error::NotUnit(q.to_string()))
        }
    }
}

/// True when the vectors are pairwise orthogonal unit vectors.
pub fn is_orthonormal<T: Scalar>(vs: &[Vector<T>]) -> bool {
    for (i, a) in vs.iter().enumerate() {
        if !(a.norm_sq() - T::one()).is_negligible() {
            return false;
        }
        for b in &vs[i + 1..] {
            if !a.dot(b).is_negligible() {
                return false;
            }
        }
    }
    true
}

pub fn check_orthonormal<T: Scalar>(vs: &[Vector<T>]) -> Result<()> {
    if is_orthonormal(vs) {
        Ok(())
    } else {
        Err(Error::NotOrthonormal)
    }
}

impl<T: Scalar> Add for &Vector<T> {
    type Output = Vector<T>;
    fn add(self, rhs: Self) -> Vector<T> {
        assert_eq!(self.n(), rhs.n(), "vector dimension mismatch");
        Vector { c: self.c.iter().zip(&rhs.c).map(|(a, b)| a.clone() + b.clone()).collect() }
    }
}

impl<T: Scalar> Sub for &Vector<T> {
    type Output = Vector<T>;
    fn sub(self, rhs: Self) -> Vector<T> {
        assert_eq!(self.n(), rhs.n(), "vector dimension mismatch");
        Vector { c: self.c.iter().zip(&rhs.c).map(|(a, b)| a.clone() - b.clone()).collect() }
    }
}

impl<T: Scalar> Neg for &Vector<T> {
    type Output = Vector<T>;
    fn neg(self) -> Vector<T> {
        Vector { c: self.c.iter().map(|a| -a.clone()).collect() }
    }
}

impl<T: Scalar> Add for Vector<T> {
    type Output = Vector<T>;
    fn add(self, rhs: Self) -> Vector<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Vector<T> {
    type Output = Vector<T>;
    fn sub(self, rhs: Self) -> Vector<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Neg for Vector<T> {
    type Output = Vector<T>;
    fn neg(self) -> Vector<T> {
        -&self
    }
}
