//! Tangent-vector-valued forms `Σ_i a_i ⊗ e_i`.

use crate::error::{Error, Result};
use crate::form::{eval, KForm};
use crate::scalar::Scalar;
use crate::vector::Vector;

#[derive(Clone, Debug, PartialEq)]
pub struct VectorValuedForm<T> {
    n: usize,
    k: usize,
    comps: Vec<KForm<T>>,
}

impl<T: Scalar> VectorValuedForm<T> {
    pub fn new(comps: Vec<KForm<T>>) -> Result<Self> {
        let n = comps.len();
        let k = comps.first().map_or(0, KForm::grade);
        for c in &comps {
            if c.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: c.n() });
            }
            if c.grade() != k {
                return Err(Error::GradeMismatch { expected: k, found: c.grade() });
            }
        }
        Ok(VectorValuedForm { n, k, comps })
    }

    /// Builds component `i` from `f(i)` for `i = 1..=n`.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> Result<KForm<T>>) -> Result<Self> {
        Self::new((1..=n).map(f).collect::<Result<_>>()?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grade(&self) -> usize {
        self.k
    }

    /// Coefficient form of `e_i` (1-based).
    pub fn component(&self, i: usize) -> &KForm<T> {
        &self.comps[i - 1]
    }

    pub fn components(&self) -> &[KForm<T>] {
        &self.comps
    }

    /// The scalar form `⟨A, v⟩ = Σ v_i a_i`.
    pub fn pair(&self, v: &Vector<T>) -> Result<KForm<T>> {
        v.check_dim(self.n)?;
        let mut acc = KForm::zero(self.n, self.k);
        for (c, vi) in self.comps.iter().zip(v.coords()) {
            if !vi.is_zero() {
                acc = acc.axpy(vi, c)?;
            }
        }
        Ok(acc)
    }

    /// The vector `A(v_1, …, v_k)`.
    pub fn eval(&self, vs: &[&Vector<T>]) -> Result<Vector<T>> {
        Ok(Vector::new(self.comps.iter().map(|c| eval(c, vs)).collect::<Result<_>>()?))
    }
}
