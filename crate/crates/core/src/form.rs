//! Constant-coefficient k-forms on ℝⁿ and the basic exterior operations.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::blade::{Blade, MAX_DIM};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use crate::vector::Vector;

/// A k-form on ℝⁿ. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct KForm<T> {
    n: usize,
    k: usize,
    coeffs: BTreeMap<Blade, T>,
}

impl<T: Scalar> KForm<T> {
    pub fn zero(n: usize, k: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        KForm { n, k, coeffs: BTreeMap::new() }
    }

    /// The 0-form with value `c`.
    pub fn scalar(n: usize, c: T) -> Self {
        let mut f = Self::zero(n, 0);
        f.add_term(Blade::SCALAR, c);
        f
    }

    /// `e^{i1..ik}` from 1-based indices in any order (sign of the sort applied).
    pub fn basis(n: usize, indices: &[usize]) -> Self {
        let mut f = Self::zero(n, indices.len());
        if let Some((b, s)) = Blade::from_indices(indices) {
            assert!(b.max_index() <= n, "index out of range");
            f.add_term(b, T::from_i64(s as i64));
        }
        f
    }

    /// The volume form `e^{1..n}`.
    pub fn volume(n: usize) -> Self {
        let mut f = Self::zero(n, n);
        f.add_term(Blade::top(n), T::one());
        f
    }

    /// Builds a form from `(coefficient, indices)` pairs.
    pub fn from_terms(n: usize, k: usize, terms: &[(i64, &[usize])]) -> Self {
        let mut f = Self::zero(n, k);
        for (c, ix) in terms {
            assert_eq!(ix.len(), k, "term grade mismatch");
            f = &f + &Self::basis(n, ix).scale(&T::from_i64(*c));
        }
        f
    }

    pub fn from_rational(f: &KForm<Rational>) -> Self {
        KForm {
            n: f.n,
            k: f.k,
            coeffs: f.coeffs.iter().map(|(b, c)| (*b, T::from_rational(c))).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grade(&self) -> usize {
        self.k
    }

    /// Coefficient of a blade (zero when absent).
    pub fn coeff(&self, b: Blade) -> T {
        self.coeffs.get(&b).cloned().unwrap_or_else(T::zero)
    }

    /// Coefficient of `e^{indices}` with the indices in increasing order.
    pub fn coeff_of(&self, indices: &[usize]) -> T {
        match Blade::from_indices(indices) {
            Some((b, s)) => {
                let c = self.coeff(b);
                if s < 0 {
                    -c
                } else {
                    c
                }
            }
            None => T::zero(),
        }
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &T)> {
        self.coeffs.iter().map(|(b, c)| (*b, c))
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_negligible(&self) -> bool {
        self.coeffs.values().all(Scalar::is_negligible)
    }

    /// Same shape and coefficient-wise equal up to the backend's tolerance.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && (self - other).is_negligible()
    }

    /// Adds `c·e^b` in place.
    pub fn add_term(&mut self, b: Blade, c: T) {
        debug_assert_eq!(b.grade(), self.k);
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(b) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut f = Self::zero(self.n, self.k);
        for (b, c) in &self.coeffs {
            f.add_term(*b, c.mul_ref(s));
        }
        f
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> KForm<U> {
        let mut out = KForm::zero(self.n, self.k);
        for (b, c) in &self.coeffs {
            out.add_term(*b, f(c));
        }
        out
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        if self.k != other.k {
            return Err(Error::GradeMismatch { expected: self.k, found: other.k });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut f = self.clone();
        for (b, c) in &other.coeffs {
            f.add_term(*b, c.clone());
        }
        Ok(f)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut f = self.clone();
        for (b, c) in &other.coeffs {
            f.add_term(*b, -c.clone());
        }
        Ok(f)
    }

    /// `self + s·other`
    pub fn axpy(&self, s: &T, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut f = self.clone();
        for (b, c) in &other.coeffs {
            f.add_term(*b, c.mul_ref(s));
        }
        Ok(f)
    }

    /// Value of a 0-form.
    pub fn as_scalar(&self) -> Result<T> {
        if self.k != 0 {
            return Err(Error::GradeMismatch { expected: 0, found: self.k });
        }
        Ok(self.coeff(Blade::SCALAR))
    }
}

impl<T: Scalar> Add for &KForm<T> {
    type Output = KForm<T>;
    /// Panics on a shape mismatch; use [`KForm::try_add`] for a checked sum.
    fn add(self, rhs: Self) -> KForm<T> {
        self.try_add(rhs).expect("form shape mismatch")
    }
}

impl<T: Scalar> Sub for &KForm<T> {
    type Output = KForm<T>;
    fn sub(self, rhs: Self) -> KForm<T> {
        self.try_sub(rhs).expect("form shape mismatch")
    }
}

impl<T: Scalar> Neg for &KForm<T> {
    type Output = KForm<T>;
    fn neg(self) -> KForm<T> {
        self.scale(&-T::one())
    }
}

impl<T: Scalar> Add for KForm<T> {
    type Output = KForm<T>;
    fn add(self, rhs: Self) -> KForm<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for KForm<T> {
    type Output = KForm<T>;
    fn sub(self, rhs: Self) -> KForm<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Neg for KForm<T> {
    type Output = KForm<T>;
    fn neg(self) -> KForm<T> {
        -&self
    }
}

pub fn wedge<T: Scalar>(a: &KForm<T>, b: &KForm<T>) -> Result<KForm<T>> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch { expected: a.n, found: b.n });
    }
    let mut out = KForm { n: a.n, k: a.k + b.k, coeffs: BTreeMap::new() };
    if a.k + b.k > a.n {
        return Ok(out);
    }
    for (ba, ca) in &a.coeffs {
        for (bb, cb) in &b.coeffs {
            if let Some(s) = ba.wedge_sign(*bb) {
                let c = ca.mul_ref(cb);
                out.add_term(ba.union(*bb), if s < 0 { -c } else { c });
            }
        }
    }
    Ok(out)
}

/// Wedge of several forms, left to right.
pub fn wedge_all<T: Scalar>(forms: &[&KForm<T>]) -> Result<KForm<T>> {
    let (first, rest) = forms.split_first().expect("at least one form");
    let mut acc = (*first).clone();
    for f in rest {
        acc = wedge(&acc, f)?;
    }
    Ok(acc)
}

/// Interior product `v⌟a`, inserting `v` into the first slot.
pub fn contract<T: Scalar>(v: &Vector<T>, a: &KForm<T>) -> Result<KForm<T>> {
    v.check_dim(a.n)?;
    if a.k == 0 {
        return Err(Error::ContractScalar);
    }
    let mut out = KForm::zero(a.n, a.k - 1);
    for (b, c) in &a.coeffs {
        for i in b.indices() {
            let vi = v.get(i);
            if vi.is_zero() {
                continue;
            }
            let term = vi.mul_ref(c);
            let term = if b.rank_of(i) % 2 == 1 { -term } else { term };
            out.add_term(b.without(i), term);
        }
    }
    Ok(out)
}

/// Contraction into the last slot: `a(·, …, ·, v)`.
pub fn contract_last<T: Scalar>(v: &Vector<T>, a: &KForm<T>) -> Result<KForm<T>> {
    let c = contract(v, a)?;
    Ok(if (a.k - 1) % 2 == 1 { -c } else { c })
}

/// Contracts `vs[0]` first, then `vs[1]`, and so on.
pub fn contract_seq<T: Scalar>(vs: &[&Vector<T>], a: &KForm<T>) -> Result<KForm<T>> {
    let mut acc = a.clone();
    for v in vs {
        acc = contract(v, &acc)?;
    }
    Ok(acc)
}

/// Ambient Hodge star for the Euclidean metric and orientation `e^{1..n}`.
pub fn hodge<T: Scalar>(a: &KForm<T>) -> KForm<T> {
    if a.k > a.n {
        return KForm::zero(a.n, 0);
    }
    let mut out = KForm::zero(a.n, a.n - a.k);
    for (b, c) in &a.coeffs {
        let c = c.clone();
        out.add_term(b.complement(a.n), if b.hodge_sign(a.n) < 0 { -c } else { c });
    }
    out
}

pub fn flat<T: Scalar>(v: &Vector<T>) -> KForm<T> {
    let mut f = KForm::zero(v.n(), 1);
    for (i, c) in v.coords().iter().enumerate() {
        f.add_term(Blade::single(i + 1), c.clone());
    }
    f
}

pub fn sharp<T: Scalar>(a: &KForm<T>) -> Result<Vector<T>> {
    if a.k != 1 {
        return Err(Error::GradeMismatch { expected: 1, found: a.k });
    }
    Ok(Vector::new((1..=a.n).map(|i| a.coeff(Blade::single(i))).collect()))
}

/// Induced inner product on k-forms (basis blades orthonormal).
pub fn inner<T: Scalar>(a: &KForm<T>, b: &KForm<T>) -> Result<T> {
    a.check_same_shape(b)?;
    let mut acc = T::zero();
    for (bl, c) in &a.coeffs {
        if let Some(d) = b.coeffs.get(bl) {
            acc += c.mul_ref(d);
        }
    }
    Ok(acc)
}

pub fn norm_sq<T: Scalar>(a: &KForm<T>) -> T {
    a.coeffs.values().fold(T::zero(), |acc, c| acc + c.mul_ref(c))
}

/// `a(v_1, …, v_k)`.
pub fn eval<T: Scalar>(a: &KForm<T>, vs: &[&Vector<T>]) -> Result<T> {
    if vs.len() != a.k {
        return Err(Error::ArityMismatch { expected: a.k, found: vs.len() });
    }
    contract_seq(vs, a)?.as_scalar()
}

/// Restriction to the hyperplane `ξ^⊥`: `a − ξ^# ∧ (ξ⌟a)` for unit `ξ`.
pub fn restrict<T: Scalar>(a: &KForm<T>, xi: &Vector<T>) -> Result<KForm<T>> {
    xi.check_dim(a.n)?;
    xi.check_unit()?;
    if a.k == 0 {
        return Ok(a.clone());
    }
    let tail = wedge(&flat(xi), &contract(xi, a)?)?;
    a.try_sub(&tail)
}

/// True when `ξ⌟a` vanishes, i.e. `a` lives on `ξ^⊥`.
pub fn is_tangent<T: Scalar>(a: &KForm<T>, xi: &Vector<T>) -> Result<bool> {
    if a.k == 0 {
        return Ok(true);
    }
    Ok(contract(xi, a)?.is_negligible())
}
