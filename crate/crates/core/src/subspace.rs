//! Oriented subspaces cut out by orthonormal normals, with their Hodge stars.

use crate::error::{Error, Result};
use crate::form::{contract, flat, hodge, restrict, wedge, KForm};
use crate::scalar::Scalar;
use crate::vector::Vector;

/// The subspace `{ν_1, …, ν_m}^⊥ ⊂ ℝⁿ` oriented by `s · ν_m⌟⋯⌟ν_1⌟e^{1..n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrientedSubspace<T> {
    n: usize,
    normals: Vec<Vector<T>>,
    orientation: i8,
}

impl<T: Scalar> OrientedSubspace<T> {
    pub fn ambient(n: usize) -> Self {
        OrientedSubspace { n, normals: Vec::new(), orientation: 1 }
    }

    pub fn hyperplane(xi: &Vector<T>) -> Result<Self> {
        Self::ambient(xi.n()).with_normal(xi)
    }

    /// Cuts down by one more unit normal; the new volume form is `ν⌟μ`.
    pub fn with_normal(&self, nu: &Vector<T>) -> Result<Self> {
        nu.check_dim(self.n)?;
        nu.check_unit()?;
        if !self.contains(nu) {
            return Err(Error::NotTangent("normal"));
        }
        let mut normals = self.normals.clone();
        normals.push(nu.clone());
        Ok(OrientedSubspace { n: self.n, normals, orientation: self.orientation })
    }

    /// Same subspace with the opposite orientation.
    pub fn reversed(&self) -> Self {
        OrientedSubspace { n: self.n, normals: self.normals.clone(), orientation: -self.orientation }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n - self.normals.len()
    }

    pub fn normals(&self) -> &[Vector<T>] {
        &self.normals
    }

    /// Sign relative to the nested-contraction volume form.
    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn volume(&self) -> KForm<T> {
        let mut mu = KForm::volume(self.n);
        for nu in &self.normals {
            mu = contract(nu, &mu).expect("top form has positive grade");
        }
        self.signed(mu)
    }

    fn signed(&self, f: KForm<T>) -> KForm<T> {
        if self.orientation < 0 {
            -f
        } else {
            f
        }
    }

    pub fn contains(&self, v: &Vector<T>) -> bool {
        self.normals.iter().all(|nu| nu.dot(v).is_negligible())
    }

    pub fn is_tangent(&self, a: &KForm<T>) -> Result<bool> {
        if a.grade() == 0 {
            return Ok(true);
        }
        for nu in &self.normals {
            if !contract(nu, a)?.is_negligible() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Orthogonal projection of a vector onto the subspace.
    pub fn project(&self, v: &Vector<T>) -> Vector<T> {
        self.normals.iter().fold(v.clone(), |acc, nu| acc.axpy(&-v.dot(nu), nu))
    }

    /// Pullback-and-extend: drops every component along the normals.
    pub fn restrict(&self, a: &KForm<T>) -> Result<KForm<T>> {
        let mut out = a.clone();
        for nu in &self.normals {
            out = restrict(&out, nu)?;
        }
        Ok(out)
    }

    /// Hodge star of the induced metric and orientation, for forms tangent to the subspace.
    pub fn star(&self, a: &KForm<T>) -> Result<KForm<T>> {
        if a.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: a.n() });
        }
        if !self.is_tangent(a)? {
            return Err(Error::NotTangent("form"));
        }
        let mut acc = a.clone();
        for nu in self.normals.iter().rev() {
            acc = wedge(&flat(nu), &acc)?;
        }
        Ok(self.signed(hodge(&acc)))
    }
}

/// Hodge star on `ξ^⊥` with orientation `ξ⌟e^{1..n}`.
pub fn hodge_hyperplane<T: Scalar>(a: &KForm<T>, xi: &Vector<T>) -> Result<KForm<T>> {
    OrientedSubspace::hyperplane(xi)?.star(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn star_of_one_is_volume() {
        let e7 = Vector::<Rational>::basis(7, 7);
        let s = OrientedSubspace::hyperplane(&e7).unwrap();
        let one = KForm::scalar(7, Rational::from_i64(1));
        assert_eq!(s.star(&one).unwrap(), s.volume());
        assert_eq!(s.volume(), KForm::basis(7, &[1, 2, 3, 4, 5, 6]));
        assert!(s.star(&KForm::basis(7, &[7])).is_err());
    }

    #[test]
    fn nested_volume() {
        let s = OrientedSubspace::<Rational>::ambient(8)
            .with_normal(&Vector::basis(8, 4))
            .unwrap()
            .with_normal(&Vector::basis(8, 5))
            .unwrap();
        assert_eq!(s.dim(), 6);
        let one = KForm::scalar(8, Rational::from_i64(1));
        assert_eq!(s.star(&one).unwrap(), s.volume());
        assert_eq!(s.reversed().volume(), -s.volume());
    }
}
