//! Small dense linear algebra over a scalar backend.

use crate::scalar::Scalar;
use crate::vector::Vector;

/// Square matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zero(n: usize) -> Self {
        Matrix { n, rows: vec![vec![T::zero(); n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.rows[i][i] = T::one();
        }
        m
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vector<T>]) -> Self {
        let n = cols.len();
        let mut m = Self::zero(n);
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m.rows[i][j] = c.coords()[i].clone();
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(row, col)`.
    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    /// Image of `e_j` (1-based).
    pub fn column(&self, j: usize) -> Vector<T> {
        Vector::new(self.rows.iter().map(|r| r[j - 1].clone()).collect())
    }

    pub fn apply(&self, v: &Vector<T>) -> Vector<T> {
        Vector::new(
            self.rows
                .iter()
                .map(|r| {
                    let mut acc = T::zero();
                    for (a, b) in r.iter().zip(v.coords()) {
                        if !a.is_zero() && !b.is_zero() {
                            acc += a.mul_ref(b);
                        }
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cols: Vec<Vector<T>> = (1..=self.n).map(|j| self.apply(&other.column(j))).collect();
        Self::from_columns(&cols)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                m.rows[i][j] = m.rows[i][j].clone() + other.rows[i][j].clone();
            }
        }
        m
    }

    pub fn is_negligible(&self) -> bool {
        self.rows.iter().flatten().all(Scalar::is_negligible)
    }

    /// Orthogonal projection `I − Σ ν νᵀ` onto the complement of orthonormal `normals`.
    pub fn complement_projector(n: usize, normals: &[Vector<T>]) -> Self {
        let mut m = Self::identity(n);
        for nu in normals {
            for i in 0..n {
                for j in 0..n {
                    let p = nu.coords()[i].mul_ref(&nu.coords()[j]);
                    m.rows[i][j] = m.rows[i][j].clone() - p;
                }
            }
        }
        m
    }
}

/// Determinant by Gaussian elimination (exact over rationals).
pub fn det<T: Scalar>(mut rows: Vec<Vec<T>>) -> T {
    let n = rows.len();
    let mut acc = T::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return T::zero();
        };
        if p != col {
            rows.swap(p, col);
            acc = -acc;
        }
        let pivot = rows[col][col].clone();
        acc = acc * pivot.clone();
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone() / pivot.clone();
            for c in col..n {
                let sub = f.mul_ref(&rows[col][c]);
                rows[r][c] = rows[r][c].clone() - sub;
            }
        }
    }
    acc
}

pub fn gram_det<T: Scalar>(vs: &[Vector<T>]) -> T {
    let rows = vs.iter().map(|a| vs.iter().map(|b| a.dot(b)).collect()).collect();
    det(rows)
}

/// Removes from `v` its components along the pairwise orthogonal nonzero `basis`.
pub fn reject<T: Scalar>(v: &Vector<T>, basis: &[Vector<T>]) -> Vector<T> {
    let mut r = v.clone();
    for b in basis {
        let c = v.dot(b) / b.norm_sq();
        if !c.is_zero() {
            r = r.axpy(&-c, b);
        }
    }
    r
}

/// Normalizes `v` when its length is representable in the backend, else returns it unchanged.
pub fn normalize_if_exact<T: Scalar>(v: &Vector<T>) -> Vector<T> {
    match v.norm_sq().sqrt_exact() {
        Some(r) if !r.is_zero() => v.scale(&(T::one() / r)),
        _ => v.clone(),
    }
}

/// Deterministic completion of the orthogonal family `fixed` to a basis of the
/// subspace orthogonal to `normals`: Gram–Schmidt over `e_1, …, e_n` in index order.
/// Vectors are normalized when their squared length is a square in the backend.
pub fn complete_orthogonal<T: Scalar>(
    n: usize,
    fixed: &[Vector<T>],
    normals: &[Vector<T>],
    count: usize,
) -> Vec<Vector<T>> {
    let mut against: Vec<Vector<T>> = normals.iter().chain(fixed).cloned().collect();
    let mut out = Vec::with_capacity(count);
    for i in 1..=n {
        if out.len() == count {
            break;
        }
        let r = reject(&Vector::basis(n, i), &against);
        if r.is_negligible() {
            continue;
        }
        let r = normalize_if_exact(&r);
        against.push(r.clone());
        out.push(r);
    }
    out
}

/// True when `v` lies in the span of the pairwise orthogonal nonzero `basis`.
pub fn in_span<T: Scalar>(v: &Vector<T>, basis: &[Vector<T>]) -> bool {
    reject(v, basis).is_negligible()
}

/// Householder reflection `x − 2⟨x,w⟩/⟨w,w⟩ w` for any nonzero `w`.
pub fn reflect<T: Scalar>(x: &Vector<T>, w: &Vector<T>) -> Vector<T> {
    let c = T::from_i64(2) * x.dot(w) / w.norm_sq();
    x.axpy(&-c, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    #[test]
    fn determinant() {
        let m: Vec<Vec<Rational>> = vec![
            vec![ratio(0, 1), ratio(2, 1)],
            vec![ratio(3, 1), ratio(1, 2)],
        ];
        assert_eq!(det(m), ratio(-6, 1));
    }

    #[test]
    fn completion_of_coordinate_frame() {
        let fixed: Vec<Vector<Rational>> = (1..=3).map(|i| Vector::basis(7, i)).collect();
        let rest = complete_orthogonal(7, &fixed, &[], 4);
        let want: Vec<Vector<Rational>> = (4..=7).map(|i| Vector::basis(7, i)).collect();
        assert_eq!(rest, want);
    }

    #[test]
    fn reflection_is_rational_isometry() {
        let w = Vector::<Rational>::from_i64s(&[1, 2, 0, -1]);
        let x = Vector::from_i64s(&[3, 0, 1, 1]);
        let y = reflect(&x, &w);
        assert_eq!(y.norm_sq(), x.norm_sq());
        assert_eq!(reflect(&y, &w), x);
    }
}
