//! Seeded generators of exact rational test data.
//!
//! Unit vectors come from inverse stereographic projection
//! `(2q, |q|²−1)/(|q|²+1)`; orthonormal frames are images of coordinate
//! frames under products of Householder reflections. Both stay rational.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blade::Blade;
use crate::form::KForm;
use crate::linalg::reflect;
use crate::scalar::{ratio, Rational, Scalar};
use crate::subspace::OrientedSubspace;
use crate::vector::Vector;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x6732_5350_494e_37;

pub struct Sampler {
    rng: ChaCha8Rng,
}

type Q = Rational;

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Independent child stream, so adding draws in one suite never shifts another.
    pub fn fork(&mut self, tag: u64) -> Sampler {
        let s: u64 = self.rng.gen();
        Sampler::new(s ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn rational(&mut self) -> Q {
        ratio(self.rng.gen_range(-6..=6), self.rng.gen_range(1..=4))
    }

    pub fn nonzero_rational(&mut self) -> Q {
        loop {
            let q = self.rational();
            if !Scalar::is_zero(&q) {
                return q;
            }
        }
    }

    pub fn vector(&mut self, n: usize) -> Vector<Q> {
        Vector::new((0..n).map(|_| self.rational()).collect())
    }

    pub fn nonzero_vector(&mut self, n: usize) -> Vector<Q> {
        loop {
            let v = self.vector(n);
            if !v.is_negligible() {
                return v;
            }
        }
    }

    /// Rational unit vector by inverse stereographic projection, with a random
    /// signed coordinate shuffle so no axis is preferred.
    pub fn unit_vector(&mut self, n: usize) -> Vector<Q> {
        let q: Vec<Q> = (0..n - 1)
            .map(|_| ratio(self.rng.gen_range(-3..=3), self.rng.gen_range(1..=2)))
            .collect();
        let s: Q = q.iter().fold(Scalar::zero(), |acc: Q, x| acc + x * x);
        let den = s.clone() + Q::from_i64(1);
        let mut c: Vec<Q> = q.iter().map(|x| Q::from_i64(2) * x / den.clone()).collect();
        c.push((s - Q::from_i64(1)) / den);
        c.shuffle(&mut self.rng);
        for x in c.iter_mut() {
            if self.rng.gen_bool(0.5) {
                *x = -x.clone();
            }
        }
        Vector::new(c)
    }

    /// Random k-form with a handful of nonzero rational coefficients.
    pub fn form(&mut self, n: usize, k: usize) -> KForm<Q> {
        let blades = Blade::all(n, k);
        let terms = self.rng.gen_range(1..=blades.len().min(6));
        let mut f = KForm::zero(n, k);
        for _ in 0..terms {
            let b = *blades.choose(&mut self.rng).expect("nonempty");
            f.add_term(b, self.rational());
        }
        f
    }

    fn reflector(&mut self, support: usize, n: usize) -> Vector<Q> {
        loop {
            let mut c: Vec<Q> = (0..support).map(|_| ratio(self.rng.gen_range(-2..=2), 1)).collect();
            c.resize(n, Q::from_i64(0));
            let w = Vector::new(c);
            if !w.is_negligible() {
                return w;
            }
        }
    }

    /// Orthonormal `m`-frame of ℝⁿ: a signed coordinate frame moved by `reflections`
    /// random Householder reflections.
    pub fn frame(&mut self, n: usize, m: usize, reflections: usize) -> Vec<Vector<Q>> {
        self.tangent_frame(&OrientedSubspace::ambient(n), m, reflections)
    }

    /// Orthonormal `m`-frame inside `space`.
    pub fn tangent_frame(
        &mut self,
        space: &OrientedSubspace<Q>,
        m: usize,
        reflections: usize,
    ) -> Vec<Vector<Q>> {
        let n = space.n();
        let d = space.dim();
        assert!(m <= d, "frame larger than the subspace");
        // reflections carrying e_n, e_{n-1}, … onto the normals
        let mut carry: Vec<Vector<Q>> = Vec::new();
        for (j, nu) in space.normals().iter().enumerate() {
            let c = apply_all(&carry, &Vector::basis(n, n - j));
            if !(&c - nu).is_negligible() {
                carry.push(&c - nu);
            }
        }
        let spin: Vec<Vector<Q>> = (0..reflections).map(|_| self.reflector(d, n)).collect();
        let mut idx: Vec<usize> = (1..=d).collect();
        idx.shuffle(&mut self.rng);
        idx.into_iter()
            .take(m)
            .map(|i| {
                let mut v = Vector::basis(n, i);
                if self.rng.gen_bool(0.5) {
                    v = -v;
                }
                apply_all(&carry, &apply_all(&spin, &v))
            })
            .collect()
    }

    /// Unit vector inside `space`.
    pub fn tangent_unit(&mut self, space: &OrientedSubspace<Q>) -> Vector<Q> {
        if space.normals().is_empty() {
            return self.unit_vector(space.n());
        }
        self.tangent_frame(space, 1, 2).remove(0)
    }

    /// Arbitrary vector inside `space`.
    pub fn tangent_vector(&mut self, space: &OrientedSubspace<Q>) -> Vector<Q> {
        let v = self.vector(space.n());
        space.project(&v)
    }

    /// Random form tangent to `space`.
    pub fn tangent_form(&mut self, space: &OrientedSubspace<Q>, k: usize) -> KForm<Q> {
        let f = self.form(space.n(), k);
        space.restrict(&f).expect("normals are unit vectors")
    }

    /// Rational point `(c, s)` on the unit circle.
    pub fn rotation(&mut self) -> (Q, Q) {
        let t = ratio(self.rng.gen_range(-4..=4), self.rng.gen_range(1..=3));
        let den = Q::from_i64(1) + &t * &t;
        ((Q::from_i64(1) - &t * &t) / den.clone(), Q::from_i64(2) * t / den)
    }
}

/// Applies reflections in order: `carry[0]` first.
fn apply_all(ws: &[Vector<Q>], v: &Vector<Q>) -> Vector<Q> {
    ws.iter().fold(v.clone(), |acc, w| reflect(&acc, w))
}
