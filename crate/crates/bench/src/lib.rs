//! Seeded inputs shared by the benchmarks.

use holonomy_core::form::KForm;
use holonomy_core::octonion::{phi_oct, SignedPermutation};
use holonomy_core::sampling::{Sampler, DEFAULT_SEED};
use holonomy_core::scalar::Rational;
use holonomy_core::vector::Vector;

pub struct Inputs {
    pub a: KForm<Rational>,
    pub b: KForm<Rational>,
    pub xi: Vector<Rational>,
    /// Octonion 3-form and its pullback by a fixed signed permutation.
    pub search: (KForm<Rational>, KForm<Rational>),
}

pub fn inputs() -> Inputs {
    let mut s = Sampler::new(DEFAULT_SEED);
    let a = s.form(7, 3);
    let b = s.form(7, 2);
    let xi = s.unit_vector(7);
    let p = SignedPermutation { perm: vec![3, 7, 1, 5, 2, 6, 4], signs: vec![1, -1, 1, 1, -1, 1, 1] };
    let f = phi_oct::<Rational>();
    let g = p.pullback(&f);
    Inputs { a, b, xi, search: (f, g) }
}
