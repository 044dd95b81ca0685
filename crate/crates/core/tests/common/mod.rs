//! Brute-force oracles independent of the library's blade arithmetic.
#![allow(dead_code)]

use holonomy_core::blade::Blade;
use holonomy_core::form::KForm;
use holonomy_core::scalar::{ratio, Rational};
use holonomy_core::vector::Vector;
use num_traits::Zero;
use proptest::prelude::*;

/// Sign of the permutation sorting `seq` (distinct entries), by counting inversions.
pub fn perm_sign(seq: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Leibniz determinant.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut total = Rational::zero();
    for p in permutations(n) {
        let mut term = Rational::from_integer(perm_sign(&p).into());
        for (r, &c) in p.iter().enumerate() {
            term *= &m[r][c];
        }
        total += term;
    }
    total
}

/// `a(v_1, …, v_k)` as `Σ_I a_I det(v_j^{i_r})`.
pub fn eval_oracle(a: &KForm<Rational>, vs: &[Vector<Rational>]) -> Rational {
    let mut total = Rational::zero();
    for (b, c) in a.terms() {
        let idx = b.indices();
        let m: Vec<Vec<Rational>> = idx.iter().map(|&i| vs.iter().map(|v| v.get(i).clone()).collect()).collect();
        total += c * det(&m);
    }
    total
}

pub fn wedge_oracle(a: &KForm<Rational>, b: &KForm<Rational>) -> KForm<Rational> {
    let n = a.n();
    let mut out = KForm::zero(n, a.grade() + b.grade());
    for (ba, ca) in a.terms() {
        for (bb, cb) in b.terms() {
            let mut seq = ba.indices();
            seq.extend(bb.indices());
            let mut sorted = seq.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != seq.len() {
                continue;
            }
            let s = Rational::from_integer(perm_sign(&seq).into());
            out = &out + &KForm::basis(n, &sorted).scale(&(ca * cb * s));
        }
    }
    out
}

pub fn hodge_oracle(a: &KForm<Rational>) -> KForm<Rational> {
    let n = a.n();
    let mut out = KForm::zero(n, n - a.grade());
    for (b, c) in a.terms() {
        let idx = b.indices();
        let comp: Vec<usize> = (1..=n).filter(|i| !idx.contains(i)).collect();
        let mut seq = idx.clone();
        seq.extend(&comp);
        let s = Rational::from_integer(perm_sign(&seq).into());
        out = &out + &KForm::basis(n, &comp).scale(&(c * s));
    }
    out
}

pub fn rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

pub fn vector(n: usize) -> impl Strategy<Value = Vector<Rational>> {
    prop::collection::vec(rat(), n).prop_map(Vector::new)
}

/// Random `k`-form on ℝⁿ with up to `max_terms` terms.
pub fn form(n: usize, k: usize, max_terms: usize) -> impl Strategy<Value = KForm<Rational>> {
    let blades = Blade::all(n, k);
    let m = blades.len();
    prop::collection::vec((0..m, rat()), 0..=max_terms).prop_map(move |terms| {
        let mut f = KForm::zero(n, k);
        for (i, c) in terms {
            f = &f + &KForm::basis(n, &blades[i].indices()).scale(&c);
        }
        f
    })
}

/// `(k, form)` with `k` drawn from `0..=n`.
pub fn any_form(n: usize, max_terms: usize) -> impl Strategy<Value = KForm<Rational>> {
    (0..=n).prop_flat_map(move |k| form(n, k, max_terms))
}

pub fn e(n: usize, i: usize) -> Vector<Rational> {
    Vector::basis(n, i)
}

pub fn f(n: usize, text: &str) -> KForm<Rational> {
    holonomy_core::dsl::parse_form(text, n).unwrap()
}
