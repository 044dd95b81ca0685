//! Octonions by Cayley–Dickson doubling of the quaternions, the induced
//! cross product on imaginary octonions, and signed-permutation equivalence
//! of forms.
//!
//! Coordinates are taken over `⟨1, i, j, k, l, l·i, l·j, l·k⟩` with products
//! read literally, so `l·i` is the sixth basis element. Internally an octonion
//! is the pair `(a, b)` of quaternions with `l = (0, 1)` and
//! `(a, b)(c, d) = (ac − d̄b, da + bc̄)`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::form::KForm;
use crate::scalar::Scalar;
use crate::vector::Vector;

type Quat<T> = [T; 4];

fn qmul<T: Scalar>(p: &Quat<T>, q: &Quat<T>) -> Quat<T> {
    let [a1, b1, c1, d1] = p;
    let [a2, b2, c2, d2] = q;
    [
        a1.mul_ref(a2) - b1.mul_ref(b2) - c1.mul_ref(c2) - d1.mul_ref(d2),
        a1.mul_ref(b2) + b1.mul_ref(a2) + c1.mul_ref(d2) - d1.mul_ref(c2),
        a1.mul_ref(c2) - b1.mul_ref(d2) + c1.mul_ref(a2) + d1.mul_ref(b2),
        a1.mul_ref(d2) + b1.mul_ref(c2) - c1.mul_ref(b2) + d1.mul_ref(a2),
    ]
}

fn qconj<T: Scalar>(p: &Quat<T>) -> Quat<T> {
    [p[0].clone(), -p[1].clone(), -p[2].clone(), -p[3].clone()]
}

fn qadd<T: Scalar>(p: Quat<T>, q: Quat<T>) -> Quat<T> {
    let [a, b, c, d] = p;
    let [w, x, y, z] = q;
    [a + w, b + x, c + y, d + z]
}

fn qsub<T: Scalar>(p: Quat<T>, q: Quat<T>) -> Quat<T> {
    let [a, b, c, d] = p;
    let [w, x, y, z] = q;
    [a - w, b - x, c - y, d - z]
}

#[derive(Clone, Debug, PartialEq)]
pub struct Octonion<T> {
    c: [T; 8],
}

pub const BASIS_NAMES: [&str; 8] = ["1", "i", "j", "k", "l", "li", "lj", "lk"];

impl<T: Scalar> Octonion<T> {
    pub fn new(c: [T; 8]) -> Self {
        Octonion { c }
    }

    pub fn zero() -> Self {
        Octonion { c: std::array::from_fn(|_| T::zero()) }
    }

    pub fn one() -> Self {
        Self::unit(0)
    }

    /// Basis element number `i` (0 = real unit).
    pub fn unit(i: usize) -> Self {
        let mut o = Self::zero();
        o.c[i] = T::one();
        o
    }

    /// The imaginary octonion with coordinates `v` over `⟨i, …, l·k⟩`.
    pub fn imaginary(v: &Vector<T>) -> Self {
        assert_eq!(v.n(), 7, "imaginary octonions have 7 coordinates");
        let mut o = Self::zero();
        for i in 0..7 {
            o.c[i + 1] = v.coords()[i].clone();
        }
        o
    }

    pub fn coords(&self) -> &[T; 8] {
        &self.c
    }

    pub fn re(&self) -> T {
        self.c[0].clone()
    }

    pub fn im(&self) -> Vector<T> {
        Vector::new(self.c[1..].to_vec())
    }

    pub fn conj(&self) -> Self {
        Octonion { c: std::array::from_fn(|i| if i == 0 { self.c[0].clone() } else { -self.c[i].clone() }) }
    }

    pub fn norm_sq(&self) -> T {
        self.c.iter().fold(T::zero(), |acc, x| acc + x.mul_ref(x))
    }

    fn to_pair(&self) -> (Quat<T>, Quat<T>) {
        let c = &self.c;
        (
            [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()],
            [c[4].clone(), -c[5].clone(), -c[6].clone(), -c[7].clone()],
        )
    }

    fn from_pair(a: Quat<T>, b: Quat<T>) -> Self {
        let [a0, a1, a2, a3] = a;
        let [b0, b1, b2, b3] = b;
        Octonion { c: [a0, a1, a2, a3, b0, -b1, -b2, -b3] }
    }

    pub fn is_negligible(&self) -> bool {
        self.c.iter().all(Scalar::is_negligible)
    }
}

pub fn oct_mul<T: Scalar>(x: &Octonion<T>, y: &Octonion<T>) -> Octonion<T> {
    let (a, b) = x.to_pair();
    let (c, d) = y.to_pair();
    let first = qsub(qmul(&a, &c), qmul(&qconj(&d), &b));
    let second = qadd(qmul(&d, &a), qmul(&b, &qconj(&c)));
    Octonion::from_pair(first, second)
}

impl<T: Scalar> Mul for &Octonion<T> {
    type Output = Octonion<T>;
    fn mul(self, rhs: Self) -> Octonion<T> {
        oct_mul(self, rhs)
    }
}

impl<T: Scalar> Add for &Octonion<T> {
    type Output = Octonion<T>;
    fn add(self, rhs: Self) -> Octonion<T> {
        Octonion { c: std::array::from_fn(|i| self.c[i].clone() + rhs.c[i].clone()) }
    }
}

impl<T: Scalar> Sub for &Octonion<T> {
    type Output = Octonion<T>;
    fn sub(self, rhs: Self) -> Octonion<T> {
        Octonion { c: std::array::from_fn(|i| self.c[i].clone() - rhs.c[i].clone()) }
    }
}

impl<T: Scalar> Neg for &Octonion<T> {
    type Output = Octonion<T>;
    fn neg(self) -> Octonion<T> {
        Octonion { c: std::array::from_fn(|i| -self.c[i].clone()) }
    }
}

/// `u × v = im(v̄·u)` on imaginary octonions.
pub fn cross7<T: Scalar>(u: &Vector<T>, v: &Vector<T>) -> Vector<T> {
    oct_mul(&Octonion::imaginary(v).conj(), &Octonion::imaginary(u)).im()
}

/// `[u, v, w] = (uv)w − u(vw)` for imaginary octonions, as a 7-vector.
/// The real part vanishes identically.
pub fn associator<T: Scalar>(u: &Vector<T>, v: &Vector<T>, w: &Vector<T>) -> Vector<T> {
    let (u, v, w) = (Octonion::imaginary(u), Octonion::imaginary(v), Octonion::imaginary(w));
    (&(&(&u * &v) * &w) - &(&u * &(&v * &w))).im()
}

/// Orthonormal triple with `u₃ ⊥ u₁×u₂`.
pub fn g2_frame_test<T: Scalar>(u1: &Vector<T>, u2: &Vector<T>, u3: &Vector<T>) -> bool {
    crate::vector::is_orthonormal(&[u1.clone(), u2.clone(), u3.clone()])
        && cross7(u1, u2).dot(u3).is_negligible()
}

/// The 3-form `φ_oct(u, v, w) = ⟨u×v, w⟩` on ℝ⁷.
pub fn phi_oct<T: Scalar>() -> KForm<T> {
    let mut f = KForm::zero(7, 3);
    for b in Blade::all(7, 3) {
        let ix = b.indices();
        let c = cross7::<T>(&Vector::basis(7, ix[0]), &Vector::basis(7, ix[1]));
        f.add_term(b, c.get(ix[2]).clone());
    }
    f
}

/// Orthogonal map `e_i ↦ s_i e_{σ(i)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    /// `σ(i)` for `i = 1..=n`, 1-based.
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation { perm: (1..=n).collect(), signs: vec![1; n] }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn is_valid(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        self.signs.len() == n
            && self.signs.iter().all(|s| *s == 1 || *s == -1)
            && self.perm.iter().all(|&p| {
                let fresh = (1..=n).contains(&p) && !seen[p];
                if fresh {
                    seen[p] = true;
                }
                fresh
            })
    }

    pub fn apply<T: Scalar>(&self, v: &Vector<T>) -> Vector<T> {
        let mut out = vec![T::zero(); self.n()];
        for i in 0..self.n() {
            let x = v.coords()[i].clone();
            out[self.perm[i] - 1] = if self.signs[i] < 0 { -x } else { x };
        }
        Vector::new(out)
    }

    /// Inverse map: `e_{σ(i)} ↦ s_i e_i`.
    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            perm[self.perm[i] - 1] = i + 1;
            signs[self.perm[i] - 1] = self.signs[i];
        }
        SignedPermutation { perm, signs }
    }

    pub fn determinant(&self) -> i8 {
        let sign_part: i8 = self.signs.iter().product();
        let (_, parity) = Blade::from_indices(&self.perm).expect("valid permutation");
        sign_part * parity
    }

    /// Pullback `(P*a)(v_1, …) = a(Pv_1, …)`.
    pub fn pullback<T: Scalar>(&self, a: &KForm<T>) -> KForm<T> {
        let mut out = KForm::zero(a.n(), a.grade());
        for b in Blade::all(a.n(), a.grade()) {
            let ix = b.indices();
            let img: Vec<usize> = ix.iter().map(|&i| self.perm[i - 1]).collect();
            let s: i64 = ix.iter().map(|&i| self.signs[i - 1] as i64).product();
            let c = a.coeff_of(&img);
            out.add_term(b, c * T::from_i64(s));
        }
        out
    }
}

fn unit_coefficients<T: Scalar>(a: &KForm<T>) -> Result<Vec<i8>> {
    let mut dense = vec![0i8; 1 << a.n()];
    for (b, c) in a.terms() {
        dense[b.mask() as usize] = if c.is_one() {
            1
        } else if (-c.clone()).is_one() {
            -1
        } else {
            return Err(Error::CoefficientRange);
        };
    }
    Ok(dense)
}

/// Lexicographically first signed permutation `P` (ordering `σ(1), s_1, σ(2), …`
/// with `+` before `−`) such that `P*a = b`, searched exhaustively with pruning.
pub fn find_signed_permutation<T: Scalar>(
    a: &KForm<T>,
    b: &KForm<T>,
) -> Result<Option<SignedPermutation>> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), found: b.n() });
    }
    if a.grade() != b.grade() {
        return Err(Error::GradeMismatch { expected: a.grade(), found: b.grade() });
    }
    let n = a.n();
    let da = unit_coefficients(a)?;
    let db = unit_coefficients(b)?;
    // blades grouped by their largest index, checked as soon as it is assigned
    let mut by_top: Vec<Vec<Blade>> = vec![Vec::new(); n + 1];
    for bl in Blade::all(n, a.grade()) {
        by_top[bl.max_index()].push(bl);
    }
    let mut search = Search { n, da, db, by_top, perm: vec![0; n], signs: vec![1; n], used: vec![false; n + 1] };
    Ok(search.dfs(1).then(|| SignedPermutation { perm: search.perm, signs: search.signs }))
}

struct Search {
    n: usize,
    da: Vec<i8>,
    db: Vec<i8>,
    by_top: Vec<Vec<Blade>>,
    perm: Vec<usize>,
    signs: Vec<i8>,
    used: Vec<bool>,
}

impl Search {
    fn consistent(&self, top: usize) -> bool {
        self.by_top[top].iter().all(|bl| {
            let ix = bl.indices();
            let img: Vec<usize> = ix.iter().map(|&i| self.perm[i - 1]).collect();
            let (ib, parity) = Blade::from_indices(&img).expect("injective");
            let s: i8 = ix.iter().map(|&i| self.signs[i - 1]).product();
            s * parity * self.da[ib.mask() as usize] == self.db[bl.mask() as usize]
        })
    }

    fn dfs(&mut self, i: usize) -> bool {
        if i > self.n {
            return true;
        }
        for target in 1..=self.n {
            if self.used[target] {
                continue;
            }
            self.used[target] = true;
            self.perm[i - 1] = target;
            for s in [1i8, -1] {
                self.signs[i - 1] = s;
                if self.consistent(i) && self.dfs(i + 1) {
                    return true;
                }
            }
            self.used[target] = false;
        }
        self.signs[i - 1] = 1;
        false
    }
}

fn octonion_identities() -> Vec<crate::check::Identity> {
    use crate::check::Identity;
    vec![
        Identity::new("norm_multiplicative", "|xy|² = |x|²|y|²", &["|x|²|y|²"]),
        Identity::predicate("conjugate_product", "conj(xy) = ȳx̄"),
        Identity::predicate("alternative", "x(xy) = (xx)y and (yx)x = y(xx)"),
        Identity::predicate("moufang", "(xy)(zx) = (x(yz))x"),
        Identity::predicate("cross_orthogonal", "u×v ⊥ u, v"),
        Identity::new("cross_norm", "|u×v|² = |u∧v|²", &["|u∧v|²"]),
        Identity::new("octonion_form", "φ_oct(u,v,w) = ⟨u×v, w⟩", &["⟨u×v, w⟩"]),
        Identity::new("witness_cross", "P(u ×_{φ₀} v) = Pu × Pv", &["Pu × Pv"]),
    ]
}

struct OctInput<Q> {
    x: Vector<Q>,
    y: Vector<Q>,
    z: Vector<Q>,
    u: Vector<Q>,
    v: Vector<Q>,
    w: Vector<Q>,
}

/// Octonion algebra identities and the transport of the cross product by
/// the stored witness, on `samples` seeded inputs.
pub fn verify_octonions<T: Scalar>(samples: usize, seed: u64) -> Vec<crate::check::CheckOutcome> {
    use crate::check::{run_battery, Sample};
    use crate::form::eval;
    use crate::g2::{cross_of, octonion_witness, phi0};
    use crate::scalar::Rational;

    let mut smp = crate::sampling::Sampler::new(seed);
    let inputs: Vec<OctInput<Rational>> = (0..samples)
        .map(|_| OctInput {
            x: smp.vector(8),
            y: smp.vector(8),
            z: smp.vector(8),
            u: smp.vector(7),
            v: smp.vector(7),
            w: smp.vector(7),
        })
        .collect();
    let g = phi0::<T>();
    let form = phi_oct::<T>();
    let wit = octonion_witness();
    let oct = |v: &Vector<Rational>| Octonion::<T>::new(std::array::from_fn(|i| T::from_rational(&v.coords()[i])));
    run_battery(octonion_identities(), &inputs, |inp| {
        let (x, y, z) = (oct(&inp.x), oct(&inp.y), oct(&inp.z));
        let c = Vector::<T>::from_rational;
        let (u, v, w) = (c(&inp.u), c(&inp.v), c(&inp.w));
        let xy = &x * &y;
        let uv = cross7(&u, &v);
        let wedge_sq = u.norm_sq() * v.norm_sq() - u.dot(&v) * u.dot(&v);
        vec![
            Ok(Sample::scalars(8, xy.norm_sq(), vec![x.norm_sq() * y.norm_sq()])),
            Ok(Sample::Holds((&xy.conj() - &(&y.conj() * &x.conj())).is_negligible())),
            Ok(Sample::Holds(
                (&(&x * &xy) - &(&(&x * &x) * &y)).is_negligible()
                    && (&(&(&y * &x) * &x) - &(&y * &(&x * &x))).is_negligible(),
            )),
            Ok(Sample::Holds((&(&xy * &(&z * &x)) - &(&(&x * &(&y * &z)) * &x)).is_negligible())),
            Ok(Sample::Holds(uv.dot(&u).is_negligible() && uv.dot(&v).is_negligible())),
            Ok(Sample::scalars(7, uv.norm_sq(), vec![wedge_sq])),
            eval(&form, &[&u, &v, &w]).map(|lhs| Sample::scalars(7, lhs, vec![uv.dot(&w)])),
            cross_of(&g, &u, &v).map(|c0| Sample::vectors(&wit.apply(&c0), &[cross7(&wit.apply(&u), &wit.apply(&v))])),
        ]
    })
}

/// Reconciles the octonion form with `φ₀`: the search finds a witness, it is
/// the stored one, it pulls `φ_oct` back to `φ₀`, and it preserves orientation.
pub fn verify_witness() -> Vec<crate::check::CheckOutcome> {
    use crate::check::{check_once, Identity, Sample};
    use crate::g2::{octonion_witness, phi0_form};
    use crate::scalar::Rational;

    let stored = octonion_witness();
    let (a, b) = (phi_oct::<Rational>(), phi0_form::<Rational>());
    let found = find_signed_permutation(&a, &b);
    vec![
        check_once::<Rational>(
            Identity::predicate("witness_search", "∃ signed permutation P with P*φ_oct = φ₀"),
            found.clone().map(|p| Sample::Holds(p.is_some())),
        ),
        check_once::<Rational>(
            Identity::predicate("witness_stored", "the first such P in search order is the stored witness"),
            found.map(|p| Sample::Holds(p.as_ref() == Some(&stored))),
        ),
        check_once::<Rational>(
            Identity::new("witness_pullback", "P*φ_oct = φ₀", &["φ₀"]),
            Ok(Sample::forms(stored.pullback(&a), vec![b])),
        ),
        check_once::<Rational>(
            Identity::predicate("witness_orientation", "det P = 1"),
            Ok(Sample::Holds(stored.is_valid() && stored.determinant() == 1)),
        ),
    ]
}
