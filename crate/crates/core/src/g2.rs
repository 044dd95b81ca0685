//! G₂ structures: the calibration 3-form, its metric, cross product, the
//! vector-valued forms ψ and χ, associative/coassociative planes and the
//! splitting `E ⊕ V` determined by a 2-plane.

use crate::check::{run_battery, CheckOutcome, Identity, Sample};
use crate::error::{Error, Result};
use crate::form::{
    contract, contract_last, eval, flat, hodge, norm_sq, sharp, wedge, wedge_all, KForm,
};
use crate::linalg::{complete_orthogonal, gram_det, reject};
use crate::octonion::{associator, SignedPermutation};
use crate::sampling::Sampler;
use crate::scalar::{Rational, Scalar};
use crate::subspace::OrientedSubspace;
use crate::vector::{check_orthonormal, Vector};
use crate::vvf::VectorValuedForm;

/// `φ₀` as `(coefficient, indices)` terms.
pub const PHI0_TERMS: [(i64, [usize; 3]); 7] = [
    (1, [1, 2, 3]),
    (1, [1, 4, 5]),
    (1, [1, 6, 7]),
    (1, [2, 4, 6]),
    (-1, [2, 5, 7]),
    (-1, [3, 4, 7]),
    (-1, [3, 5, 6]),
];

/// Signed permutation `P` with `P*φ_oct = φ₀`, i.e. `φ₀(u,v,w) = φ_oct(Pu,Pv,Pw)`.
pub fn octonion_witness() -> SignedPermutation {
    SignedPermutation { perm: WITNESS_PERM.to_vec(), signs: WITNESS_SIGNS.to_vec() }
}

const WITNESS_PERM: [usize; 7] = [1, 2, 3, 4, 5, 6, 7];
const WITNESS_SIGNS: [i8; 7] = [1, 1, 1, 1, -1, -1, 1];

/// A G₂ 3-form on a 7-dimensional oriented subspace of ℝⁿ (n = 7 or 8).
/// The orientation is the one determined by the form itself.
#[derive(Clone, Debug, PartialEq)]
pub struct G2Structure<T> {
    phi: KForm<T>,
    star_phi: KForm<T>,
    space: OrientedSubspace<T>,
}

pub fn phi0_form<T: Scalar>() -> KForm<T> {
    let mut f = KForm::zero(7, 3);
    for (c, ix) in PHI0_TERMS {
        f = &f + &KForm::basis(7, &ix).scale(&T::from_i64(c));
    }
    f
}

pub fn phi0<T: Scalar>() -> G2Structure<T> {
    let phi = phi0_form();
    G2Structure { star_phi: hodge(&phi), phi, space: OrientedSubspace::ambient(7) }
}

/// `c` with `a = c·b`, if `a` is a multiple of the nonzero form `b`.
pub fn form_ratio<T: Scalar>(a: &KForm<T>, b: &KForm<T>) -> Option<T> {
    let (bl, c) = b.terms().next()?;
    let r = a.coeff(bl) / c.clone();
    a.axpy(&-r.clone(), b).ok()?.is_negligible().then_some(r)
}

impl<T: Scalar> G2Structure<T> {
    /// Wraps `phi` on `space`, fixing the orientation so that the metric
    /// recovered from `phi` is positive.
    pub fn on_subspace(phi: KForm<T>, space: OrientedSubspace<T>) -> Result<Self> {
        if space.dim() != 7 {
            return Err(Error::UnsupportedDimension(space.dim()));
        }
        if phi.grade() != 3 {
            return Err(Error::GradeMismatch { expected: 3, found: phi.grade() });
        }
        if !space.is_tangent(&phi)? {
            return Err(Error::NotTangent("form"));
        }
        let n = space.n();
        let u = (1..=n)
            .map(|i| space.project(&Vector::basis(n, i)))
            .find(|v| !v.is_negligible())
            .expect("subspace is nonzero");
        let iu = contract(&u, &phi)?;
        let w = wedge_all(&[&iu, &iu, &phi])?;
        let six_mu = space.volume().scale(&(T::from_i64(6) * u.norm_sq()));
        let r = form_ratio(&w, &six_mu).ok_or(Error::NotG2Form)?;
        let space = if (r.clone() - T::one()).is_negligible() {
            space
        } else if (r + T::one()).is_negligible() {
            space.reversed()
        } else {
            return Err(Error::NotG2Form);
        };
        let star_phi = space.star(&phi)?;
        Ok(G2Structure { phi, star_phi, space })
    }

    pub fn from_rational(g: &G2Structure<Rational>) -> Self {
        G2Structure {
            phi: KForm::from_rational(&g.phi),
            star_phi: KForm::from_rational(&g.star_phi),
            space: subspace_from_rational(&g.space),
        }
    }

    pub fn phi(&self) -> &KForm<T> {
        &self.phi
    }

    pub fn star_phi(&self) -> &KForm<T> {
        &self.star_phi
    }

    pub fn space(&self) -> &OrientedSubspace<T> {
        &self.space
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn volume(&self) -> KForm<T> {
        self.space.volume()
    }

    /// Hodge star of the G₂ metric and orientation.
    pub fn star(&self, a: &KForm<T>) -> Result<KForm<T>> {
        self.space.star(a)
    }

    /// True for `φ₀` on ℝ⁷ with its standard orientation.
    pub fn is_standard(&self) -> bool {
        self.n() == 7
            && self.space.orientation() == 1
            && self.space.normals().is_empty()
            && self.phi.approx_eq(&phi0_form())
    }

    fn check_tangent(&self, vs: &[&Vector<T>]) -> Result<()> {
        for v in vs {
            v.check_dim(self.n())?;
            if !self.space.contains(v) {
                return Err(Error::NotTangent("vector"));
            }
        }
        Ok(())
    }
}

pub(crate) fn subspace_from_rational<T: Scalar>(s: &OrientedSubspace<Rational>) -> OrientedSubspace<T> {
    let mut out = OrientedSubspace::ambient(s.n());
    for nu in s.normals() {
        out = out.with_normal(&Vector::from_rational(nu)).expect("unit normals stay unit");
    }
    if s.orientation() < 0 {
        out.reversed()
    } else {
        out
    }
}

/// `[i_uφ ∧ i_vφ ∧ φ] / 6μ`.
pub fn metric_from_phi<T: Scalar>(g: &G2Structure<T>, u: &Vector<T>, v: &Vector<T>) -> Result<T> {
    let w = wedge_all(&[&contract(u, &g.phi)?, &contract(v, &g.phi)?, &g.phi])?;
    let six_mu = g.volume().scale(&T::from_i64(6));
    form_ratio(&w, &six_mu).ok_or_else(|| Error::Inconsistent("7-form not proportional to μ".into()))
}

/// `u×v = (v⌟u⌟φ)^#`, so that `φ(u,v,w) = ⟨u×v, w⟩`.
pub fn cross_of<T: Scalar>(g: &G2Structure<T>, u: &Vector<T>, v: &Vector<T>) -> Result<Vector<T>> {
    sharp(&contract(v, &contract(u, &g.phi)?)?)
}

/// `ψ` with `⟨ψ(u,v), w⟩ = φ(u,v,w)`.
pub fn psi_of<T: Scalar>(g: &G2Structure<T>) -> Result<VectorValuedForm<T>> {
    let n = g.n();
    VectorValuedForm::from_fn(n, |i| contract_last(&Vector::basis(n, i), &g.phi))
}

/// `χ` with `⟨χ(u,v,w), z⟩ = *φ(u,v,w,z)`.
pub fn chi_of<T: Scalar>(g: &G2Structure<T>) -> Result<VectorValuedForm<T>> {
    let n = g.n();
    VectorValuedForm::from_fn(n, |i| contract_last(&Vector::basis(n, i), &g.star_phi))
}

/// The vector `χ(u,v,w)`.
pub fn chi_eval<T: Scalar>(
    g: &G2Structure<T>,
    u: &Vector<T>,
    v: &Vector<T>,
    w: &Vector<T>,
) -> Result<Vector<T>> {
    // ⟨χ(u,v,w), z⟩ = *φ(u,v,w,z) = (w⌟v⌟u⌟*φ)(z)
    sharp(&crate::form::contract_seq(&[u, v, w], &g.star_phi)?)
}

/// Associativity of `span(p)`: `χ` vanishes on the plane, cross-checked
/// against `φ(p)² = det Gram(p)`.
pub fn is_associative<T: Scalar>(g: &G2Structure<T>, p: &[Vector<T>; 3]) -> Result<bool> {
    g.check_tangent(&[&p[0], &p[1], &p[2]])?;
    let gram = gram_det(p);
    if gram.is_negligible() {
        return Err(Error::DegenerateSpan);
    }
    let by_chi = chi_eval(g, &p[0], &p[1], &p[2])?.is_negligible();
    let f = eval(&g.phi, &[&p[0], &p[1], &p[2]])?;
    let by_phi = (f.clone() * f - gram).is_negligible();
    if by_chi != by_phi {
        return Err(Error::Inconsistent("χ and φ associativity criteria disagree".into()));
    }
    Ok(by_chi)
}

/// `φ` vanishes identically on `span(q)`.
pub fn is_coassociative<T: Scalar>(g: &G2Structure<T>, q: &[Vector<T>; 4]) -> Result<bool> {
    g.check_tangent(&[&q[0], &q[1], &q[2], &q[3]])?;
    if gram_det(q).is_negligible() {
        return Err(Error::DegenerateSpan);
    }
    for (a, b, c) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        if !eval(&g.phi, &[&q[a], &q[b], &q[c]])?.is_negligible() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `T = E ⊕ V` with `E = (u, v, u×v)` associative and `V = E^⊥` coassociative.
///
/// `V` is completed by Gram–Schmidt over the coordinate basis; its vectors are
/// pairwise orthogonal and normalized whenever the length is rational.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitEV<T> {
    pub e: [Vector<T>; 3],
    pub v: [Vector<T>; 4],
    pub source: (Vector<T>, Vector<T>),
}

pub fn split_from_2plane<T: Scalar>(g: &G2Structure<T>, u: &Vector<T>, v: &Vector<T>) -> Result<SplitEV<T>> {
    g.check_tangent(&[u, v])?;
    check_orthonormal(&[u.clone(), v.clone()])?;
    let w = cross_of(g, u, v)?;
    let e = [u.clone(), v.clone(), w];
    let rest = complete_orthogonal(g.n(), &e, g.space.normals(), 4);
    let v4: [Vector<T>; 4] = rest.try_into().map_err(|_| Error::Inconsistent("completion".into()))?;
    Ok(SplitEV { e, v: v4, source: (u.clone(), v.clone()) })
}

/// The complex structure `j(X) = χ(u,v,X)` on the normal space of the
/// associative plane spanned by `u, v, u×v`.
pub fn normal_complex_structure<T: Scalar>(
    g: &G2Structure<T>,
    u: &Vector<T>,
    v: &Vector<T>,
    x: &Vector<T>,
) -> Result<Vector<T>> {
    g.check_tangent(&[u, v, x])?;
    check_orthonormal(&[u.clone(), v.clone()])?;
    let w = cross_of(g, u, v)?;
    if ![u, v, &w].iter().all(|e| e.dot(x).is_negligible()) {
        return Err(Error::NotTangent("vector"));
    }
    chi_eval(g, u, v, x)
}

struct G2Input {
    u: Vector<Rational>,
    v: Vector<Rational>,
    w: Vector<Rational>,
    z: Vector<Rational>,
    beta: Vector<Rational>,
    forms: Vec<KForm<Rational>>,
    frame: Vec<Vector<Rational>>,
    x: Vector<Rational>,
    rot: (Rational, Rational),
}

fn g2_identities(with_associator: bool) -> Vec<Identity> {
    let mut ids = vec![
        Identity::new("metric_recovery", "⟨u,v⟩ = [i_uφ∧i_vφ∧φ]/6μ", &["⟨u,v⟩"]),
        Identity::predicate("phi_norms", "|φ|² = |*φ|² = 7"),
        Identity::new("phi_wedge_one_form", "|φ∧β|² = 4|β|²", &["4|β|²"]),
        Identity::new("star_phi_wedge_one_form", "|*φ∧β|² = 3|β|²", &["3|β|²"]),
        Identity::new("contraction_wedge_phi", "(ξ⌟φ)∧φ = 2*(ξ⌟φ)", &["2*(ξ⌟φ)"]),
        Identity::new("star_wedge_star_phi", "*[*(β∧*φ)∧*φ] = 3β", &["3β"]),
        Identity::new("double_cross", "β×(β×u) = −|β|²u + ⟨β,u⟩β", &["−|β|²u + ⟨β,u⟩β"]),
    ];
    for k in 1..=7 {
        ids.push(Identity::new(
            format!("star_contraction_grade_{k}"),
            format!("*(ξ⌟α) = (−1)^(k+1) ξ^#∧*α, k = {k}"),
            &["(−1)^(k+1) ξ^#∧*α"],
        ));
    }
    ids.extend([
        Identity::new("cross_product_pairing", "φ(u,v,w) = ⟨u×v, w⟩", &["⟨u×v, w⟩"]),
        Identity::new("psi_pairing", "⟨ψ(u,v), w⟩ = φ(u,v,w)", &["φ(u,v,w)"]),
        Identity::new("chi_pairing", "⟨χ(u,v,w), z⟩ = *φ(u,v,w,z)", &["*φ(u,v,w,z)"]),
        Identity::predicate("chi_normal", "χ(u,v,w) ⊥ u, v, w"),
        Identity::new("chi_norm", "φ(u,v,w)² + |χ(u,v,w)|² = |u∧v∧w|²", &["|u∧v∧w|²"]),
        Identity::predicate("split_planes", "E = ⟨u, v, u×v⟩ associative, V = E^⊥ coassociative"),
        Identity::predicate("normal_complex_structure", "j(X) = χ(u,v,X): j² = −1, |jX| = |X|, jX ⊥ E"),
        Identity::predicate("normal_complex_structure_plane", "j depends only on the oriented plane ⟨u,v⟩"),
    ]);
    if with_associator {
        ids.push(Identity::new(
            "associator",
            "φ(u,v,w)² + |[u,v,w]|²/4 = |u∧v∧w|²",
            &["|u∧v∧w|²"],
        ));
        ids.push(Identity::new("associator_chi", "[u,v,w] = 2χ(u,v,w)", &["2χ(u,v,w)"]));
    }
    ids
}

fn sample_g2_inputs(space: &OrientedSubspace<Rational>, samples: usize, seed: u64) -> Vec<G2Input> {
    let mut s = Sampler::new(seed);
    (0..samples)
        .map(|_| {
            let frame = s.tangent_frame(space, 2, 2);
            let x = s.tangent_vector(space);
            G2Input {
                u: s.tangent_vector(space),
                v: s.tangent_vector(space),
                w: s.tangent_vector(space),
                z: s.tangent_vector(space),
                beta: s.tangent_vector(space),
                forms: (1..=7).map(|k| s.tangent_form(space, k)).collect(),
                frame,
                x,
                rot: s.rotation(),
            }
        })
        .collect()
}

fn g2_row<T: Scalar>(g: &G2Structure<T>, inp: &G2Input, with_associator: bool) -> Vec<Result<Sample<T>>> {
    let n = g.n();
    let c = |v: &Vector<Rational>| Vector::<T>::from_rational(v);
    let (u, v, w, z, beta) = (c(&inp.u), c(&inp.v), c(&inp.w), c(&inp.z), c(&inp.beta));
    let b = flat(&beta);
    let int = |x: i64| T::from_i64(x);
    let mut row: Vec<Result<Sample<T>>> = vec![
        metric_from_phi(g, &u, &v).map(|m| Sample::scalars(n, m, vec![u.dot(&v)])),
        Ok(Sample::Holds(
            (norm_sq(&g.phi) - int(7)).is_negligible() && (norm_sq(&g.star_phi) - int(7)).is_negligible(),
        )),
        wedge(&g.phi, &b).map(|f| Sample::scalars(n, norm_sq(&f), vec![int(4) * norm_sq(&b)])),
        wedge(&g.star_phi, &b).map(|f| Sample::scalars(n, norm_sq(&f), vec![int(3) * norm_sq(&b)])),
        (|| {
            let xp = contract(&beta, &g.phi)?;
            Ok(Sample::forms(wedge(&xp, &g.phi)?, vec![g.star(&xp)?.scale(&int(2))]))
        })(),
        (|| {
            let inner_star = g.star(&wedge(&b, &g.star_phi)?)?;
            let lhs = g.star(&wedge(&inner_star, &g.star_phi)?)?;
            Ok(Sample::forms(lhs, vec![b.scale(&int(3))]))
        })(),
        (|| {
            let lhs = cross_of(g, &beta, &cross_of(g, &beta, &u)?)?;
            let rhs = u.scale(&-beta.norm_sq()).axpy(&beta.dot(&u), &beta);
            Ok(Sample::vectors(&lhs, &[rhs]))
        })(),
    ];
    for (k, alpha) in (1..=7).zip(&inp.forms) {
        let alpha = KForm::<T>::from_rational(alpha);
        row.push((|| {
            let lhs = g.star(&contract(&beta, &alpha)?)?;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let rhs = wedge(&b, &g.star(&alpha)?)?.scale(&int(sign));
            Ok(Sample::forms(lhs, vec![rhs]))
        })());
    }
    row.push((|| {
        let lhs = eval(&g.phi, &[&u, &v, &w])?;
        Ok(Sample::scalars(n, lhs, vec![cross_of(g, &u, &v)?.dot(&w)]))
    })());
    row.push((|| {
        let psi = psi_of(g)?.eval(&[&u, &v])?;
        Ok(Sample::scalars(n, psi.dot(&w), vec![eval(&g.phi, &[&u, &v, &w])?]))
    })());
    let chi = chi_eval(g, &u, &v, &w);
    row.push((|| {
        let lhs = chi_of(g)?.eval(&[&u, &v, &w])?.dot(&z);
        Ok(Sample::scalars(n, lhs, vec![eval(&g.star_phi, &[&u, &v, &w, &z])?]))
    })());
    row.push(chi.clone().map(|x| {
        Sample::Holds([&u, &v, &w].iter().all(|a| a.dot(&x).is_negligible()))
    }));
    row.push((|| {
        let x = chi.clone()?;
        let f = eval(&g.phi, &[&u, &v, &w])?;
        Ok(Sample::scalars(n, f.clone() * f + x.norm_sq(), vec![gram_det(&[u.clone(), v.clone(), w.clone()])]))
    })());
    let (f1, f2) = (c(&inp.frame[0]), c(&inp.frame[1]));
    let split = split_from_2plane(g, &f1, &f2);
    row.push((|| {
        let sp = split.clone()?;
        Ok(Sample::Holds(is_associative(g, &sp.e)? && is_coassociative(g, &sp.v)?))
    })());
    let xnormal = split.clone().map(|sp| reject(&c(&inp.x), &sp.e));
    row.push((|| {
        let (sp, x) = (split.clone()?, xnormal.clone()?);
        let jx = normal_complex_structure(g, &f1, &f2, &x)?;
        let jjx = normal_complex_structure(g, &f1, &f2, &jx)?;
        let perp = sp.e.iter().all(|e| e.dot(&jx).is_negligible());
        Ok(Sample::Holds(perp && jjx.approx_eq(&-&x) && (jx.norm_sq() - x.norm_sq()).is_negligible()))
    })());
    row.push((|| {
        let x = xnormal.clone()?;
        let (cs, sn) = (T::from_rational(&inp.rot.0), T::from_rational(&inp.rot.1));
        let f1r = f1.scale(&cs).axpy(&sn, &f2);
        let f2r = f2.scale(&cs).axpy(&-sn, &f1);
        let a = normal_complex_structure(g, &f1, &f2, &x)?;
        let b = normal_complex_structure(g, &f1r, &f2r, &x)?;
        Ok(Sample::Holds(a.approx_eq(&b)))
    })());
    if with_associator {
        let p = octonion_witness();
        let pinv = p.inverse();
        let assoc = pinv.apply(&associator(&p.apply(&u), &p.apply(&v), &p.apply(&w)));
        row.push((|| {
            let f = eval(&g.phi, &[&u, &v, &w])?;
            let lhs = f.clone() * f + assoc.norm_sq() / int(4);
            Ok(Sample::scalars(n, lhs, vec![gram_det(&[u.clone(), v.clone(), w.clone()])]))
        })());
        row.push(chi.map(|x| Sample::vectors(&assoc, &[x.scale(&int(2))])));
    }
    row
}

/// The G₂ identity suite on `samples` seeded inputs tangent to the structure's
/// subspace. Inputs are drawn as rationals and evaluated in backend `T`.
pub fn verify_g2_identities<T: Scalar>(
    g: &G2Structure<Rational>,
    samples: usize,
    seed: u64,
) -> Vec<CheckOutcome> {
    let with_assoc = g.is_standard();
    let inputs = sample_g2_inputs(g.space(), samples, seed);
    let gt = G2Structure::<T>::from_rational(g);
    run_battery(g2_identities(with_assoc), &inputs, |inp| g2_row(&gt, inp, with_assoc))
}
