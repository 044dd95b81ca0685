//! Calabi–Yau data induced on the hyperplane `X_ξ = ξ^⊥` of a G₂ structure:
//! `ω_ξ = ⟨ψ, ξ⟩`, `J_ξ(X) = X×ξ`, `Re Ω_ξ = φ|_{X_ξ}`, `Im Ω_ξ = ⟨χ, ξ⟩`.

use std::fmt;

use serde::Serialize;

use crate::check::{run_battery, CheckOutcome, Identity, Sample};
use crate::error::{Error, Result};
use crate::form::{contract, eval, flat, inner, restrict, wedge, wedge_all, KForm};
use crate::g2::{chi_of, cross_of, psi_of, split_from_2plane, G2Structure, SplitEV};
use crate::linalg::{in_span, reject, Matrix};
use crate::sampling::Sampler;
use crate::scalar::{Rational, Scalar};
use crate::subspace::OrientedSubspace;
use crate::vector::{check_orthonormal, Vector};

#[derive(Clone, Debug, PartialEq)]
pub struct InducedCY<T> {
    xi: Vector<T>,
    space: OrientedSubspace<T>,
    omega: KForm<T>,
    j: Matrix<T>,
    re_omega: KForm<T>,
    im_omega: KForm<T>,
}

impl<T: Scalar> InducedCY<T> {
    pub fn xi(&self) -> &Vector<T> {
        &self.xi
    }

    /// `X_ξ` with orientation `μ_ξ = ξ⌟μ`.
    pub fn space(&self) -> &OrientedSubspace<T> {
        &self.space
    }

    pub fn omega(&self) -> &KForm<T> {
        &self.omega
    }

    /// Matrix of `X ↦ X×ξ` on the ambient space.
    pub fn j(&self) -> &Matrix<T> {
        &self.j
    }

    pub fn re_omega(&self) -> &KForm<T> {
        &self.re_omega
    }

    pub fn im_omega(&self) -> &KForm<T> {
        &self.im_omega
    }

    pub fn volume(&self) -> KForm<T> {
        self.space.volume()
    }

    /// Hodge star of `X_ξ`.
    pub fn star(&self, a: &KForm<T>) -> Result<KForm<T>> {
        self.space.star(a)
    }

    pub fn apply_j(&self, v: &Vector<T>) -> Vector<T> {
        self.j.apply(v)
    }
}

pub fn induce_cy<T: Scalar>(g: &G2Structure<T>, xi: &Vector<T>) -> Result<InducedCY<T>> {
    xi.check_dim(g.n())?;
    xi.check_unit()?;
    if !g.space().contains(xi) {
        return Err(Error::NotTangent("ξ"));
    }
    let n = g.n();
    let space = g.space().with_normal(xi)?;
    let omega = psi_of(g)?.pair(xi)?;
    let cols = (1..=n)
        .map(|i| cross_of(g, &Vector::basis(n, i), xi))
        .collect::<Result<Vec<_>>>()?;
    let re_omega = restrict(g.phi(), xi)?;
    let im_omega = chi_of(g)?.pair(xi)?;
    Ok(InducedCY { xi: xi.clone(), space, omega, j: Matrix::from_columns(&cols), re_omega, im_omega })
}

fn sign_between<T: Scalar>(a: &KForm<T>, b: &KForm<T>) -> Option<i8> {
    if a.approx_eq(b) {
        Some(1)
    } else if a.approx_eq(&-b) {
        Some(-1)
    } else {
        None
    }
}

/// Real and imaginary parts of `∧_a (f_a^# − i (J f_a)^#)` compared with `(Re Ω, Im Ω)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaExpansion<T> {
    pub re: KForm<T>,
    pub im: KForm<T>,
    /// `Some(s)` when `re = s·Re Ω`.
    pub re_sign: Option<i8>,
    pub im_sign: Option<i8>,
}

impl<T> OmegaExpansion<T> {
    pub fn agrees(&self) -> bool {
        self.re_sign == Some(1) && self.im_sign == Some(1)
    }
}

pub fn omega_expansion_check<T: Scalar>(c: &InducedCY<T>, frame: &[Vector<T>; 3]) -> Result<OmegaExpansion<T>> {
    for f in frame {
        if !c.space.contains(f) {
            return Err(Error::NotTangent("frame vector"));
        }
    }
    if crate::linalg::gram_det(frame).is_negligible() {
        return Err(Error::DegenerateSpan);
    }
    let a: Vec<KForm<T>> = frame.iter().map(flat).collect();
    let b: Vec<KForm<T>> = frame.iter().map(|f| -flat(&c.apply_j(f))).collect();
    let w = |x: &KForm<T>, y: &KForm<T>, z: &KForm<T>| wedge_all(&[x, y, z]);
    let re = &(&w(&a[0], &a[1], &a[2])? - &w(&a[0], &b[1], &b[2])?)
        - &(&w(&b[0], &a[1], &b[2])? + &w(&b[0], &b[1], &a[2])?);
    let im = &(&w(&b[0], &a[1], &a[2])? + &w(&a[0], &b[1], &a[2])?)
        + &(&w(&a[0], &a[1], &b[2])? - &w(&b[0], &b[1], &b[2])?);
    let re_sign = sign_between(&re, &c.re_omega);
    let im_sign = sign_between(&im, &c.im_omega);
    Ok(OmegaExpansion { re, im, re_sign, im_sign })
}

fn cy_identities() -> Vec<Identity> {
    vec![
        Identity::predicate("complex_structure", "J² = −1 on ξ^⊥, Jξ = 0"),
        Identity::predicate("forms_tangent", "ξ⌟ω = ξ⌟Re Ω = ξ⌟Im Ω = 0"),
        Identity::new("omega_contraction", "ω_ξ = ξ⌟φ", &["ξ⌟φ"]),
        Identity::new("symplectic_compatibility", "ω(Ju, v) = ⟨u, v⟩", &["⟨u,v⟩"]),
        Identity::new("complex_isometry", "⟨Ju, Jv⟩ = ⟨u, v⟩", &["⟨u,v⟩"]),
        Identity::new("phi_decomposition", "φ = ω_ξ∧ξ^# + Re Ω_ξ", &["ω_ξ∧ξ^#", "Re Ω_ξ"]),
        Identity::new("omega_cube", "ω_ξ³ = 6μ_ξ", &["6μ_ξ"]),
        Identity::new("star_omega", "⋆ω_ξ = ω_ξ²/2", &["ω_ξ²/2"]),
        Identity::new("star_re_omega", "⋆Re Ω_ξ = Im Ω_ξ", &["Im Ω_ξ"]),
        Identity::new("star_phi_decomposition", "*φ = ⋆ω_ξ − Im Ω_ξ∧ξ^#", &["⋆ω_ξ", "−Im Ω_ξ∧ξ^#"]),
        Identity::new("holomorphic_volume", "Ω∧Ω̄ = 8i μ_ξ, i.e. Im Ω_ξ∧Re Ω_ξ = 4μ_ξ", &["4μ_ξ"]),
        Identity::new("im_omega_contraction", "Im Ω_ξ = ξ⌟*φ", &["ξ⌟*φ"]),
    ]
}

fn cy_row<T: Scalar>(g: &G2Structure<T>, c: &InducedCY<T>, u: &Vector<T>, v: &Vector<T>) -> Vec<Result<Sample<T>>> {
    let n = g.n();
    let int = |x: i64| T::from_i64(x);
    let xi = &c.xi;
    let xf = flat(xi);
    vec![
        (|| {
            let proj = Matrix::complement_projector(n, c.space.normals());
            let jj = c.j.mul(&c.j).add(&proj);
            Ok(Sample::Holds(jj.is_negligible() && c.apply_j(xi).is_negligible()))
        })(),
        (|| {
            let mut ok = true;
            for f in [&c.omega, &c.re_omega, &c.im_omega] {
                ok &= c.space.is_tangent(f)?;
            }
            Ok(Sample::Holds(ok))
        })(),
        contract(xi, g.phi()).map(|f| Sample::forms(c.omega.clone(), vec![f])),
        eval(&c.omega, &[&c.apply_j(u), v]).map(|w| Sample::scalars(n, w, vec![u.dot(v)])),
        Ok(Sample::scalars(n, c.apply_j(u).dot(&c.apply_j(v)), vec![u.dot(v)])),
        wedge(&c.omega, &xf).map(|t| Sample::forms(g.phi().clone(), vec![t, c.re_omega.clone()])),
        wedge_all(&[&c.omega, &c.omega, &c.omega])
            .map(|w3| Sample::forms(w3, vec![c.volume().scale(&int(6))])),
        (|| {
            let sq = wedge(&c.omega, &c.omega)?.scale(&(T::one() / int(2)));
            Ok(Sample::forms(c.star(&c.omega)?, vec![sq]))
        })(),
        c.star(&c.re_omega).map(|s| Sample::forms(s, vec![c.im_omega.clone()])),
        (|| {
            let t = -wedge(&c.im_omega, &xf)?;
            Ok(Sample::forms(g.star_phi().clone(), vec![c.star(&c.omega)?, t]))
        })(),
        wedge(&c.im_omega, &c.re_omega).map(|w| Sample::forms(w, vec![c.volume().scale(&int(4))])),
        contract(xi, g.star_phi()).map(|f| Sample::forms(c.im_omega.clone(), vec![f])),
    ]
}

/// Calabi–Yau axioms for one induced structure on the given tangent pairs.
pub fn verify_cy_axioms<T: Scalar>(
    g: &G2Structure<T>,
    c: &InducedCY<T>,
    pairs: &[(Vector<T>, Vector<T>)],
) -> Vec<CheckOutcome> {
    run_battery(cy_identities(), pairs, |(u, v)| cy_row(g, c, u, v))
}

/// Calabi–Yau axioms over `samples` seeded unit vectors `ξ` tangent to the
/// G₂ structure, one random tangent pair per `ξ`.
pub fn verify_cy<T: Scalar>(g: &G2Structure<Rational>, samples: usize, seed: u64) -> Vec<CheckOutcome> {
    let mut s = Sampler::new(seed);
    let inputs: Vec<[Vector<Rational>; 3]> = (0..samples)
        .map(|_| {
            let xi = s.tangent_unit(g.space());
            let x = g.space().with_normal(&xi).expect("unit tangent");
            [xi, s.tangent_vector(&x), s.tangent_vector(&x)]
        })
        .collect();
    let gt = G2Structure::<T>::from_rational(g);
    run_battery(cy_identities(), &inputs, |[xi, u, v]| {
        let c = Vector::from_rational;
        match induce_cy(&gt, &c(xi)) {
            Ok(cy) => cy_row(&gt, &cy, &c(u), &c(v)),
            Err(e) => cy_identities().iter().map(|_| Err(e.clone())).collect(),
        }
    })
}

fn pair_identities() -> Vec<Identity> {
    vec![
        Identity::new("pair_re_omega", "Re Ω_α = ω_β∧β^# + Re Ω_β on X_α", &["ω_β∧β^#", "Re Ω_β"]),
        Identity::new(
            "pair_im_omega",
            "Im Ω_α = α⌟(⋆ω_β) − (α⌟Im Ω_β)∧β^# on X_α",
            &["α⌟(⋆ω_β)", "−(α⌟Im Ω_β)∧β^#"],
        ),
        Identity::new(
            "pair_omega",
            "ω_α = α⌟Re Ω_β + (α⌟ω_β)∧β^# on X_α",
            &["α⌟Re Ω_β", "(α⌟ω_β)∧β^#"],
        ),
        Identity::new("witness_phi_on_alpha", "φ|_{X_α} = Re Ω_α", &["Re Ω_α"]),
        Identity::new("witness_a_on_alpha", "A_{αβ}|_{X_α} = Im Ω_α", &["Im Ω_α"]),
        Identity::new("witness_a_on_beta", "A_{αβ}|_{X_β} = α⌟(⋆ω_β)", &["α⌟(⋆ω_β)"]),
        Identity::new("witness_w_on_alpha", "W_{αβ}|_{X_α} = ω_α", &["ω_α"]),
        Identity::new("witness_w_on_beta", "W_{αβ}|_{X_β} = α⌟Re Ω_β", &["α⌟Re Ω_β"]),
    ]
}

/// Global forms `A = ⟨χ, α⟩` and `W = α⌟φ` whose restrictions recover the
/// structures of `X_α` and `X_β`.
pub fn pair_witness_forms<T: Scalar>(g: &G2Structure<T>, alpha: &Vector<T>, beta: &Vector<T>) -> Result<(KForm<T>, KForm<T>)> {
    check_orthonormal(&[alpha.clone(), beta.clone()])?;
    Ok((chi_of(g)?.pair(alpha)?, contract(alpha, g.phi())?))
}

fn pair_row<T: Scalar>(g: &G2Structure<T>, alpha: &Vector<T>, beta: &Vector<T>) -> Vec<Result<Sample<T>>> {
    let setup = (|| -> Result<_> {
        check_orthonormal(&[alpha.clone(), beta.clone()])?;
        Ok((induce_cy(g, alpha)?, induce_cy(g, beta)?, pair_witness_forms(g, alpha, beta)?))
    })();
    let (ca, cb, (a, w)) = match setup {
        Ok(x) => x,
        Err(e) => return pair_identities().iter().map(|_| Err(e.clone())).collect(),
    };
    let bf = flat(beta);
    let ra = |f: KForm<T>| restrict(&f, alpha);
    let rb = |f: KForm<T>| restrict(&f, beta);
    let on_alpha = |lhs: &KForm<T>, terms: Vec<KForm<T>>| -> Result<Sample<T>> {
        Ok(Sample::forms(ra(lhs.clone())?, terms.into_iter().map(ra).collect::<Result<_>>()?))
    };
    vec![
        (|| on_alpha(ca.re_omega(), vec![wedge(cb.omega(), &bf)?, cb.re_omega().clone()]))(),
        (|| {
            let t1 = contract(alpha, &cb.star(cb.omega())?)?;
            let t2 = -wedge(&contract(alpha, cb.im_omega())?, &bf)?;
            on_alpha(ca.im_omega(), vec![t1, t2])
        })(),
        (|| {
            let t1 = contract(alpha, cb.re_omega())?;
            let t2 = wedge(&contract(alpha, cb.omega())?, &bf)?;
            on_alpha(ca.omega(), vec![t1, t2])
        })(),
        (|| Ok(Sample::forms(ra(g.phi().clone())?, vec![ca.re_omega().clone()])))(),
        (|| Ok(Sample::forms(ra(a.clone())?, vec![ca.im_omega().clone()])))(),
        (|| Ok(Sample::forms(rb(a.clone())?, vec![contract(alpha, &cb.star(cb.omega())?)?])))(),
        (|| Ok(Sample::forms(ra(w.clone())?, vec![ca.omega().clone()])))(),
        (|| Ok(Sample::forms(rb(w.clone())?, vec![contract(alpha, cb.re_omega())?])))(),
    ]
}

/// Relations between the structures induced by an orthonormal pair `(α, β)`.
pub fn check_pair_relations<T: Scalar>(g: &G2Structure<T>, alpha: &Vector<T>, beta: &Vector<T>) -> Vec<CheckOutcome> {
    run_battery(pair_identities(), &[()], |_| pair_row(g, alpha, beta))
}

/// Pair relations on the given orthonormal pairs (evaluated in backend `T`).
pub fn verify_pair_relations<T: Scalar>(
    g: &G2Structure<Rational>,
    pairs: &[(Vector<Rational>, Vector<Rational>)],
) -> Vec<CheckOutcome> {
    let gt = G2Structure::<T>::from_rational(g);
    run_battery(pair_identities(), pairs, |(a, b)| {
        pair_row(&gt, &Vector::from_rational(a), &Vector::from_rational(b))
    })
}

/// `ξ_t = ((1−t²)ξ + 2tξ′)/(1+t²)`: a rational unit path from `ξ` (t = 0) to `ξ′` (t = 1)
/// for orthonormal `ξ, ξ′`.
pub fn rational_path<T: Scalar>(xi: &Vector<T>, xi_prime: &Vector<T>, t: &T) -> Vector<T> {
    let t2 = t.mul_ref(t);
    let den = T::one() + t2.clone();
    xi.scale(&((T::one() - t2) / den.clone())).axpy(&(T::from_i64(2) * t.clone() / den), xi_prime)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Interpolation<T> {
    pub phi: KForm<T>,
    /// `ξ_t″ = ξ_t × (ξ × ξ′)`.
    pub xi_dd: Vector<T>,
    /// `⟨ω_{ξ_t}∧ξ_t^#, E⟩`.
    pub e_omega: T,
    /// `⟨Re Ω_{ξ_t}, E⟩`.
    pub e_re: T,
}

/// `Φ = ⟨ω_t∧ξ_t^#, E⟩ ξ_t″⌟⋆ω_t + ⟨Re Ω_t, E⟩ Re Ω_t`, the pairings being
/// evaluation on the ordered frame `E` of the split determined by `Λ`.
pub fn phi_interpolation<T: Scalar>(
    g: &G2Structure<T>,
    lambda: (&Vector<T>, &Vector<T>),
    xi: &Vector<T>,
    xi_prime: &Vector<T>,
    xi_t: &Vector<T>,
) -> Result<Interpolation<T>> {
    for v in [xi, xi_prime, xi_t] {
        v.check_unit()?;
    }
    let split = split_from_2plane(g, lambda.0, lambda.1)?;
    let e = &split.e;
    let c = induce_cy(g, xi_t)?;
    let xi_dd = cross_of(g, xi_t, &cross_of(g, xi, xi_prime)?)?;
    let e_omega = eval(&wedge(c.omega(), &flat(xi_t))?, &[&e[0], &e[1], &e[2]])?;
    let e_re = eval(c.re_omega(), &[&e[0], &e[1], &e[2]])?;
    let first = contract(&xi_dd, &c.star(c.omega())?)?;
    let phi = first.scale(&e_omega).axpy(&e_re, c.re_omega())?;
    Ok(Interpolation { phi, xi_dd, e_omega, e_re })
}

/// Boundary behaviour of `Φ` at both ends of the path.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationBoundary<T> {
    pub start: Interpolation<T>,
    pub end: Interpolation<T>,
    /// `Φ|_{X_ξ} = a·Re Ω_ξ + b·Im Ω_ξ`, when it lies in that real span.
    pub start_in_span: Option<(T, T)>,
    /// `Φ|_{X_ξ′} = s·ξ⌟⋆ω_{ξ′}`.
    pub end_sign: Option<i8>,
}

pub fn interpolation_boundary<T: Scalar>(
    g: &G2Structure<T>,
    lambda: (&Vector<T>, &Vector<T>),
    xi: &Vector<T>,
    xi_prime: &Vector<T>,
) -> Result<InterpolationBoundary<T>> {
    check_orthonormal(&[xi.clone(), xi_prime.clone()])?;
    let start = phi_interpolation(g, lambda, xi, xi_prime, xi)?;
    let end = phi_interpolation(g, lambda, xi, xi_prime, xi_prime)?;
    let c0 = induce_cy(g, xi)?;
    let r0 = restrict(&start.phi, xi)?;
    let a = inner(&r0, c0.re_omega())? / crate::form::norm_sq(c0.re_omega());
    let b = inner(&r0, c0.im_omega())? / crate::form::norm_sq(c0.im_omega());
    let resid = r0.axpy(&-a.clone(), c0.re_omega())?.axpy(&-b.clone(), c0.im_omega())?;
    let start_in_span = resid.is_negligible().then_some((a, b));
    let c1 = induce_cy(g, xi_prime)?;
    let r1 = restrict(&end.phi, xi_prime)?;
    let target = contract(xi, &c1.star(c1.omega())?)?;
    Ok(InterpolationBoundary { start, end, start_in_span, end_sign: sign_between(&r1, &target) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MirrorType {
    Lagrangian,
    Complex,
    Mixed,
}

impl MirrorType {
    /// Holonomy label used in the triality table.
    pub fn label(self) -> &'static str {
        match self {
            MirrorType::Lagrangian => "SU(3)",
            MirrorType::Complex => "SU(2)",
            MirrorType::Mixed => "mixed",
        }
    }
}

impl fmt::Display for MirrorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MirrorType::Lagrangian => "Lagrangian-type",
            MirrorType::Complex => "complex-type",
            MirrorType::Mixed => "mixed",
        })
    }
}

fn orthogonal_part<T: Scalar>(vs: &[Vector<T>], against: &Vector<T>) -> Vec<Vector<T>> {
    let mut basis = vec![against.clone()];
    let mut out = Vec::new();
    for v in vs {
        let r = reject(v, &basis);
        if !r.is_negligible() {
            basis.push(r.clone());
            out.push(r);
        }
    }
    out
}

/// Lagrangian-type when `J_ξ` carries `E ∩ ξ^⊥` into `V` and `ω_ξ` vanishes on it;
/// complex-type when `E ∩ ξ^⊥` is a `J_ξ`-invariant 2-plane and `V ∩ ξ^⊥` is `J_ξ`-invariant.
pub fn classify_mirror_type<T: Scalar>(g: &G2Structure<T>, split: &SplitEV<T>, xi: &Vector<T>) -> Result<MirrorType> {
    xi.check_unit()?;
    if !in_span(xi, &split.e) && !in_span(xi, &split.v) {
        return Err(Error::NotInSplit);
    }
    let c = induce_cy(g, xi)?;
    let s = orthogonal_part(&split.e, xi);
    let v = orthogonal_part(&split.v, xi);
    let mut isotropic = true;
    for (i, a) in s.iter().enumerate() {
        for b in &s[i + 1..] {
            isotropic &= eval(c.omega(), &[a, b])?.is_negligible();
        }
    }
    let lagrangian = isotropic && s.iter().all(|x| in_span(&c.apply_j(x), &v));
    let complex = s.len() == 2
        && s.iter().all(|x| in_span(&c.apply_j(x), &s))
        && v.iter().all(|x| in_span(&c.apply_j(x), &v));
    Ok(if lagrangian {
        MirrorType::Lagrangian
    } else if complex {
        MirrorType::Complex
    } else {
        MirrorType::Mixed
    })
}

/// A frame `(f_1, f_2, f_3)` of `ξ^⊥` with `f_a ⊥ f_b, J f_b` for `b < a`, taken
/// greedily from the coordinate basis and normalized when the length is rational.
/// For a unitary frame `Ω = ∧_a (f_a^# − i (J f_a)^#)`.
pub fn holomorphic_frame<T: Scalar>(c: &InducedCY<T>) -> Result<[Vector<T>; 3]> {
    let n = c.space.n();
    let mut against: Vec<Vector<T>> = c.space.normals().to_vec();
    let mut out = Vec::with_capacity(3);
    for i in 1..=n {
        if out.len() == 3 {
            break;
        }
        let r = reject(&Vector::basis(n, i), &against);
        if r.is_negligible() {
            continue;
        }
        let r = crate::linalg::normalize_if_exact(&r);
        against.push(r.clone());
        against.push(c.apply_j(&r));
        out.push(r);
    }
    out.try_into().map_err(|_| Error::Inconsistent("holomorphic frame".into()))
}
