//! Spin(7) structures on ℝ⁸: the Cayley 4-form Ψ, the triple cross product,
//! Cayley planes, and the G₂ and Calabi–Yau structures induced on
//! hyperplanes and codimension-two planes.

use serde::Serialize;

use crate::check::{run_battery, CheckOutcome, Identity, Sample};
use crate::cy::{classify_mirror_type, induce_cy, InducedCY, MirrorType};
use crate::error::{Error, Result};
use crate::form::{contract, contract_seq, eval, flat, hodge, norm_sq, sharp, wedge, KForm};
use crate::g2::{is_associative, is_coassociative, metric_from_phi, G2Structure, SplitEV};
use crate::linalg::{complete_orthogonal, gram_det, in_span, reject};
use crate::sampling::Sampler;
use crate::scalar::{Rational, Scalar};
use crate::subspace::OrientedSubspace;
use crate::vector::{check_orthonormal, Vector};
use crate::vvf::VectorValuedForm;

pub const PSI0_TERMS: [(i64, [usize; 4]); 14] = [
    (1, [1, 2, 3, 4]),
    (1, [1, 2, 5, 6]),
    (-1, [1, 2, 7, 8]),
    (1, [1, 3, 5, 7]),
    (1, [1, 3, 6, 8]),
    (1, [1, 4, 5, 8]),
    (-1, [1, 4, 6, 7]),
    (-1, [2, 3, 5, 8]),
    (1, [2, 3, 6, 7]),
    (1, [2, 4, 5, 7]),
    (1, [2, 4, 6, 8]),
    (-1, [3, 4, 5, 6]),
    (1, [3, 4, 7, 8]),
    (1, [5, 6, 7, 8]),
];

#[derive(Clone, Debug, PartialEq)]
pub struct Spin7Structure<T> {
    psi: KForm<T>,
}

pub fn psi0_form<T: Scalar>() -> KForm<T> {
    let mut f = KForm::zero(8, 4);
    for (c, ix) in PSI0_TERMS {
        f = &f + &KForm::basis(8, &ix).scale(&T::from_i64(c));
    }
    f
}

pub fn psi0<T: Scalar>() -> Spin7Structure<T> {
    Spin7Structure { psi: psi0_form() }
}

impl<T: Scalar> Spin7Structure<T> {
    pub fn new(psi: KForm<T>) -> Result<Self> {
        if psi.n() != 8 {
            return Err(Error::UnsupportedDimension(psi.n()));
        }
        if psi.grade() != 4 {
            return Err(Error::GradeMismatch { expected: 4, found: psi.grade() });
        }
        Ok(Spin7Structure { psi })
    }

    pub fn from_rational(s: &Spin7Structure<Rational>) -> Self {
        Spin7Structure { psi: KForm::from_rational(&s.psi) }
    }

    pub fn psi(&self) -> &KForm<T> {
        &self.psi
    }

    pub fn volume(&self) -> KForm<T> {
        KForm::volume(8)
    }
}

/// `Υ` with components `Υ_i = e_i⌟Ψ`, so that `⟨Υ, γ⟩ = γ⌟Ψ`.
pub fn upsilon_of<T: Scalar>(s: &Spin7Structure<T>) -> Result<VectorValuedForm<T>> {
    VectorValuedForm::from_fn(8, |i| contract(&Vector::basis(8, i), &s.psi))
}

/// `u×v×w` with `Ψ(u,v,w,z) = ⟨u×v×w, z⟩`.
pub fn triple_cross<T: Scalar>(s: &Spin7Structure<T>, u: &Vector<T>, v: &Vector<T>, w: &Vector<T>) -> Result<Vector<T>> {
    sharp(&contract_seq(&[u, v, w], &s.psi)?)
}

/// `Ψ(q)² = det Gram(q)`: Ψ restricts to ± the volume form of the span.
pub fn is_cayley<T: Scalar>(s: &Spin7Structure<T>, q: &[Vector<T>; 4]) -> Result<bool> {
    let gram = gram_det(q);
    if gram.is_negligible() {
        return Err(Error::DegenerateSpan);
    }
    let p = eval(&s.psi, &[&q[0], &q[1], &q[2], &q[3]])?;
    Ok((p.clone() * p - gram).is_negligible())
}

/// `ℝ⁸ = K ⊕ D` with `K = ⟨u, v, w, u×v×w⟩` and `D = K^⊥`, both Cayley.
/// `D` is completed like the G₂ split: orthogonal, normalized when rational.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitKD<T> {
    pub k: [Vector<T>; 4],
    pub d: [Vector<T>; 4],
    pub source: [Vector<T>; 3],
}

pub fn split_from_3frame<T: Scalar>(s: &Spin7Structure<T>, u: &Vector<T>, v: &Vector<T>, w: &Vector<T>) -> Result<SplitKD<T>> {
    for x in [u, v, w] {
        x.check_dim(8)?;
    }
    check_orthonormal(&[u.clone(), v.clone(), w.clone()])?;
    let k = [u.clone(), v.clone(), w.clone(), triple_cross(s, u, v, w)?];
    let d: [Vector<T>; 4] = complete_orthogonal(8, &k, &[], 4)
        .try_into()
        .map_err(|_| Error::Inconsistent("completion".into()))?;
    Ok(SplitKD { k, d, source: [u.clone(), v.clone(), w.clone()] })
}

/// `φ_γ = ⟨Υ, γ⟩` on `γ^⊥`, oriented by its own metric.
pub fn induce_g2<T: Scalar>(s: &Spin7Structure<T>, gamma: &Vector<T>) -> Result<G2Structure<T>> {
    gamma.check_dim(8)?;
    gamma.check_unit()?;
    let phi = upsilon_of(s)?.pair(gamma)?;
    G2Structure::on_subspace(phi, OrientedSubspace::hyperplane(gamma)?)
}

/// `X_{αβ}`: the Calabi–Yau structure induced by `β` on `M_α`.
pub fn double_induce<T: Scalar>(s: &Spin7Structure<T>, alpha: &Vector<T>, beta: &Vector<T>) -> Result<(G2Structure<T>, InducedCY<T>)> {
    check_orthonormal(&[alpha.clone(), beta.clone()])?;
    let g = induce_g2(s, alpha)?;
    let c = induce_cy(&g, beta)?;
    Ok((g, c))
}

fn restrict_all<T: Scalar>(f: &KForm<T>, normals: &[&Vector<T>]) -> Result<KForm<T>> {
    let mut out = f.clone();
    for nu in normals {
        out = crate::form::restrict(&out, nu)?;
    }
    Ok(out)
}

fn restricted<T: Scalar>(lhs: &KForm<T>, terms: Vec<KForm<T>>, normals: &[&Vector<T>]) -> Result<Sample<T>> {
    Ok(Sample::forms(
        restrict_all(lhs, normals)?,
        terms.iter().map(|t| restrict_all(t, normals)).collect::<Result<_>>()?,
    ))
}

fn errors_for<T>(ids: &[Identity], e: Error) -> Vec<Result<Sample<T>>> {
    ids.iter().map(|_| Err(e.clone())).collect()
}

fn spin7_identities() -> Vec<Identity> {
    vec![
        Identity::new("self_duality", "*Ψ = Ψ", &["Ψ"]),
        Identity::predicate("psi_norm", "|Ψ|² = 14"),
        Identity::new("upsilon_pairing", "⟨Υ(u,v,w), z⟩ = Ψ(u,v,w,z)", &["Ψ(u,v,w,z)"]),
        Identity::predicate("upsilon_normal", "Υ(u,v,w) ⊥ u, v, w"),
        Identity::new("triple_cross_pairing", "Ψ(u,v,w,z) = ⟨u×v×w, z⟩", &["⟨u×v×w, z⟩"]),
        Identity::predicate("triple_cross_orthogonal", "u×v×w ⊥ u, v, w"),
        Identity::new("triple_cross_norm", "|u×v×w|² = |u∧v∧w|²", &["|u∧v∧w|²"]),
        Identity::predicate("cayley_split", "K = ⟨u,v,w,u×v×w⟩ and D = K^⊥ are Cayley"),
        Identity::new("phi_gamma_contraction", "⟨Υ, γ⟩ = γ⌟Ψ", &["γ⌟Ψ"]),
        Identity::new("phi_gamma_star", "γ⌟Ψ = *₈(Ψ∧γ^#)", &["*₈(Ψ∧γ^#)"]),
        Identity::new("psi_decomposition", "Ψ = φ_γ∧γ^# + *₇φ_γ", &["φ_γ∧γ^#", "*₇φ_γ"]),
        Identity::predicate("phi_gamma_metric", "⟨u,v⟩ = [i_uφ_γ∧i_vφ_γ∧φ_γ]/6μ_γ on γ^⊥"),
        Identity::new("phi_gamma_orientation", "μ_{φ_γ} = γ⌟μ₈", &["γ⌟μ₈"]),
    ]
}

struct Spin7Input {
    vs: [Vector<Rational>; 4],
    frame: Vec<Vector<Rational>>,
    gamma: Vector<Rational>,
    tangent: [Vector<Rational>; 2],
}

fn spin7_row<T: Scalar>(s: &Spin7Structure<T>, inp: &Spin7Input) -> Vec<Result<Sample<T>>> {
    let c = |v: &Vector<Rational>| Vector::<T>::from_rational(v);
    let [u, v, w, z] = [c(&inp.vs[0]), c(&inp.vs[1]), c(&inp.vs[2]), c(&inp.vs[3])];
    let gamma = c(&inp.gamma);
    let psi = &s.psi;
    let up = upsilon_of(s);
    let x = triple_cross(s, &u, &v, &w);
    let phi_g = induce_g2(s, &gamma);
    vec![
        Ok(Sample::forms(hodge(psi), vec![psi.clone()])),
        Ok(Sample::Holds((norm_sq(psi) - T::from_i64(14)).is_negligible())),
        (|| {
            let lhs = up.clone()?.eval(&[&u, &v, &w])?.dot(&z);
            Ok(Sample::scalars(8, lhs, vec![eval(psi, &[&u, &v, &w, &z])?]))
        })(),
        (|| {
            let y = up.clone()?.eval(&[&u, &v, &w])?;
            Ok(Sample::Holds([&u, &v, &w].iter().all(|a| a.dot(&y).is_negligible())))
        })(),
        (|| Ok(Sample::scalars(8, eval(psi, &[&u, &v, &w, &z])?, vec![x.clone()?.dot(&z)])))(),
        (|| {
            let y = x.clone()?;
            Ok(Sample::Holds([&u, &v, &w].iter().all(|a| a.dot(&y).is_negligible())))
        })(),
        (|| Ok(Sample::scalars(8, x.clone()?.norm_sq(), vec![gram_det(&[u.clone(), v.clone(), w.clone()])])))(),
        (|| {
            let f: Vec<Vector<T>> = inp.frame.iter().map(c).collect();
            let sp = split_from_3frame(s, &f[0], &f[1], &f[2])?;
            Ok(Sample::Holds(is_cayley(s, &sp.k)? && is_cayley(s, &sp.d)?))
        })(),
        (|| Ok(Sample::forms(up.clone()?.pair(&gamma)?, vec![contract(&gamma, psi)?])))(),
        (|| {
            let rhs = hodge(&wedge(psi, &flat(&gamma))?);
            Ok(Sample::forms(contract(&gamma, psi)?, vec![rhs]))
        })(),
        (|| {
            let g = phi_g.clone()?;
            let t1 = wedge(g.phi(), &flat(&gamma))?;
            Ok(Sample::forms(psi.clone(), vec![t1, g.star_phi().clone()]))
        })(),
        (|| {
            let g = phi_g.clone()?;
            let (a, b) = (c(&inp.tangent[0]), c(&inp.tangent[1]));
            let ok = (metric_from_phi(&g, &a, &b)? - a.dot(&b)).is_negligible()
                && (norm_sq(g.phi()) - T::from_i64(7)).is_negligible();
            Ok(Sample::Holds(ok))
        })(),
        (|| Ok(Sample::forms(phi_g.clone()?.volume(), vec![contract(&gamma, &KForm::volume(8))?])))(),
    ]
}

/// Spin(7) identity suite on `samples` seeded inputs.
pub fn verify_spin7<T: Scalar>(s: &Spin7Structure<Rational>, samples: usize, seed: u64) -> Vec<CheckOutcome> {
    let mut smp = Sampler::new(seed);
    let inputs: Vec<Spin7Input> = (0..samples)
        .map(|_| {
            let gamma = smp.unit_vector(8);
            let space = OrientedSubspace::hyperplane(&gamma).expect("unit");
            Spin7Input {
                vs: [smp.vector(8), smp.vector(8), smp.vector(8), smp.vector(8)],
                frame: smp.frame(8, 3, 2),
                tangent: [smp.tangent_vector(&space), smp.tangent_vector(&space)],
                gamma,
            }
        })
        .collect();
    let st = Spin7Structure::<T>::from_rational(s);
    run_battery(spin7_identities(), &inputs, |inp| spin7_row(&st, inp))
}

/// Runs the G₂ suite on `φ_γ` for `count` seeded unit `γ` and requires every
/// identity to pass with the same signs as on `φ₀`.
pub fn verify_induced_g2<T: Scalar>(
    s: &Spin7Structure<Rational>,
    count: usize,
    samples_each: usize,
    seed: u64,
) -> Vec<CheckOutcome> {
    let reference = crate::g2::verify_g2_identities::<T>(&crate::g2::phi0(), samples_each, seed);
    let mut smp = Sampler::new(seed ^ 0x5eed);
    let gammas: Vec<(Vector<Rational>, u64)> = (0..count).map(|i| (smp.unit_vector(8), seed + i as u64)).collect();
    let per: Vec<Result<Vec<CheckOutcome>>> = gammas
        .iter()
        .map(|(g, sd)| induce_g2(s, g).map(|gs| crate::g2::verify_g2_identities::<T>(&gs, samples_each, *sd)))
        .collect();
    let ids: Vec<Identity> = reference
        .iter()
        .filter(|o| !o.name.starts_with("associator"))
        .map(|o| Identity::predicate(format!("hyperplane_{}", o.name), format!("{} (on γ^⊥)", o.anchor)))
        .collect();
    run_battery(ids.clone(), &per, |res| match res {
        Err(e) => errors_for(&ids, e.clone()),
        Ok(outs) => ids
            .iter()
            .map(|id| {
                let name = &id.name["hyperplane_".len()..];
                let got = outs.iter().find(|o| o.name == name);
                let want = reference.iter().find(|o| o.name == name);
                Ok(Sample::<T>::Holds(match (got, want) {
                    (Some(g), Some(w)) => g.passed && w.passed && g.sign_vector() == w.sign_vector(),
                    _ => false,
                }))
            })
            .collect(),
    })
}

fn descent_identities() -> Vec<Identity> {
    vec![
        Identity::new("g2_pair", "φ_α = −α⌟(φ_β∧β^# + *₇φ_β) on M_α", &["−α⌟(φ_β∧β^# + *₇φ_β)"]),
        Identity::new("descent_complex_structure", "J_{αβ}(u) = u×β×α", &["u×β×α"]),
        Identity::new("descent_omega", "ω_{αβ} = β⌟α⌟Ψ", &["β⌟α⌟Ψ"]),
        Identity::new("descent_re_omega", "Re Ω_{αβ} = α⌟Ψ|_{X_{αβ}}", &["α⌟Ψ|_{X_{αβ}}"]),
        Identity::new("descent_im_omega", "Im Ω_{αβ} = β⌟Ψ|_{X_{αβ}}", &["β⌟Ψ|_{X_{αβ}}"]),
        Identity::new("descent_omega_cube", "ω_{αβ}³ = 6μ_{αβ}", &["6μ_{αβ}"]),
        Identity::new("descent_star_re_omega", "⋆Re Ω_{αβ} = Im Ω_{αβ}", &["Im Ω_{αβ}"]),
        Identity::new("swap_omega", "ω_{αβ} = −ω_{βα}", &["−ω_{βα}"]),
        Identity::new("swap_re_im", "Re Ω_{αβ} = −Im Ω_{βα}", &["−Im Ω_{βα}"]),
        Identity::new("swap_orientation", "μ_{αβ} = −μ_{βα}", &["−μ_{βα}"]),
    ]
}

fn descent_row<T: Scalar>(s: &Spin7Structure<T>, alpha: &Vector<T>, beta: &Vector<T>, u: &Vector<T>) -> Vec<Result<Sample<T>>> {
    let ids = descent_identities();
    let setup = (|| -> Result<_> {
        let (ga, cab) = double_induce(s, alpha, beta)?;
        let (gb, cba) = double_induce(s, beta, alpha)?;
        Ok((ga, cab, gb, cba))
    })();
    let (ga, cab, gb, cba) = match setup {
        Ok(x) => x,
        Err(e) => return errors_for(&ids, e),
    };
    let psi = &s.psi;
    let both = [alpha, beta];
    let u = cab.space().project(u);
    vec![
        (|| {
            let inner = &wedge(gb.phi(), &flat(beta))? + gb.star_phi();
            restricted(ga.phi(), vec![-contract(alpha, &inner)?], &[alpha])
        })(),
        (|| {
            let rhs = triple_cross(s, &u, beta, alpha)?;
            Ok(Sample::vectors(&cab.apply_j(&u), &[rhs]))
        })(),
        (|| Ok(Sample::forms(cab.omega().clone(), vec![contract_seq(&[alpha, beta], psi)?])))(),
        (|| restricted(cab.re_omega(), vec![contract(alpha, psi)?], &both))(),
        (|| restricted(cab.im_omega(), vec![contract(beta, psi)?], &both))(),
        (|| {
            let w3 = wedge(&wedge(cab.omega(), cab.omega())?, cab.omega())?;
            Ok(Sample::forms(w3, vec![cab.volume().scale(&T::from_i64(6))]))
        })(),
        (|| Ok(Sample::forms(cab.star(cab.re_omega())?, vec![cab.im_omega().clone()])))(),
        (|| restricted(cab.omega(), vec![-cba.omega()], &both))(),
        (|| restricted(cab.re_omega(), vec![-cba.im_omega()], &both))(),
        Ok(Sample::forms(cab.volume(), vec![-cba.volume()])),
    ]
}

/// Relations for the Calabi–Yau descendants of an orthonormal pair.
pub fn verify_descent<T: Scalar>(
    s: &Spin7Structure<Rational>,
    pairs: &[(Vector<Rational>, Vector<Rational>, Vector<Rational>)],
) -> Vec<CheckOutcome> {
    let st = Spin7Structure::<T>::from_rational(s);
    let c = Vector::<T>::from_rational;
    run_battery(descent_identities(), pairs, |(a, b, u)| descent_row(&st, &c(a), &c(b), &c(u)))
}

fn triality_identities() -> Vec<Identity> {
    vec![
        Identity::new(
            "triality_lemma_star",
            "α⌟*₆(ω_{βγ}) = α⌟Ψ + γ^#∧(α⌟γ⌟Ψ) + β^#∧(α⌟β⌟Ψ) − γ^#∧β^#∧(α⌟γ⌟β⌟Ψ)",
            &["α⌟Ψ + γ^#∧(α⌟γ⌟Ψ) + β^#∧(α⌟β⌟Ψ) − γ^#∧β^#∧(α⌟γ⌟β⌟Ψ)"],
        ),
        Identity::new("triality_lemma_im", "Im Ω_{βγ} = −γ⌟Ψ − β^#∧(γ⌟β⌟Ψ)", &["−γ⌟Ψ − β^#∧(γ⌟β⌟Ψ)"]),
        Identity::new("triality_lemma_re", "Re Ω_{αγ} = α⌟Ψ − γ^#∧(γ⌟α⌟Ψ)", &["α⌟Ψ − γ^#∧(γ⌟α⌟Ψ)"]),
        Identity::new(
            "triality_re",
            "Re Ω_{αγ} = α⌟(*₆ω_{βγ}) + ω_{αβ}∧β^# on X_{αγ}",
            &["α⌟(*₆ω_{βγ})", "ω_{αβ}∧β^#"],
        ),
        Identity::new(
            "triality_im",
            "Im Ω_{αγ} = ω_{βγ}∧β^# − γ⌟*₆(ω_{αβ}) on X_{αγ}",
            &["ω_{βγ}∧β^#", "−γ⌟*₆(ω_{αβ})"],
        ),
        Identity::new(
            "triality_omega",
            "ω_{αγ} = α⌟Im Ω_{βγ} + (γ⌟ω_{αβ})∧β^# on X_{αγ}",
            &["α⌟Im Ω_{βγ}", "(γ⌟ω_{αβ})∧β^#"],
        ),
        Identity::new(
            "triality_pair_re",
            "Re Ω_{αγ} = α⌟(*₆ω_{βγ}) − (α⌟Re Ω_{βγ})∧β^# on X_{αγ}",
            &["α⌟(*₆ω_{βγ})", "−(α⌟Re Ω_{βγ})∧β^#"],
        ),
        Identity::new(
            "triality_pair_im",
            "Im Ω_{αγ} = ω_{βγ}∧β^# + Im Ω_{βγ} on X_{αγ}",
            &["ω_{βγ}∧β^#", "Im Ω_{βγ}"],
        ),
        Identity::new(
            "triality_pair_omega",
            "ω_{αγ} = α⌟Im Ω_{βγ} + (α⌟ω_{βγ})∧β^# on X_{αγ}",
            &["α⌟Im Ω_{βγ}", "(α⌟ω_{βγ})∧β^#"],
        ),
    ]
}

fn triality_row<T: Scalar>(s: &Spin7Structure<T>, a: &Vector<T>, b: &Vector<T>, g: &Vector<T>) -> Vec<Result<Sample<T>>> {
    let ids = triality_identities();
    let setup = (|| -> Result<_> {
        check_orthonormal(&[a.clone(), b.clone(), g.clone()])?;
        Ok((double_induce(s, a, g)?.1, double_induce(s, a, b)?.1, double_induce(s, b, g)?.1))
    })();
    let (ag, ab, bg) = match setup {
        Ok(x) => x,
        Err(e) => return errors_for(&ids, e),
    };
    let psi = &s.psi;
    let (bf, gf) = (flat(b), flat(g));
    let on_ag = [a, g];
    let c = |v: &Vector<T>, f: &KForm<T>| contract(v, f);
    vec![
        (|| {
            let lhs = c(a, &bg.star(bg.omega())?)?;
            let rhs = &(&c(a, psi)? + &wedge(&gf, &contract_seq(&[g, a], psi)?)?)
                + &(&wedge(&bf, &contract_seq(&[b, a], psi)?)?
                    - &wedge(&wedge(&gf, &bf)?, &contract_seq(&[b, g, a], psi)?)?);
            Ok(Sample::forms(lhs, vec![rhs]))
        })(),
        (|| {
            let rhs = &-c(g, psi)? - &wedge(&bf, &contract_seq(&[b, g], psi)?)?;
            Ok(Sample::forms(bg.im_omega().clone(), vec![rhs]))
        })(),
        (|| {
            let rhs = &c(a, psi)? - &wedge(&gf, &contract_seq(&[a, g], psi)?)?;
            Ok(Sample::forms(ag.re_omega().clone(), vec![rhs]))
        })(),
        (|| {
            let t1 = c(a, &bg.star(bg.omega())?)?;
            restricted(ag.re_omega(), vec![t1, wedge(ab.omega(), &bf)?], &on_ag)
        })(),
        (|| {
            let t2 = -c(g, &ab.star(ab.omega())?)?;
            restricted(ag.im_omega(), vec![wedge(bg.omega(), &bf)?, t2], &on_ag)
        })(),
        (|| {
            let t2 = wedge(&c(g, ab.omega())?, &bf)?;
            restricted(ag.omega(), vec![c(a, bg.im_omega())?, t2], &on_ag)
        })(),
        (|| {
            let t1 = c(a, &bg.star(bg.omega())?)?;
            let t2 = -wedge(&c(a, bg.re_omega())?, &bf)?;
            restricted(ag.re_omega(), vec![t1, t2], &on_ag)
        })(),
        (|| restricted(ag.im_omega(), vec![wedge(bg.omega(), &bf)?, bg.im_omega().clone()], &on_ag))(),
        (|| {
            let t2 = wedge(&c(a, bg.omega())?, &bf)?;
            restricted(ag.omega(), vec![c(a, bg.im_omega())?, t2], &on_ag)
        })(),
    ]
}

/// Triality relations among `X_{αγ}`, `X_{αβ}`, `X_{βγ}` for orthonormal triples.
pub fn verify_triality<T: Scalar>(s: &Spin7Structure<Rational>, triples: &[[Vector<Rational>; 3]]) -> Vec<CheckOutcome> {
    let st = Spin7Structure::<T>::from_rational(s);
    let c = Vector::<T>::from_rational;
    run_battery(triality_identities(), triples, |[a, b, g]| triality_row(&st, &c(a), &c(b), &c(g)))
}

/// Descendants in table order.
pub const DESCENDANTS: [&str; 4] = ["X_αγ", "X_αβ", "X_βγ", "X_βα"];

/// Labels expected for the mixed regime (α ∈ K; β, γ ∈ D) and the pure regime.
pub const EXPECTED_TABLE: [[&str; 4]; 2] = [["SU(3)", "SU(3)", "SU(2)", "SU(3)"], ["SU(2)", "SU(2)", "SU(2)", "SU(2)"]];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialityTable {
    pub rows: [[MirrorType; 4]; 2],
}

impl TrialityTable {
    pub fn labels(&self) -> [[&'static str; 4]; 2] {
        self.rows.map(|r| r.map(MirrorType::label))
    }

    /// Cells (row, column) that differ from [`EXPECTED_TABLE`].
    pub fn deviations(&self) -> Vec<(usize, usize)> {
        let got = self.labels();
        let mut out = Vec::new();
        for r in 0..2 {
            for c in 0..4 {
                if got[r][c] != EXPECTED_TABLE[r][c] {
                    out.push((r, c));
                }
            }
        }
        out
    }
}

fn plane_of<'a, T: Scalar>(split: &'a SplitKD<T>, v: &Vector<T>) -> Result<(&'a [Vector<T>; 4], &'a [Vector<T>; 4])> {
    if in_span(v, &split.k) {
        Ok((&split.k, &split.d))
    } else if in_span(v, &split.d) {
        Ok((&split.d, &split.k))
    } else {
        Err(Error::NotInSplit)
    }
}

/// Classifies `X_{ab}` using the split of `M_a` into `E_a = (Cayley plane ∋ a) ∩ a^⊥`
/// and `V_a` = the complementary Cayley plane.
pub fn classify_descendant<T: Scalar>(s: &Spin7Structure<T>, split: &SplitKD<T>, a: &Vector<T>, b: &Vector<T>) -> Result<MirrorType> {
    let g = induce_g2(s, a)?;
    let (own, other) = plane_of(split, a)?;
    let mut e: Vec<Vector<T>> = Vec::new();
    for x in own {
        let mut against = vec![a.clone()];
        against.extend(e.iter().cloned());
        let r = reject(x, &against);
        if !r.is_negligible() {
            e.push(r);
        }
    }
    let e: [Vector<T>; 3] = e.try_into().map_err(|_| Error::Inconsistent("plane dimension".into()))?;
    let v = other.clone();
    if !is_associative(&g, &e)? || !is_coassociative(&g, &v)? {
        return Err(Error::Inconsistent("Cayley split does not descend to an associative split".into()));
    }
    let sp = SplitEV { source: (e[0].clone(), e[1].clone()), e, v };
    classify_mirror_type(&g, &sp, b)
}

/// One table row: labels of `X_{αγ}, X_{αβ}, X_{βγ}, X_{βα}`.
pub fn triality_row_labels<T: Scalar>(s: &Spin7Structure<T>, split: &SplitKD<T>, frame: &[Vector<T>; 3]) -> Result<[MirrorType; 4]> {
    check_orthonormal(frame)?;
    let [a, b, g] = frame;
    Ok([
        classify_descendant(s, split, a, g)?,
        classify_descendant(s, split, a, b)?,
        classify_descendant(s, split, b, g)?,
        classify_descendant(s, split, b, a)?,
    ])
}

/// The 2×4 table for a mixed frame (α ∈ K; β, γ ∈ D) and a pure frame (all in K or all in D).
pub fn triality_table<T: Scalar>(
    s: &Spin7Structure<T>,
    split: &SplitKD<T>,
    mixed: &[Vector<T>; 3],
    pure: &[Vector<T>; 3],
) -> Result<TrialityTable> {
    let in_k = |v: &Vector<T>| in_span(v, &split.k);
    let in_d = |v: &Vector<T>| in_span(v, &split.d);
    if !(in_k(&mixed[0]) && in_d(&mixed[1]) && in_d(&mixed[2])) {
        return Err(Error::NotInSplit);
    }
    if !(pure.iter().all(in_k) || pure.iter().all(in_d)) {
        return Err(Error::NotInSplit);
    }
    Ok(TrialityTable { rows: [triality_row_labels(s, split, mixed)?, triality_row_labels(s, split, pure)?] })
}

/// The identities tying `φ_γ` to `Ψ` at one unit `γ`.
pub fn check_induction<T: Scalar>(s: &Spin7Structure<T>, gamma: &Vector<T>) -> Vec<CheckOutcome> {
    let ids: Vec<Identity> = spin7_identities()
        .into_iter()
        .filter(|i| matches!(i.name.as_str(), "phi_gamma_contraction" | "phi_gamma_star" | "psi_decomposition" | "phi_gamma_orientation"))
        .collect();
    let psi = &s.psi;
    let g = induce_g2(s, gamma);
    run_battery(ids, &[()], |_| {
        vec![
            (|| Ok(Sample::forms(upsilon_of(s)?.pair(gamma)?, vec![contract(gamma, psi)?])))(),
            (|| Ok(Sample::forms(contract(gamma, psi)?, vec![hodge(&wedge(psi, &flat(gamma))?)])))(),
            (|| {
                let g = g.clone()?;
                Ok(Sample::forms(psi.clone(), vec![wedge(g.phi(), &flat(gamma))?, g.star_phi().clone()]))
            })(),
            (|| Ok(Sample::forms(g.clone()?.volume(), vec![contract(gamma, &KForm::volume(8))?])))(),
        ]
    })
}
