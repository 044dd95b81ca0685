mod common;

use common::*;
use holonomy_core::cy::MirrorType;
use holonomy_core::error::Error;
use holonomy_core::form::{contract, eval, flat, hodge, norm_sq, wedge, KForm};
use holonomy_core::g2::{cross_of, metric_from_phi};
use holonomy_core::sampling::Sampler;
use holonomy_core::scalar::{int, Rational};
use holonomy_core::spin7::*;
use holonomy_core::suite::{spin7_pairs, spin7_triples};
use holonomy_core::vector::Vector;
use proptest::prelude::*;

type Q = Rational;

fn s() -> Spin7Structure<Q> {
    psi0()
}

fn e8(i: usize) -> Vector<Q> {
    e(8, i)
}

#[test]
fn psi0_coefficients_and_self_duality() {
    let p = psi0_form::<Q>();
    assert_eq!(p.coeff_of(&[1, 2, 3, 4]), int::<Q>(1));
    assert_eq!(p.coeff_of(&[1, 2, 7, 8]), int::<Q>(-1));
    assert_eq!(p.nnz(), 14);
    assert_eq!(norm_sq(&p), int::<Q>(14));
    assert_eq!(hodge_oracle(&p), p);
    assert_eq!(hodge(&p), p);
}

#[test]
fn psi0_matches_factored_display() {
    let two = |a: &str, b: &str| wedge(&f(8, a), &f(8, b)).unwrap();
    let expanded = f(8, "e1234")
        + two("e12 - e34", "e56 - e78")
        + two("e13 + e24", "e57 + e68")
        + two("e14 - e23", "e58 - e67")
        + f(8, "e5678");
    assert_eq!(expanded, psi0_form());
}

#[test]
fn spin7_structure_validates_shape() {
    assert!(matches!(Spin7Structure::new(f(7, "e1234")), Err(Error::UnsupportedDimension(7))));
    assert!(matches!(Spin7Structure::new(f(8, "e123")), Err(Error::GradeMismatch { .. })));
}

#[test]
fn upsilon_components() {
    let u = upsilon_of(&s()).unwrap();
    assert_eq!(u.component(1), &f(8, "e234 + e256 - e278 + e357 + e368 + e458 - e467"));
    assert_eq!(u.component(5), &f(8, "e126 - e346 + e137 + e247 + e148 - e238 + e678"));
    let mut smp = Sampler::new(41);
    for _ in 0..200 {
        let (a, b, c) = (smp.vector(8), smp.vector(8), smp.vector(8));
        assert_eq!(u.eval(&[&a, &b, &c]).unwrap().dot(&a), int::<Q>(0));
    }
}

#[test]
fn triple_cross_examples() {
    let st = s();
    assert_eq!(triple_cross(&st, &e8(1), &e8(2), &e8(3)).unwrap(), e8(4));
    assert_eq!(triple_cross(&st, &e8(5), &e8(6), &e8(7)).unwrap(), e8(8));
    let (u, v) = (Vector::from_i64s(&[1, 2, 0, -1, 0, 3, 0, 1]), e8(6));
    assert!(triple_cross(&st, &u, &u, &v).unwrap().is_negligible());
}

#[test]
fn cayley_examples() {
    let st = s();
    assert!(is_cayley(&st, &[e8(1), e8(2), e8(3), e8(4)]).unwrap());
    assert!(is_cayley(&st, &[e8(5), e8(6), e8(7), e8(8)]).unwrap());
    assert!(!is_cayley(&st, &[e8(1), e8(2), e8(3), e8(5)]).unwrap());
    assert!(matches!(is_cayley(&st, &[e8(1), e8(2), e8(3), e8(1)]), Err(Error::DegenerateSpan)));
}

#[test]
fn split_examples() {
    let st = s();
    let sp = split_from_3frame(&st, &e8(1), &e8(2), &e8(3)).unwrap();
    assert_eq!(sp.k, [e8(1), e8(2), e8(3), e8(4)]);
    assert_eq!(sp.d, [e8(5), e8(6), e8(7), e8(8)]);
    assert!(split_from_3frame(&st, &e8(1), &e8(2), &e8(2)).is_err());
    let mut smp = Sampler::new(42);
    for _ in 0..30 {
        let fr = smp.frame(8, 3, 3);
        let sp = split_from_3frame(&st, &fr[0], &fr[1], &fr[2]).unwrap();
        assert!(is_cayley(&st, &sp.k).unwrap());
        assert!(is_cayley(&st, &sp.d).unwrap());
    }
}

#[test]
fn induced_g2_examples() {
    let st = s();
    let g4 = induce_g2(&st, &e8(4)).unwrap();
    assert_eq!(g4.phi(), &f(8, "-e123 + e356 - e378 - e257 - e268 - e158 + e167"));
    let g5 = induce_g2(&st, &e8(5)).unwrap();
    assert_eq!(g5.phi(), &f(8, "e126 - e346 + e137 + e247 + e148 - e238 + e678"));
    assert_eq!(g4.volume(), f(8, "e1235678"));
    assert_eq!(g4.volume(), -contract(&e8(4), &KForm::volume(8)).unwrap());
    let mut smp = Sampler::new(43);
    let space = g4.space().clone();
    for _ in 0..50 {
        let (a, b) = (smp.tangent_vector(&space), smp.tangent_vector(&space));
        assert_eq!(metric_from_phi(&g4, &a, &b).unwrap(), a.dot(&b));
    }
    let twice = Vector::from_i64s(&[0, 0, 0, 2, 0, 0, 0, 0]);
    assert!(matches!(induce_g2(&st, &twice), Err(Error::NotUnit(_))));
}

#[test]
fn induction_identities_at_coordinate_gammas() {
    let st = s();
    for i in 1..=8 {
        let out = check_induction(&st, &e8(i));
        assert_eq!(out.len(), 4);
        for o in &out {
            assert!(o.passed, "γ = e{i}: {}: {:?}", o.name, o.detail);
        }
        let sign = |n: &str| out.iter().find(|o| o.name == n).unwrap().sign_vector();
        assert_eq!(sign("phi_gamma_contraction"), vec![1]);
        assert_eq!(sign("phi_gamma_star"), vec![1]);
        assert_eq!(sign("psi_decomposition"), vec![-1, -1]);
        assert_eq!(sign("phi_gamma_orientation"), vec![-1]);
    }
}

#[test]
fn cross_product_of_induced_structure() {
    // on γ^⊥ the induced cross product is a triple cross product with γ
    let st = s();
    let g = induce_g2(&st, &e8(8)).unwrap();
    for i in 1..=7 {
        for j in 1..=7 {
            let c = cross_of(&g, &e8(i), &e8(j)).unwrap();
            assert_eq!(c, triple_cross(&st, &e8(8), &e8(i), &e8(j)).unwrap());
        }
    }
}

#[test]
fn double_descent_e4_e5() {
    let st = s();
    let (_, c) = double_induce(&st, &e8(4), &e8(5)).unwrap();
    let phi4 = f(8, "-e123 + e356 - e378 - e257 - e268 - e158 + e167");
    assert_eq!(c.omega(), &contract(&e8(5), &phi4).unwrap());
    assert_eq!(c.omega(), &f(8, "e18 + e27 - e36"));
    let mut smp = Sampler::new(44);
    for _ in 0..20 {
        let u = c.space().project(&smp.vector(8));
        let ju = c.apply_j(&u);
        assert_eq!(ju.dot(&e8(4)), int::<Q>(0));
        assert_eq!(ju.dot(&e8(5)), int::<Q>(0));
        assert_eq!(c.apply_j(&ju), -u);
    }
    assert!(double_induce(&st, &e8(4), &e8(4)).is_err());
}

#[test]
fn descent_relations() {
    let pairs = spin7_pairs(7);
    let out = verify_descent::<Q>(&s(), &pairs);
    assert_eq!(out.len(), 10);
    for o in &out {
        assert!(o.passed, "{}: {:?}", o.name, o.detail);
        assert_eq!(o.samples, pairs.len());
    }
    let sign = |n: &str| out.iter().find(|o| o.name == n).unwrap().sign();
    assert_eq!(sign("swap_omega"), Some(1));
    assert_eq!(sign("swap_re_im"), Some(-1));
    assert_eq!(sign("swap_orientation"), Some(1));
    assert_eq!(sign("g2_pair"), Some(1));
}

#[test]
fn swap_is_an_involution() {
    let st = s();
    for (a, b) in [(4, 5), (1, 2)] {
        let fwd = verify_descent::<Q>(&st, &[(e8(a), e8(b), e8(1))]);
        let back = verify_descent::<Q>(&st, &[(e8(b), e8(a), e8(1))]);
        for name in ["swap_omega", "swap_re_im", "swap_orientation"] {
            let get = |v: &Vec<holonomy_core::check::CheckOutcome>| v.iter().find(|o| o.name == name).unwrap().sign();
            assert_eq!(get(&fwd), get(&back), "{name}");
        }
    }
}

#[test]
fn triality_relations() {
    let triples = spin7_triples(8);
    let out = verify_triality::<Q>(&s(), &triples);
    assert_eq!(out.len(), 9);
    for o in &out {
        assert!(o.passed, "{}: {:?}", o.name, o.detail);
    }
    let signs = |n: &str| out.iter().find(|o| o.name == n).unwrap().sign_vector();
    assert_eq!(signs("triality_lemma_star"), vec![-1]);
    assert_eq!(signs("triality_lemma_im"), vec![-1]);
    assert_eq!(signs("triality_lemma_re"), vec![1]);
    for n in ["triality_re", "triality_im", "triality_omega", "triality_pair_re", "triality_pair_im", "triality_pair_omega"] {
        assert_eq!(signs(n), vec![-1, 1], "{n}");
    }
}

#[test]
fn lemma_re_identity_at_e4_e6() {
    let st = s();
    let (a, g) = (e8(4), e8(6));
    let (_, c) = double_induce(&st, &a, &g).unwrap();
    let ap = contract(&a, st.psi()).unwrap();
    let rhs = &ap - &wedge(&flat(&g), &contract(&g, &ap).unwrap()).unwrap();
    assert_eq!(c.re_omega(), &rhs);
    // coordinate oracle: drop the blades of e4⌟Ψ that contain 6
    let mut dropped = KForm::zero(8, 3);
    for (b, x) in ap.terms() {
        if !b.contains(6) {
            dropped.add_term(b, x.clone());
        }
    }
    assert_eq!(rhs, dropped);
}

#[test]
fn triality_table_matches_expected() {
    let st = s();
    let split = split_from_3frame(&st, &e8(1), &e8(2), &e8(3)).unwrap();
    let t = triality_table(&st, &split, &[e8(1), e8(5), e8(6)], &[e8(1), e8(2), e8(3)]).unwrap();
    assert_eq!(t.labels(), EXPECTED_TABLE);
    assert!(t.deviations().is_empty());
    assert_eq!(t.rows[0], [MirrorType::Lagrangian, MirrorType::Lagrangian, MirrorType::Complex, MirrorType::Lagrangian]);
    let pure_d = triality_table(&st, &split, &[e8(1), e8(5), e8(6)], &[e8(5), e8(6), e8(7)]).unwrap();
    assert_eq!(pure_d.labels()[1], EXPECTED_TABLE[1]);
}

#[test]
fn triality_table_rejects_misplaced_frames() {
    let st = s();
    let split = split_from_3frame(&st, &e8(1), &e8(2), &e8(3)).unwrap();
    let r = triality_table(&st, &split, &[e8(5), e8(1), e8(2)], &[e8(1), e8(2), e8(3)]);
    assert!(matches!(r, Err(Error::NotInSplit)));
    let r = triality_table(&st, &split, &[e8(1), e8(5), e8(6)], &[e8(1), e8(2), e8(5)]);
    assert!(matches!(r, Err(Error::NotInSplit)));
}

#[test]
fn triality_table_invariant_under_permuting_d() {
    let st = s();
    let split = split_from_3frame(&st, &e8(1), &e8(2), &e8(3)).unwrap();
    let pure = [e8(1), e8(2), e8(3)];
    for (b, g) in [(5, 6), (6, 5), (5, 7), (7, 8), (8, 6)] {
        let t = triality_table(&st, &split, &[e8(1), e8(b), e8(g)], &pure).unwrap();
        assert_eq!(t.labels(), EXPECTED_TABLE, "β = e{b}, γ = e{g}");
    }
}

#[test]
fn spin7_suite_exact() {
    let out = verify_spin7::<Q>(&s(), 100, 45);
    assert_eq!(out.len(), 13);
    for o in &out {
        assert!(o.passed, "{}: {:?}", o.name, o.detail);
    }
    let sign = |n: &str| out.iter().find(|o| o.name == n).unwrap().sign_vector();
    assert_eq!(sign("self_duality"), vec![1]);
    assert_eq!(sign("upsilon_pairing"), vec![-1]);
    assert_eq!(sign("triple_cross_pairing"), vec![1]);
}

#[test]
fn spin7_suite_float() {
    for o in verify_spin7::<f64>(&s(), 200, 46) {
        assert!(o.passed, "{}: {:?}", o.name, o.detail);
    }
}

#[test]
fn induced_g2_transplant() {
    let out = verify_induced_g2::<Q>(&s(), 10, 3, 47);
    assert_eq!(out.len(), 22);
    for o in &out {
        assert!(o.passed, "{}: {:?}", o.name, o.detail);
        assert!(o.name.starts_with("hyperplane_"));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn triple_cross_orthogonal_and_antisymmetric(u in vector(8), v in vector(8), w in vector(8)) {
        let st = s();
        let x = triple_cross(&st, &u, &v, &w).unwrap();
        prop_assert_eq!(x.dot(&u), int::<Q>(0));
        prop_assert_eq!(x.dot(&v), int::<Q>(0));
        prop_assert_eq!(x.dot(&w), int::<Q>(0));
        prop_assert_eq!(x.clone(), -triple_cross(&st, &v, &u, &w).unwrap());
        prop_assert_eq!(x.clone(), -triple_cross(&st, &u, &w, &v).unwrap());
        let z = &u + &w;
        prop_assert_eq!(x.dot(&z), eval_oracle(st.psi(), &[u.clone(), v.clone(), w.clone(), z.clone()]));
        prop_assert_eq!(eval(st.psi(), &[&u, &v, &w, &z]).unwrap(), x.dot(&z));
    }

    #[test]
    fn psi_decomposes_along_any_gamma(seed in any::<u64>()) {
        let st = s();
        let gamma = Sampler::new(seed).unit_vector(8);
        let g = induce_g2(&st, &gamma).unwrap();
        let rebuilt = wedge(g.phi(), &flat(&gamma)).unwrap() + g.star_phi().clone();
        prop_assert_eq!(rebuilt, -st.psi().clone());
        prop_assert_eq!(norm_sq(g.phi()), int::<Q>(7));
    }
}
