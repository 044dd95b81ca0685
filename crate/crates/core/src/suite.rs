//! Fixed registries of checks and input frames used by the command-line tool
//! and the acceptance tests.

use std::fmt;
use std::str::FromStr;

use crate::check::{check_once, CheckOutcome, Identity, Sample};
use crate::cy::{verify_cy, verify_pair_relations};
use crate::g2::{phi0, verify_g2_identities};
use crate::octonion::{verify_octonions, verify_witness};
use crate::sampling::Sampler;
use crate::scalar::{Rational, Scalar};
use crate::spin7::{
    psi0, split_from_3frame, triality_table, verify_descent, verify_induced_g2, verify_spin7, verify_triality,
    TrialityTable, EXPECTED_TABLE,
};
use crate::vector::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteKind {
    G2,
    Spin7,
    Cy,
    Octonion,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 4] = [SuiteKind::G2, SuiteKind::Spin7, SuiteKind::Cy, SuiteKind::Octonion];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::G2 => "g2",
            SuiteKind::Spin7 => "spin7",
            SuiteKind::Cy => "cy",
            SuiteKind::Octonion => "octonion",
        }
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        SuiteKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Number of seeded random frames added to the coordinate frames.
pub const RANDOM_FRAMES: usize = 20;

/// Hyperplanes on which the G₂ suite is transplanted in the Spin(7) run.
pub const INDUCED_G2_HYPERPLANES: usize = 50;

fn e(n: usize, i: usize) -> Vector<Rational> {
    Vector::basis(n, i)
}

/// Orthonormal pairs in ℝ⁷: `(e₇, e₃)`, `(e₁, e₂)` and seeded reflected frames.
pub fn g2_pairs(seed: u64) -> Vec<(Vector<Rational>, Vector<Rational>)> {
    let mut s = Sampler::new(seed ^ 0x7061_6972);
    let mut out = vec![(e(7, 7), e(7, 3)), (e(7, 1), e(7, 2))];
    for _ in 0..RANDOM_FRAMES {
        let f = s.frame(7, 2, 3);
        out.push((f[0].clone(), f[1].clone()));
    }
    out
}

/// Orthonormal pairs in ℝ⁸ with one extra test vector each.
pub fn spin7_pairs(seed: u64) -> Vec<(Vector<Rational>, Vector<Rational>, Vector<Rational>)> {
    let mut s = Sampler::new(seed ^ 0x7370_696e);
    let mut out = vec![(e(8, 4), e(8, 5), s.vector(8)), (e(8, 1), e(8, 2), s.vector(8))];
    for _ in 0..RANDOM_FRAMES {
        let f = s.frame(8, 2, 3);
        out.push((f[0].clone(), f[1].clone(), s.vector(8)));
    }
    out
}

/// Orthonormal triples in ℝ⁸: `(e₄,e₅,e₆)`, `(e₁,e₂,e₃)`, `(e₁,e₅,e₆)` and seeded reflected frames.
pub fn spin7_triples(seed: u64) -> Vec<[Vector<Rational>; 3]> {
    let mut s = Sampler::new(seed ^ 0x7472_6970);
    let mut out = vec![
        [e(8, 4), e(8, 5), e(8, 6)],
        [e(8, 1), e(8, 2), e(8, 3)],
        [e(8, 1), e(8, 5), e(8, 6)],
    ];
    for _ in 0..RANDOM_FRAMES {
        let f = s.frame(8, 3, 3);
        out.push([f[0].clone(), f[1].clone(), f[2].clone()]);
    }
    out
}

/// The table for the standard split `K = ⟨e₁..e₄⟩`, `D = ⟨e₅..e₈⟩`, with the
/// mixed frame `(e₁, e₅, e₆)` and the pure frame `(e₁, e₂, e₃)`.
pub fn standard_triality_table() -> crate::error::Result<TrialityTable> {
    let s = psi0::<Rational>();
    let split = split_from_3frame(&s, &e(8, 1), &e(8, 2), &e(8, 3))?;
    triality_table(&s, &split, &[e(8, 1), e(8, 5), e(8, 6)], &[e(8, 1), e(8, 2), e(8, 3)])
}

/// Agreement of the standard triality table with the expected label pattern.
pub fn triality_table_check() -> CheckOutcome {
    let id = Identity::predicate("triality_table", format!("labels of (X_αγ, X_αβ, X_βγ, X_βα) = {:?}", EXPECTED_TABLE));
    let table = standard_triality_table();
    let mut out = check_once::<Rational>(id, table.as_ref().map(|t| Sample::Holds(t.deviations().is_empty())).map_err(Clone::clone));
    if let Ok(t) = table {
        out.detail = Some(format!("{:?}", t.labels()));
    }
    out
}

/// Runs one registered suite on `samples` seeded inputs in backend `T`.
pub fn run_suite<T: Scalar>(kind: SuiteKind, samples: usize, seed: u64) -> Vec<CheckOutcome> {
    match kind {
        SuiteKind::G2 => verify_g2_identities::<T>(&phi0(), samples, seed),
        SuiteKind::Cy => {
            let mut out = verify_cy::<T>(&phi0(), samples, seed);
            out.extend(verify_pair_relations::<T>(&phi0(), &g2_pairs(seed)));
            out
        }
        SuiteKind::Octonion => {
            let mut out = verify_octonions::<T>(samples, seed);
            out.extend(verify_witness());
            out
        }
        SuiteKind::Spin7 => {
            let s = psi0();
            let mut out = verify_spin7::<T>(&s, samples, seed);
            out.extend(verify_induced_g2::<T>(&s, samples.min(INDUCED_G2_HYPERPLANES), 4, seed));
            out.extend(verify_descent::<T>(&s, &spin7_pairs(seed)));
            out.extend(verify_triality::<T>(&s, &spin7_triples(seed)));
            out.push(triality_table_check());
            out
        }
    }
}
