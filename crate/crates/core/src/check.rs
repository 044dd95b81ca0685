//! Identity checking with sign bookkeeping.
//!
//! An identity is stated as `lhs = t_1 + … + t_m`. Each sample reports the
//! set of sign vectors `s` with `lhs = Σ s_i t_i`; the check passes when one
//! sign vector fits every sample. A vector other than all `+1` means the
//! engine's conventions differ from the statement by that constant sign.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::form::{flat, KForm};
use crate::scalar::Scalar;
use crate::vector::Vector;

/// Outcome of one sample of one identity.
pub enum Sample<T> {
    Signed { lhs: KForm<T>, terms: Vec<KForm<T>> },
    Holds(bool),
}

impl<T: Scalar> Sample<T> {
    pub fn forms(lhs: KForm<T>, terms: Vec<KForm<T>>) -> Self {
        Sample::Signed { lhs, terms }
    }

    pub fn scalars(n: usize, lhs: T, terms: Vec<T>) -> Self {
        Sample::Signed {
            lhs: KForm::scalar(n, lhs),
            terms: terms.into_iter().map(|t| KForm::scalar(n, t)).collect(),
        }
    }

    pub fn vectors(lhs: &Vector<T>, terms: &[Vector<T>]) -> Self {
        Sample::Signed { lhs: flat(lhs), terms: terms.iter().map(flat).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermSign {
    pub term: String,
    /// `+1`/`-1`, or `0` when no sample determined it (the term always vanished).
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub anchor: String,
    pub samples: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub signs: Vec<TermSign>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckOutcome {
    /// Ledger sign of a single-term identity, if determined.
    pub fn sign(&self) -> Option<i8> {
        match self.signs.as_slice() {
            [t] if t.sign != 0 => Some(t.sign),
            _ => None,
        }
    }

    pub fn sign_vector(&self) -> Vec<i8> {
        self.signs.iter().map(|t| t.sign).collect()
    }
}

/// Declaration of an identity: a name, a human-readable formula, and labels
/// for the right-hand-side terms (empty for plain predicates).
#[derive(Clone, Debug)]
pub struct Identity {
    pub name: String,
    pub anchor: String,
    pub terms: Vec<String>,
}

impl Identity {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, terms: &[&str]) -> Self {
        Identity {
            name: name.into(),
            anchor: anchor.into(),
            terms: terms.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn predicate(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        Self::new(name, anchor, &[])
    }
}

/// Running aggregate for one identity.
pub struct Tally {
    id: Identity,
    samples: usize,
    failures: usize,
    first_failure: Option<String>,
    candidates: Vec<Vec<i8>>,
}

fn all_sign_vectors(m: usize) -> Vec<Vec<i8>> {
    (0..1u32 << m)
        .map(|bits| (0..m).map(|i| if bits >> i & 1 == 0 { 1 } else { -1 }).collect())
        .collect()
}

fn fits<T: Scalar>(lhs: &KForm<T>, terms: &[KForm<T>], signs: &[i8]) -> bool {
    let mut acc = lhs.clone();
    for (t, s) in terms.iter().zip(signs) {
        let c = T::from_i64(-(*s as i64));
        match acc.axpy(&c, t) {
            Ok(a) => acc = a,
            Err(_) => return false,
        }
    }
    acc.is_negligible()
}

impl Tally {
    pub fn new(id: Identity) -> Self {
        let m = id.terms.len();
        Tally { id, samples: 0, failures: 0, first_failure: None, candidates: all_sign_vectors(m) }
    }

    fn fail(&mut self, why: String) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(format!("sample {}: {why}", self.samples));
        }
    }

    pub fn record<T: Scalar>(&mut self, sample: Result<Sample<T>>) {
        self.samples += 1;
        match sample {
            Err(e) => self.fail(format!("error: {e}")),
            Ok(Sample::Holds(true)) => {}
            Ok(Sample::Holds(false)) => self.fail("predicate is false".into()),
            Ok(Sample::Signed { lhs, terms }) => {
                if terms.len() != self.id.terms.len() {
                    self.fail(format!("expected {} terms, got {}", self.id.terms.len(), terms.len()));
                    return;
                }
                let kept: Vec<Vec<i8>> = self
                    .candidates
                    .iter()
                    .filter(|s| fits(&lhs, &terms, s))
                    .cloned()
                    .collect();
                if !kept.is_empty() {
                    self.candidates = kept;
                } else if all_sign_vectors(terms.len()).iter().any(|s| fits(&lhs, &terms, s)) {
                    self.fail("sign differs from earlier samples".into());
                } else {
                    self.fail("no choice of signs satisfies the identity".into());
                }
            }
        }
    }

    pub fn finish(self) -> CheckOutcome {
        let passed = self.failures == 0 && self.samples > 0;
        let signs = self
            .id
            .terms
            .iter()
            .enumerate()
            .map(|(i, term)| {
                let first = self.candidates.first().map_or(0, |c| c[i]);
                let agreed = self.candidates.iter().all(|c| c[i] == first);
                TermSign { term: term.clone(), sign: if agreed && passed { first } else { 0 } }
            })
            .collect();
        let detail = if self.samples == 0 {
            Some("no samples".to_string())
        } else {
            self.first_failure.map(|f| format!("{} of {} samples failed; {f}", self.failures, self.samples))
        };
        CheckOutcome {
            name: self.id.name,
            anchor: self.id.anchor,
            samples: self.samples,
            passed,
            signs,
            detail,
        }
    }
}

/// Evaluates `eval` on every input (in parallel) and tallies the results in
/// input order. `eval` must return one sample per identity, in order.
pub fn run_battery<I, T, F>(ids: Vec<Identity>, inputs: &[I], eval: F) -> Vec<CheckOutcome>
where
    I: Sync,
    T: Scalar,
    F: Fn(&I) -> Vec<Result<Sample<T>>> + Sync,
{
    let per_input: Vec<Vec<Result<Sample<T>>>> = inputs.par_iter().map(&eval).collect();
    let mut tallies: Vec<Tally> = ids.into_iter().map(Tally::new).collect();
    for row in per_input {
        assert_eq!(row.len(), tallies.len(), "battery row length");
        for (t, s) in tallies.iter_mut().zip(row) {
            t.record(s);
        }
    }
    tallies.into_iter().map(Tally::finish).collect()
}

/// Checks a single identity on one input.
pub fn check_once<T: Scalar>(id: Identity, sample: Result<Sample<T>>) -> CheckOutcome {
    let mut t = Tally::new(id);
    t.record(sample);
    t.finish()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub identity: String,
    pub sign: i8,
    pub note: String,
}

/// Per-identity record of the constant sign separating a stated identity from
/// the engine's conventions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SignLedger {
    entries: Vec<LedgerEntry>,
}

impl SignLedger {
    pub fn from_outcomes(outcomes: &[CheckOutcome]) -> Self {
        let mut l = SignLedger::default();
        for o in outcomes {
            l.absorb(o);
        }
        l
    }

    pub fn absorb(&mut self, o: &CheckOutcome) {
        if !o.passed {
            return;
        }
        let single = o.signs.len() == 1;
        for t in &o.signs {
            if t.sign == 0 {
                continue;
            }
            let identity = if single { o.name.clone() } else { format!("{}[{}]", o.name, t.term) };
            let note = if single { o.anchor.clone() } else { format!("{} :: {}", o.anchor, t.term) };
            self.entries.push(LedgerEntry { identity, sign: t.sign, note });
        }
    }

    pub fn get(&self, identity: &str) -> Option<i8> {
        self.entries.iter().find(|e| e.identity == identity).map(|e| e.sign)
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    /// Entries whose sign is not `+1`.
    pub fn deviations(&self) -> impl Iterator<Item = &LedgerEntry> {
        self.entries.iter().filter(|e| e.sign != 1)
    }
}
