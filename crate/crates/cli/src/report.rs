use std::fmt::Write as _;

use holonomy_core::check::{CheckOutcome, LedgerEntry, SignLedger, TermSign};
use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Output {
    pub name: String,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
}

impl Output {
    pub fn new(name: impl Into<String>, value: impl Into<String>) -> Self {
        Output { name: name.into(), value: value.into(), expected: None, matches: None }
    }

    pub fn with_expected(mut self, expected: Option<String>) -> Self {
        self.matches = expected.as_ref().map(|e| *e == self.value);
        self.expected = expected;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub anchor: String,
    pub samples: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ledger_sign: Option<i8>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub signs: Vec<TermSign>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl From<&CheckOutcome> for CheckRow {
    fn from(o: &CheckOutcome) -> Self {
        CheckRow {
            name: o.name.clone(),
            anchor: o.anchor.clone(),
            samples: o.samples,
            passed: o.passed,
            ledger_sign: o.sign(),
            signs: if o.signs.len() > 1 { o.signs.clone() } else { Vec::new() },
            detail: o.detail.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub engine: String,
    pub command: String,
    pub backend: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub outputs: Vec<Output>,
    pub checks: Vec<CheckRow>,
    pub ledger: Vec<LedgerEntry>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>, backend: &'static str) -> Self {
        Report {
            schema: SCHEMA,
            engine: format!("holonomy {}", env!("CARGO_PKG_VERSION")),
            command: command.into(),
            backend,
            seed: None,
            samples: None,
            outputs: Vec::new(),
            checks: Vec::new(),
            ledger: Vec::new(),
            passed: true,
            elapsed_ms: None,
        }
    }

    pub fn output(&mut self, o: Output) {
        self.outputs.push(o);
    }

    pub fn checks(&mut self, outcomes: &[CheckOutcome]) {
        self.checks.extend(outcomes.iter().map(CheckRow::from));
        self.ledger.extend(SignLedger::from_outcomes(outcomes).deviations().cloned());
    }

    /// Sets `passed` from the checks and any golden comparisons.
    pub fn finish(&mut self) {
        self.passed = self.checks.iter().all(|c| c.passed) && self.outputs.iter().all(|o| o.matches != Some(false));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{} | {} | backend {}", self.engine, self.command, self.backend);
        if let Some(seed) = self.seed {
            let _ = write!(s, " | seed {seed}");
        }
        if let Some(n) = self.samples {
            let _ = write!(s, " | samples {n}");
        }
        s.push('\n');
        if !self.outputs.is_empty() {
            s.push_str("outputs:\n");
            for o in &self.outputs {
                let _ = write!(s, "  {} = {}", o.name, o.value);
                match (&o.expected, o.matches) {
                    (_, Some(true)) => s.push_str("  [matches expected]"),
                    (Some(e), Some(false)) => {
                        let _ = write!(s, "  [MISMATCH, expected {e}]");
                    }
                    _ => {}
                }
                s.push('\n');
            }
        }
        if !self.checks.is_empty() {
            s.push_str("checks:\n");
            for c in &self.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                let unit = if c.samples == 1 { "sample" } else { "samples" };
                let _ = write!(s, "  [{mark}] {} ({} {unit})  {}", c.name, c.samples, c.anchor);
                if let Some(sign) = c.ledger_sign {
                    let _ = write!(s, "  sign {sign:+}");
                }
                if !c.signs.is_empty() {
                    let v: Vec<String> = c.signs.iter().map(|t| format!("{:+}", t.sign)).collect();
                    let _ = write!(s, "  signs [{}]", v.join(", "));
                }
                if let Some(d) = &c.detail {
                    let _ = write!(s, "  ({d})");
                }
                s.push('\n');
            }
        }
        if !self.ledger.is_empty() {
            s.push_str("sign ledger:\n");
            for l in &self.ledger {
                let _ = writeln!(s, "  {:+} {}  {}", l.sign, l.identity, l.note);
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(s, "elapsed: {ms} ms");
        }
        let _ = writeln!(s, "result: {}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}
