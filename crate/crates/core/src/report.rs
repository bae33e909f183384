use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

/// Witnesses kept per report; the failure count is always exact.
pub const MAX_WITNESSES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Finite-truncation evidence, not a proof.
    Evidence,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Evidence => "evidence",
        })
    }
}

/// One failing instance: what was checked and the two sides that differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(inputs: impl Into<String>, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        Witness { inputs: inputs.into(), lhs: lhs.to_string(), rhs: rhs.to_string() }
    }

    pub fn error(inputs: impl Into<String>, err: impl fmt::Display) -> Self {
        Witness { inputs: inputs.into(), lhs: format!("error: {err}"), rhs: String::new() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub parameters: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_deg: Option<usize>,
    pub status: Status,
    pub checked: usize,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl VerificationReport {
    pub fn new(check_name: impl Into<String>) -> Self {
        VerificationReport {
            check_name: check_name.into(),
            parameters: BTreeMap::new(),
            window: None,
            max_deg: None,
            status: Status::Pass,
            checked: 0,
            failures: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
            elapsed: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn window(mut self, window: i64) -> Self {
        self.window = Some(window);
        self
    }

    pub fn max_deg(mut self, max_deg: usize) -> Self {
        self.max_deg = Some(max_deg);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// Records one checked instance.
    pub fn record(&mut self, outcome: Option<Witness>) {
        self.checked += 1;
        if let Some(w) = outcome {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
            self.status = Status::Fail;
        }
    }

    /// Runs `check` over `items` in parallel and records the outcomes in
    /// item order, so the report does not depend on scheduling.
    pub fn sweep<I, F>(mut self, items: &[I], check: F) -> Self
    where
        I: Sync,
        F: Fn(&I) -> Option<Witness> + Sync + Send,
    {
        let outcomes: Vec<Option<Witness>> = items.par_iter().map(check).collect();
        for o in outcomes {
            self.record(o);
        }
        self
    }

    /// Folds another report's counts and witnesses into this one.
    pub fn absorb(&mut self, other: &VerificationReport) {
        self.checked += other.checked;
        self.failures += other.failures;
        for w in &other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w.clone());
            }
        }
        if other.status == Status::Fail {
            self.status = Status::Fail;
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({} checked, {} failed", self.check_name, self.status, self.checked, self.failures)?;
        if let Some(w) = self.window {
            write!(f, ", window {w}")?;
        }
        if let Some(d) = self.max_deg {
            write!(f, ", degree <= {d}")?;
        }
        writeln!(f, ")")?;
        for (k, v) in &self.parameters {
            writeln!(f, "  {k} = {v}")?;
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        for w in &self.witnesses {
            writeln!(f, "  witness: {}", w.inputs)?;
            writeln!(f, "    lhs = {}", w.lhs)?;
            if !w.rhs.is_empty() {
                writeln!(f, "    rhs = {}", w.rhs)?;
            }
        }
        Ok(())
    }
}
