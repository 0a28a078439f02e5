//! Results of a harness run, serializable to a stable JSON layout.

use serde::{Deserialize, Serialize};

use super::checks::CheckInput;
use crate::formats::to_canonical_json;

/// One failing trial, stored with the full offending input so it can be
/// replayed later. Records keep raw inputs only; there is no shrinking.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    pub check: String,
    pub trial: u32,
    /// The derived per-trial seed, for reference; replay works from
    /// `input` directly and does not need it.
    pub seed: u64,
    pub violation: f64,
    pub input: CheckInput,
}

/// Aggregate result of one check across all its trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub eq: String,
    pub trials: u32,
    pub failures: u32,
    pub worst_violation: f64,
    pub elapsed_ms: f64,
}

/// The full run: one outcome per selected check, an overall verdict, and
/// every counterexample encountered.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
    pub pass: bool,
    pub counterexamples: Vec<CounterexampleRecord>,
}

impl CheckReport {
    /// Serializes with the canonical float emitter, so a given run always
    /// produces the same bytes.
    pub fn render_json(&self) -> String {
        to_canonical_json(self)
    }

    /// Like [`render_json`](Self::render_json) but with timing zeroed,
    /// which makes reports from identical configs byte-identical
    /// regardless of machine speed or thread count.
    pub fn render_json_stable(&self) -> String {
        let mut scrubbed = self.clone();
        for outcome in &mut scrubbed.checks {
            outcome.elapsed_ms = 0.0;
        }
        to_canonical_json(&scrubbed)
    }
}
