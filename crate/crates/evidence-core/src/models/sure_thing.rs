//! The "sure thing" model: whatever happened was certain to happen.
//!
//! After seeing a coin-flip sequence one can always construct the degenerate
//! hypothesis whose single parameter point puts probability 1 on exactly that
//! sequence. Its likelihood is maximal by construction — but it lives on a
//! different parameter space than any binomial hypothesis about the same
//! flips, so the crate's comparison operations refuse to form ratios between
//! the two. This model exists to demonstrate that refusal.

use crate::error::{EvidenceError, Result};
use crate::model::DiscreteModel;
use crate::outcome::OutcomeSpace;
use crate::sample::Sample;
use crate::space::{Dimension, ParameterSpace};
use crate::value::Value;

/// Longest sequence accepted; the outcome space holds all 2^n sequences.
const MAX_FLIPS: usize = 16;

/// Builds the degenerate model for an observed `H`/`T` sequence.
///
/// The parameter space has one dimension (`sequence`) with a single value —
/// the observed sequence itself — and the model assigns it probability 1
/// among all sequences of the same length.
pub fn sure_thing_model(observed: &str) -> Result<DiscreteModel> {
    if observed.is_empty() {
        return Err(EvidenceError::InvalidConfig(
            "observed sequence is empty".into(),
        ));
    }
    if observed.len() > MAX_FLIPS {
        return Err(EvidenceError::InvalidConfig(format!(
            "observed sequence has {} flips; at most {MAX_FLIPS} are supported",
            observed.len()
        )));
    }
    if let Some(bad) = observed.chars().find(|c| *c != 'H' && *c != 'T') {
        return Err(EvidenceError::InvalidConfig(format!(
            "flip {bad:?} is neither H nor T"
        )));
    }

    let space = ParameterSpace::new(vec![Dimension::listed(
        "sequence",
        vec![Value::label(observed)],
    )])?;
    let sequences = all_sequences(observed.len());
    let row = sequences
        .iter()
        .map(|s| if s == observed { 1.0 } else { 0.0 })
        .collect();
    let outcomes = OutcomeSpace::Enumerated(sequences.into_iter().map(Value::Label).collect());
    DiscreteModel::from_table("sure-thing", space, outcomes, vec![row])
}

/// Every H/T sequence of length `n`, lexicographically (H before T).
fn all_sequences(n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|s| ["H", "T"].iter().map(move |c| format!("{s}{c}")))
            .collect();
    }
    out
}

/// Convenience: the observed sequence as a [`Sample`] of per-flip labels.
pub fn flips_as_sample(observed: &str) -> Sample {
    Sample::new(observed.chars().map(|c| Value::label(c.to_string())).collect())
}
