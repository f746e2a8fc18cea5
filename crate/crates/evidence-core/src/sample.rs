//! Ordered samples of observed outcomes.

use std::collections::HashSet;

use crate::value::Value;

/// An ordered list of observations from one model.
///
/// The order is kept for faithfulness to how data arrive, but every operation
/// in this crate treats draws as exchangeable: likelihoods and the built-in
/// statistics are invariant under permutation of the observations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    observations: Vec<Value>,
}

impl Sample {
    pub fn new(observations: Vec<Value>) -> Self {
        Sample { observations }
    }

    /// Number of observations.
    pub fn n(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    /// Number of distinct observed values.
    pub fn distinct_count(&self) -> usize {
        self.observations.iter().collect::<HashSet<_>>().len()
    }

    pub fn observations(&self) -> &[Value] {
        &self.observations
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Value> {
        self.observations.iter()
    }

    /// Distinct values with their multiplicities, ordered by the canonical
    /// value order. This is the form the likelihood product uses so that
    /// permuted samples produce bit-identical results.
    pub fn counts(&self) -> Vec<(Value, u32)> {
        let mut sorted = self.observations.clone();
        sorted.sort();
        let mut out: Vec<(Value, u32)> = Vec::new();
        for v in sorted {
            match out.last_mut() {
                Some((w, c)) if *w == v => *c += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }
}

impl From<Vec<Value>> for Sample {
    fn from(observations: Vec<Value>) -> Self {
        Sample::new(observations)
    }
}
