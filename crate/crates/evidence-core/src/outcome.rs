//! Outcome spaces: the observable side of a model.

use crate::value::Value;

/// The set of observable outcomes of a model.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OutcomeSpace {
    /// An explicit, ordered, duplicate-free list of outcome values.
    Enumerated(Vec<Value>),
    /// Every integer in `lo..=hi`, enumerated on demand.
    IntegerInterval { lo: i64, hi: i64 },
}

impl OutcomeSpace {
    /// Number of outcomes.
    pub fn len(&self) -> u128 {
        match self {
            OutcomeSpace::Enumerated(vs) => vs.len() as u128,
            OutcomeSpace::IntegerInterval { lo, hi } => (hi - lo) as u128 + 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Membership test.
    pub fn contains(&self, v: &Value) -> bool {
        match self {
            OutcomeSpace::Enumerated(vs) => vs.contains(v),
            OutcomeSpace::IntegerInterval { lo, hi } => {
                matches!(v, Value::Int(i) if lo <= i && i <= hi)
            }
        }
    }

    /// Position of `v` in canonical order, if it is an outcome.
    pub fn index_of(&self, v: &Value) -> Option<u128> {
        match self {
            OutcomeSpace::Enumerated(vs) => vs.iter().position(|w| w == v).map(|i| i as u128),
            OutcomeSpace::IntegerInterval { lo, hi } => match v {
                Value::Int(i) if lo <= i && i <= hi => Some((i - lo) as u128),
                _ => None,
            },
        }
    }

    /// Iterates outcomes in canonical order. Interval spaces walk the whole
    /// range; callers bound [`OutcomeSpace::len`] before iterating.
    pub fn iter(&self) -> Box<dyn Iterator<Item = Value> + '_> {
        match self {
            OutcomeSpace::Enumerated(vs) => Box::new(vs.iter().cloned()),
            OutcomeSpace::IntegerInterval { lo, hi } => Box::new((*lo..=*hi).map(Value::Int)),
        }
    }
}
