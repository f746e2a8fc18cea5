//! Two urn-discrimination models.
//!
//! Urn 1a holds 200 red balls; urn 1b holds 2 red and 198 balls of other
//! colors. [`urn1_model`] asks which urn a draw came from, tracking only
//! red / non-red: its parameter ν_c is the count of ball *colors* in the urn
//! (1 or 201).
//!
//! [`urn2_model`] poses the same discrimination when the color shared by both
//! urns is unknown: the parameter gains a nuisance dimension μ naming the
//! shared color, and each draw records an exact color. Which label carries
//! which ball count depends on the hypothesized μ, but the multiset of counts
//! does not — the distribution of any color-symmetric statistic is the same
//! under every μ, which is what lets the nuisance dimension be eliminated.

use crate::error::{EvidenceError, Result};
use crate::model::DiscreteModel;
use crate::outcome::OutcomeSpace;
use crate::space::{Dimension, ParameterSpace};
use crate::value::Value;

/// The two-outcome urn model: ν_c ∈ {1, 201}, outcomes `red`/`non-red`.
///
/// Under ν_c = 1 every ball is red; under ν_c = 201 a red draw has
/// probability 0.01. A single red draw gives the 100:1 ratio in favor of the
/// all-red urn; a single non-red draw rules it out conclusively.
pub fn urn1_model() -> DiscreteModel {
    let space = ParameterSpace::new(vec![Dimension::listed(
        "nu_c",
        vec![Value::Int(1), Value::Int(201)],
    )])
    .expect("static space is valid");
    let outcomes = OutcomeSpace::Enumerated(vec![Value::label("red"), Value::label("non-red")]);
    let rows = vec![vec![1.0, 0.0], vec![0.01, 0.99]];
    DiscreteModel::from_table("urn1", space, outcomes, rows).expect("static table is valid")
}

/// Ball counts for the multi-color urn of [`urn2_model`].
///
/// `shared_color_count` balls carry the color common to both urns; each entry
/// of `other_colors` is a `(label, count)` pair for one of the remaining
/// colors. Every other-color count must be strictly below the shared count,
/// so that a color-frequency analysis can in principle tell the shared color
/// apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UrnComposition {
    shared_color_count: u64,
    other_colors: Vec<(String, u64)>,
}

impl UrnComposition {
    /// Validates and builds a composition: positive counts, each other-color
    /// count strictly below the shared count, and distinct non-empty labels.
    pub fn new(shared_color_count: u64, other_colors: Vec<(String, u64)>) -> Result<Self> {
        if shared_color_count == 0 {
            return Err(EvidenceError::InvalidComposition(
                "shared color count must be positive".into(),
            ));
        }
        if other_colors.is_empty() {
            return Err(EvidenceError::InvalidComposition(
                "at least one other color is required".into(),
            ));
        }
        for (i, (label, count)) in other_colors.iter().enumerate() {
            if label.is_empty() {
                return Err(EvidenceError::InvalidComposition("empty color label".into()));
            }
            if other_colors[..i].iter().any(|(l, _)| l == label) {
                return Err(EvidenceError::InvalidComposition(format!(
                    "color {label} listed twice"
                )));
            }
            if *count == 0 {
                return Err(EvidenceError::InvalidComposition(format!(
                    "color {label} has zero balls"
                )));
            }
            if *count >= shared_color_count {
                return Err(EvidenceError::InvalidComposition(format!(
                    "color {label} has {count} balls, not strictly fewer than the shared color's {shared_color_count}"
                )));
            }
        }
        Ok(UrnComposition {
            shared_color_count,
            other_colors,
        })
    }

    /// The canonical composition: 100 shared balls and 9,900 others spread
    /// over 200 colors (100 colors × 49 balls, 100 colors × 50 balls), for
    /// 10,000 balls in all. A draw of the shared color then has probability
    /// exactly 0.01 and every other color at most 0.005.
    pub fn standard() -> Self {
        let mut other_colors = Vec::with_capacity(200);
        for i in 1..=100u32 {
            other_colors.push((format!("c{i:03}"), 49));
        }
        for i in 101..=200u32 {
            other_colors.push((format!("c{i:03}"), 50));
        }
        UrnComposition::new(100, other_colors).expect("standard composition is valid")
    }

    pub fn shared_color_count(&self) -> u64 {
        self.shared_color_count
    }

    pub fn other_colors(&self) -> &[(String, u64)] {
        &self.other_colors
    }

    /// Total number of balls in the multi-color urn.
    pub fn total(&self) -> u64 {
        self.shared_color_count + self.other_colors.iter().map(|(_, c)| c).sum::<u64>()
    }

    /// A label for the extra candidate color, distinct from every listed one.
    fn extra_label(&self) -> String {
        let mut candidate = "c000".to_owned();
        let mut i = 0;
        while self.other_colors.iter().any(|(l, _)| *l == candidate) {
            i += 1;
            candidate = format!("extra{i}");
        }
        candidate
    }
}

impl Default for UrnComposition {
    fn default() -> Self {
        UrnComposition::standard()
    }
}

/// The unknown-shared-color urn model.
///
/// Parameters are (μ, ν_c): μ names which color is shared and ν_c ∈ {1, 201}
/// is the color count, as in [`urn1_model`]. The color universe is the listed
/// other colors plus one extra candidate, so any of the 201 colors may play
/// the shared role. Under (μ, ν_c=1) every draw shows color μ. Under
/// (μ, ν_c=201) color μ has probability `shared/total` and the remaining 200
/// colors take the listed counts in universe order — which label carries
/// which count shifts with μ, but the count multiset never changes.
pub fn urn2_model(composition: &UrnComposition) -> Result<DiscreteModel> {
    let extra = composition.extra_label();
    let mut universe: Vec<String> = Vec::with_capacity(composition.other_colors.len() + 1);
    universe.push(extra);
    universe.extend(composition.other_colors.iter().map(|(l, _)| l.clone()));

    let space = ParameterSpace::new(vec![
        Dimension::listed("mu", universe.iter().map(Value::label).collect()),
        Dimension::listed("nu_c", vec![Value::Int(1), Value::Int(201)]),
    ])?;
    let outcomes = OutcomeSpace::Enumerated(universe.iter().map(Value::label).collect());

    let total = composition.total() as f64;
    let n = universe.len();
    let mut rows = Vec::with_capacity(2 * n);
    for mu_idx in 0..n {
        // ν_c = 1: all balls carry the shared color.
        let mut certain = vec![0.0; n];
        certain[mu_idx] = 1.0;
        rows.push(certain);
        // ν_c = 201: shared count on μ, listed counts on the rest in
        // universe order.
        let mut spread = vec![0.0; n];
        spread[mu_idx] = composition.shared_color_count as f64 / total;
        let mut counts = composition.other_colors.iter().map(|(_, c)| *c);
        for (slot, p) in spread.iter_mut().enumerate() {
            if slot != mu_idx {
                let count = counts.next().expect("universe has one more color than the list");
                *p = count as f64 / total;
            }
        }
        rows.push(spread);
    }
    DiscreteModel::from_table("urn2", space, outcomes, rows)
}
