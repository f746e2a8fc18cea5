//! Finite discrete statistical models.
//!
//! A [`DiscreteModel`] assigns, to every parameter point θ, a probability mass
//! function over a shared outcome space. Small models are backed by a dense
//! table validated row by row; models whose parameter space is too large to
//! materialize (the Birnbaum location family) are backed by an evaluation
//! rule that also declares, per point, its finite support and, per outcome,
//! the finite set of points giving that outcome positive probability.

use std::fmt;
use std::sync::Arc;

use crate::error::{EvidenceError, Result};
use crate::outcome::OutcomeSpace;
use crate::space::{ParameterPoint, ParameterSpace};
use crate::value::Value;

/// Per-row normalization tolerance: Σ_x P(x|θ) must lie within this distance
/// of 1 for every parameter point.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Largest dense table (points × outcomes) the crate will materialize.
pub const DENSE_CELL_LIMIT: u128 = 5_000_000;

/// Evaluation rule backing a model whose table cannot be materialized.
///
/// Implementations must be deterministic and mutually consistent: `support`
/// lists exactly the outcomes where `prob` is positive, and `inverse_support`
/// lists exactly the points where the given outcome has positive probability,
/// in canonical (sorted) point order.
pub trait PmfEvaluator: Send + Sync {
    /// P(outcome | point); 0.0 for outcomes off the support.
    fn prob(&self, point: &ParameterPoint, outcome: &Value) -> f64;

    /// The outcomes with positive probability at `point`, in canonical
    /// outcome order, with their probabilities.
    fn support(&self, point: &ParameterPoint) -> Vec<(Value, f64)>;

    /// The parameter points assigning `outcome` positive probability, in
    /// canonical point order.
    fn inverse_support(&self, outcome: &Value) -> Vec<ParameterPoint>;

    /// Representative points at which construction-time validation checks
    /// non-negativity and normalization.
    fn spot_check_points(&self) -> Vec<ParameterPoint>;
}

#[derive(Clone)]
enum Backing {
    /// Row per parameter point (enumeration order), column per outcome.
    Dense { rows: Vec<Vec<f64>> },
    Rule(Arc<dyn PmfEvaluator>),
}

/// A finite discrete model: parameter space, outcome space, and a PMF per
/// parameter point.
#[derive(Clone)]
pub struct DiscreteModel {
    name: String,
    space: Arc<ParameterSpace>,
    outcomes: Arc<OutcomeSpace>,
    backing: Backing,
}

impl fmt::Debug for DiscreteModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiscreteModel")
            .field("name", &self.name)
            .field("space", &self.space)
            .field("outcomes", &self.outcomes)
            .field(
                "backing",
                &match &self.backing {
                    Backing::Dense { rows } => format!("dense[{} rows]", rows.len()),
                    Backing::Rule(_) => "rule".to_owned(),
                },
            )
            .finish()
    }
}

impl DiscreteModel {
    /// Builds a dense model, validating every row: correct width, no negative
    /// entries, and row sum within [`NORMALIZATION_TOLERANCE`] of 1.
    ///
    /// `rows` follow the space's canonical point enumeration order.
    pub fn from_table(
        name: impl Into<String>,
        space: Arc<ParameterSpace>,
        outcomes: OutcomeSpace,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let name = name.into();
        let n_points = space.point_count().ok_or(EvidenceError::EnumerationTooLarge {
            size: u128::MAX,
            bound: DENSE_CELL_LIMIT,
        })?;
        let n_outcomes = outcomes.len();
        if outcomes.is_empty() {
            return Err(EvidenceError::InvalidSpace(
                "a model needs at least one outcome".into(),
            ));
        }
        if let Some(cells) = n_points.checked_mul(n_outcomes) {
            if cells > DENSE_CELL_LIMIT {
                return Err(EvidenceError::EnumerationTooLarge {
                    size: cells,
                    bound: DENSE_CELL_LIMIT,
                });
            }
        } else {
            return Err(EvidenceError::EnumerationTooLarge {
                size: u128::MAX,
                bound: DENSE_CELL_LIMIT,
            });
        }
        if rows.len() as u128 != n_points {
            return Err(EvidenceError::SpecInconsistent(format!(
                "model {name}: {} rows for {} parameter points",
                rows.len(),
                n_points
            )));
        }
        if let OutcomeSpace::Enumerated(vs) = &outcomes {
            for (j, v) in vs.iter().enumerate() {
                if vs[..j].contains(v) {
                    return Err(EvidenceError::InvalidSpace(format!(
                        "outcome {} listed twice",
                        v
                    )));
                }
            }
        }
        for (point, row) in space.points().zip(&rows) {
            if row.len() as u128 != n_outcomes {
                return Err(EvidenceError::SpecInconsistent(format!(
                    "row [{}] has {} entries for {} outcomes",
                    point.display_coords(),
                    row.len(),
                    n_outcomes
                )));
            }
            validate_pmf_row(&point, row.iter().copied().zip(outcomes.iter()))?;
        }
        Ok(DiscreteModel {
            name,
            space,
            outcomes: Arc::new(outcomes),
            backing: Backing::Dense { rows },
        })
    }

    /// Builds a rule-backed model, validating the evaluator's declared spot
    /// points the same way dense rows are validated.
    pub fn from_rule(
        name: impl Into<String>,
        space: Arc<ParameterSpace>,
        outcomes: OutcomeSpace,
        rule: Arc<dyn PmfEvaluator>,
    ) -> Result<Self> {
        let name = name.into();
        for point in rule.spot_check_points() {
            if !space.owns(&point) {
                return Err(EvidenceError::SpecInconsistent(format!(
                    "model {name}: spot-check point [{}] is outside the parameter space",
                    point.display_coords()
                )));
            }
            let support = rule.support(&point);
            for (outcome, _) in &support {
                if !outcomes.contains(outcome) {
                    return Err(EvidenceError::OutcomeNotInSpace {
                        outcome: outcome.display_token(),
                    });
                }
            }
            validate_pmf_row(&point, support.iter().map(|(o, p)| (*p, o.clone())))?;
        }
        Ok(DiscreteModel {
            name,
            space,
            outcomes: Arc::new(outcomes),
            backing: Backing::Rule(rule),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Arc<ParameterSpace> {
        &self.space
    }

    pub fn outcomes(&self) -> &Arc<OutcomeSpace> {
        &self.outcomes
    }

    /// True when the full probability table is materialized.
    pub fn is_dense(&self) -> bool {
        matches!(self.backing, Backing::Dense { .. })
    }

    /// P(outcome | point). The point must belong to this model's space and
    /// the outcome to its outcome space.
    pub fn prob(&self, point: &ParameterPoint, outcome: &Value) -> Result<f64> {
        if !self.space.owns(point) {
            return Err(EvidenceError::CrossModelComparison);
        }
        let outcome_idx = self
            .outcomes
            .index_of(outcome)
            .ok_or_else(|| EvidenceError::OutcomeNotInSpace {
                outcome: outcome.display_token(),
            })?;
        match &self.backing {
            Backing::Dense { rows } => {
                let row = self.dense_row_index(point)?;
                Ok(rows[row][outcome_idx as usize])
            }
            Backing::Rule(rule) => Ok(rule.prob(point, outcome)),
        }
    }

    /// The outcomes with positive probability at `point`, in canonical
    /// outcome order.
    pub fn support(&self, point: &ParameterPoint) -> Result<Vec<(Value, f64)>> {
        if !self.space.owns(point) {
            return Err(EvidenceError::CrossModelComparison);
        }
        match &self.backing {
            Backing::Dense { rows } => {
                let row = &rows[self.dense_row_index(point)?];
                Ok(self
                    .outcomes
                    .iter()
                    .zip(row.iter())
                    .filter(|(_, &p)| p > 0.0)
                    .map(|(o, &p)| (o, p))
                    .collect())
            }
            Backing::Rule(rule) => Ok(rule.support(point)),
        }
    }

    /// The parameter points assigning `outcome` positive probability, in
    /// canonical point order.
    pub fn points_supporting(&self, outcome: &Value) -> Result<Vec<ParameterPoint>> {
        let outcome_idx = self
            .outcomes
            .index_of(outcome)
            .ok_or_else(|| EvidenceError::OutcomeNotInSpace {
                outcome: outcome.display_token(),
            })?;
        match &self.backing {
            Backing::Dense { rows } => Ok(self
                .space
                .points()
                .zip(rows.iter())
                .filter(|(_, row)| row[outcome_idx as usize] > 0.0)
                .map(|(p, _)| p)
                .collect()),
            Backing::Rule(rule) => Ok(rule.inverse_support(outcome)),
        }
    }

    fn dense_row_index(&self, point: &ParameterPoint) -> Result<usize> {
        let mut idx: u128 = 0;
        for (v, d) in point.coords().iter().zip(self.space.dimensions()) {
            let i = d
                .values()
                .index_of(v)
                .ok_or_else(|| EvidenceError::UnknownValue {
                    dimension: d.name().to_owned(),
                    value: v.display_token(),
                })?;
            idx = idx * d.values().len() + i;
        }
        Ok(idx as usize)
    }
}

fn validate_pmf_row(
    point: &ParameterPoint,
    entries: impl Iterator<Item = (f64, Value)>,
) -> Result<()> {
    let mut sum = 0.0;
    for (p, outcome) in entries {
        if !(p >= 0.0) {
            return Err(EvidenceError::NegativeProbability {
                point: point.display_coords(),
                outcome: outcome.display_token(),
                value: p,
            });
        }
        sum += p;
    }
    if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(EvidenceError::RowNotNormalized {
            point: point.display_coords(),
            sum,
        });
    }
    Ok(())
}
