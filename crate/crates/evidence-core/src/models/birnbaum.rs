//! Birnbaum's mixed-support location family.
//!
//! The parameter is θ = (μ, σ) with integer location μ and σ ∈ {0, 100}.
//! Under σ = 0 the observation equals μ with certainty; under σ = 100 it
//! follows a discrete triangular distribution on the integers within 99 of μ:
//!
//! ```text
//! P(x | μ, 0)   = 1            if x = μ, else 0
//! P(x | μ, 100) = c·(100−|x−μ|) if |x−μ| < 100, else 0
//! ```
//!
//! Summing the triangle exactly gives 100 + 2·Σ_{d=1}^{99}(100−d) = 100² =
//! 10,000, so the normalizing constant is c = 1/10,000. (Birnbaum's 1969
//! presentation of this example prints c ≐ 1/10,040, which does not sum to
//! one and is rejected by validation; with the normalizing c the headline
//! ratio against the best rival is exactly 100 rather than "exceeding 100".)
//!
//! The μ range is huge (±10¹⁰ by default) and is never materialized: the
//! model is rule-backed, and every observation pins the positive support to a
//! window of at most 199 locations.

use std::sync::Arc;

use crate::error::{EvidenceError, Result};
use crate::model::{DiscreteModel, PmfEvaluator, NORMALIZATION_TOLERANCE};
use crate::outcome::OutcomeSpace;
use crate::space::{Dimension, ParameterPoint, ParameterSpace};
use crate::value::Value;

/// Half-width of the triangular spread: positive probability needs |x−μ| < 100.
pub const PEAK_HALFWIDTH: i64 = 100;

/// The two spread values of σ.
pub const SIGMA_VALUES: [i64; 2] = [0, 100];

/// Exact normalizer of the triangular spread (PEAK_HALFWIDTH²).
const TRIANGLE_MASS: f64 = 10_000.0;

/// Keep |μ| small enough that window arithmetic can never overflow.
const MU_MAGNITUDE_LIMIT: i64 = i64::MAX / 4;

/// Configuration for [`birnbaum_model`].
#[derive(Debug, Clone, PartialEq)]
pub struct BirnbaumConfig {
    /// Smallest admissible μ.
    pub mu_lo: i64,
    /// Largest admissible μ.
    pub mu_hi: i64,
    /// Triangular normalization constant; must satisfy c·10000 = 1 within
    /// the normalization tolerance.
    pub c: f64,
}

impl Default for BirnbaumConfig {
    /// The textbook range: every integer strictly between ±10¹⁰, c = 1/10,000.
    fn default() -> Self {
        BirnbaumConfig {
            mu_lo: -9_999_999_999,
            mu_hi: 9_999_999_999,
            c: 1e-4,
        }
    }
}

impl BirnbaumConfig {
    fn validate(&self) -> Result<()> {
        if self.mu_lo > self.mu_hi {
            return Err(EvidenceError::InvalidConfig(format!(
                "empty location range {}..={}",
                self.mu_lo, self.mu_hi
            )));
        }
        if self.mu_lo <= -MU_MAGNITUDE_LIMIT || self.mu_hi >= MU_MAGNITUDE_LIMIT {
            return Err(EvidenceError::InvalidConfig(
                "location range magnitude is too large".into(),
            ));
        }
        if !(self.c > 0.0) || (self.c * TRIANGLE_MASS - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(EvidenceError::InvalidConfig(format!(
                "c = {} does not normalize the triangular spread; the exact normalizer is 1/10000 (the sometimes-quoted 1/10040 sums to less than one)",
                self.c
            )));
        }
        Ok(())
    }
}

struct BirnbaumPmf {
    space: Arc<ParameterSpace>,
    mu_lo: i64,
    mu_hi: i64,
    c: f64,
}

impl BirnbaumPmf {
    fn point(&self, mu: i64, sigma: i64) -> ParameterPoint {
        self.space
            .point_from_coords(vec![Value::Int(mu), Value::Int(sigma)])
            .expect("window points lie inside the space")
    }

    fn coords(point: &ParameterPoint) -> (i64, i64) {
        let mu = point.coords()[0].as_int().expect("mu is an integer");
        let sigma = point.coords()[1].as_int().expect("sigma is an integer");
        (mu, sigma)
    }

    fn triangle(&self, d: i64) -> f64 {
        debug_assert!((0..PEAK_HALFWIDTH).contains(&d));
        self.c * (PEAK_HALFWIDTH - d) as f64
    }
}

impl PmfEvaluator for BirnbaumPmf {
    fn prob(&self, point: &ParameterPoint, outcome: &Value) -> f64 {
        let Some(x) = outcome.as_int() else { return 0.0 };
        let (mu, sigma) = Self::coords(point);
        match sigma {
            0 => {
                if x == mu {
                    1.0
                } else {
                    0.0
                }
            }
            _ => {
                let d = (x - mu).abs();
                if d < PEAK_HALFWIDTH {
                    self.triangle(d)
                } else {
                    0.0
                }
            }
        }
    }

    fn support(&self, point: &ParameterPoint) -> Vec<(Value, f64)> {
        let (mu, sigma) = Self::coords(point);
        match sigma {
            0 => vec![(Value::Int(mu), 1.0)],
            _ => ((mu - PEAK_HALFWIDTH + 1)..=(mu + PEAK_HALFWIDTH - 1))
                .map(|x| (Value::Int(x), self.triangle((x - mu).abs())))
                .collect(),
        }
    }

    fn inverse_support(&self, outcome: &Value) -> Vec<ParameterPoint> {
        let Some(x) = outcome.as_int() else { return Vec::new() };
        let lo = (x - PEAK_HALFWIDTH + 1).max(self.mu_lo);
        let hi = (x + PEAK_HALFWIDTH - 1).min(self.mu_hi);
        let mut points = Vec::new();
        for mu in lo..=hi {
            if mu == x {
                points.push(self.point(mu, 0));
            }
            points.push(self.point(mu, 100));
        }
        points
    }

    fn spot_check_points(&self) -> Vec<ParameterPoint> {
        let mut mus = vec![self.mu_lo, -1, 0, 1, 17, self.mu_hi];
        mus.retain(|mu| (self.mu_lo..=self.mu_hi).contains(mu));
        mus.dedup();
        mus.iter()
            .flat_map(|&mu| SIGMA_VALUES.iter().map(move |&s| (mu, s)))
            .map(|(mu, s)| self.point(mu, s))
            .collect()
    }
}

/// Builds the mixed-support location family.
///
/// The outcome space covers every integer reachable from some admissible μ
/// (the μ range widened by 99 on each side).
pub fn birnbaum_model(config: &BirnbaumConfig) -> Result<DiscreteModel> {
    config.validate()?;
    let space = ParameterSpace::new(vec![
        Dimension::int_range("mu", config.mu_lo, config.mu_hi),
        Dimension::listed("sigma", SIGMA_VALUES.iter().map(|&s| Value::Int(s)).collect()),
    ])?;
    let outcomes = OutcomeSpace::IntegerInterval {
        lo: config.mu_lo - (PEAK_HALFWIDTH - 1),
        hi: config.mu_hi + (PEAK_HALFWIDTH - 1),
    };
    let rule = Arc::new(BirnbaumPmf {
        space: Arc::clone(&space),
        mu_lo: config.mu_lo,
        mu_hi: config.mu_hi,
        c: config.c,
    });
    DiscreteModel::from_rule("birnbaum", space, outcomes, rule)
}

/// The two-outcome collapse of the family at a known location `m`: the only
/// parameter left is σ, and the outcomes record whether x = m or not.
///
/// Its table is exactly the [`urn1_model`](super::urn1_model) table with
/// outcomes relabelled (`red` → `x=m`, `non-red` → `x!=m`): P(x=m | σ=100) =
/// 100·c = 0.01 under the normalizing c.
pub fn birnbaum_known_mu_model(m: i64) -> DiscreteModel {
    let space = ParameterSpace::new(vec![Dimension::listed(
        "sigma",
        SIGMA_VALUES.iter().map(|&s| Value::Int(s)).collect(),
    )])
    .expect("static space is valid");
    let outcomes = OutcomeSpace::Enumerated(vec![
        Value::label(format!("x={m}")),
        Value::label(format!("x!={m}")),
    ]);
    let rows = vec![vec![1.0, 0.0], vec![0.01, 0.99]];
    DiscreteModel::from_table("birnbaum-known-mu", space, outcomes, rows)
        .expect("static table is valid")
}
