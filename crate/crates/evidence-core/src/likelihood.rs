//! Likelihood functions and the law of likelihood.
//!
//! A likelihood function is P(observed data | θ) read as a function of θ,
//! defined only up to an arbitrary positive factor. Evidence for one
//! parameter point over another is the ratio of the function at the two
//! points; the ratio is invariant under rescaling, so every reported number
//! is representative-independent.
//!
//! Functions are stored as their strictly-positive support plus the parameter
//! space; the function is total, evaluating to 0 off the stored support. This
//! one representation covers both fully-enumerable spaces and lazily-windowed
//! ones such as the Birnbaum location family, whose support after any finite
//! sample is a small window inside a space of ~4·10¹⁰ points.

use indexmap::IndexMap;
use std::sync::Arc;

use crate::error::{EvidenceError, Result};
use crate::model::DiscreteModel;
use crate::sample::Sample;
use crate::space::{ParameterPoint, ParameterSpace};
use crate::value::Value;

/// Default tolerance used by [`comparable`] when testing whether two
/// functions are rescalings of one another.
pub const COMPARABLE_TOLERANCE: f64 = 1e-9;

/// A likelihood function over one parameter space.
///
/// Invariants, enforced at construction: the support is non-empty, every
/// stored value is strictly positive and finite, and every stored point
/// belongs to the function's space. Values carry an arbitrary positive scale;
/// only ratios between points of one function are meaningful.
#[derive(Debug, Clone, PartialEq)]
pub struct LikelihoodFunction {
    space: Arc<ParameterSpace>,
    support: IndexMap<ParameterPoint, f64>,
}

impl LikelihoodFunction {
    /// Builds a function from its positive support, keeping the given
    /// (canonical) entry order. Zero entries are not allowed; leave them out.
    pub fn from_support(
        space: Arc<ParameterSpace>,
        support: IndexMap<ParameterPoint, f64>,
    ) -> Result<Self> {
        if support.is_empty() {
            return Err(EvidenceError::ImpossibleObservation);
        }
        for (p, &v) in &support {
            if !space.owns(p) {
                return Err(EvidenceError::CrossModelComparison);
            }
            if !(v > 0.0) || !v.is_finite() {
                return Err(EvidenceError::SpecInconsistent(format!(
                    "likelihood value {v} at [{}] must be positive and finite",
                    p.display_coords()
                )));
            }
        }
        Ok(LikelihoodFunction { space, support })
    }

    pub fn space(&self) -> &Arc<ParameterSpace> {
        &self.space
    }

    /// The strictly-positive entries in canonical order.
    pub fn support(&self) -> &IndexMap<ParameterPoint, f64> {
        &self.support
    }

    /// The function's value at any point of its space (0 off the support).
    /// Points from a different space are refused.
    pub fn value(&self, point: &ParameterPoint) -> Result<f64> {
        if !self.space.owns(point) {
            return Err(EvidenceError::CrossModelComparison);
        }
        Ok(self.support.get(point).copied().unwrap_or(0.0))
    }

    /// The same function represented with every value multiplied by `gamma`.
    ///
    /// # Panics
    ///
    /// Panics if `gamma` is not strictly positive and finite; a non-positive
    /// scale would change the function's evidential content.
    #[must_use]
    pub fn scaled(&self, gamma: f64) -> Self {
        assert!(
            gamma > 0.0 && gamma.is_finite(),
            "scale factor must be positive and finite, got {gamma}"
        );
        LikelihoodFunction {
            space: Arc::clone(&self.space),
            support: self
                .support
                .iter()
                .map(|(p, &v)| (p.clone(), v * gamma))
                .collect(),
        }
    }
}

/// How a likelihood ratio classifies the evidence between two points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    FavorsA,
    FavorsB,
    Neutral,
    ConclusiveA,
    ConclusiveB,
}

impl Classification {
    /// Stable machine-readable name.
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::FavorsA => "favors_a",
            Classification::FavorsB => "favors_b",
            Classification::Neutral => "neutral",
            Classification::ConclusiveA => "conclusive_a",
            Classification::ConclusiveB => "conclusive_b",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies a likelihood ratio L(a)/L(b). Pure in the ratio: +∞ and 0 are
/// conclusive (one side has support, the other none), 1 is neutral, and any
/// other finite value favors the larger side.
pub fn classify(ratio: f64) -> Classification {
    debug_assert!(!ratio.is_nan(), "0/0 must be rejected before classification");
    if ratio == f64::INFINITY {
        Classification::ConclusiveA
    } else if ratio == 0.0 {
        Classification::ConclusiveB
    } else if ratio == 1.0 {
        Classification::Neutral
    } else if ratio > 1.0 {
        Classification::FavorsA
    } else {
        Classification::FavorsB
    }
}

/// The evidence in one likelihood function between two of its points.
#[derive(Debug, Clone, PartialEq)]
pub struct EvidenceComparison {
    pub point_a: ParameterPoint,
    pub point_b: ParameterPoint,
    /// L(a)/L(b): non-negative, possibly +∞; never NaN.
    pub ratio: f64,
    pub classification: Classification,
}

/// The likelihood function of a single observation.
///
/// Values are P(observation | θ) for every θ; points giving the observation
/// probability zero are off the support. Errors: the observation must lie in
/// the model's outcome space, and at least one point must give it positive
/// probability.
pub fn likelihood(model: &DiscreteModel, observation: &Value) -> Result<LikelihoodFunction> {
    if !model.outcomes().contains(observation) {
        return Err(EvidenceError::OutcomeNotInSpace {
            outcome: observation.display_token(),
        });
    }
    let mut support = IndexMap::new();
    for point in model.points_supporting(observation)? {
        let p = model.prob(&point, observation)?;
        if p > 0.0 {
            support.insert(point, p);
        }
    }
    LikelihoodFunction::from_support(Arc::clone(model.space()), support)
}

/// The likelihood function of an independent, identically-distributed sample.
///
/// The product is computed over distinct outcomes in canonical order with
/// integer exponents (with 0⁰ = 1), so permuted samples give bit-identical
/// functions.
pub fn iid_likelihood(model: &DiscreteModel, sample: &Sample) -> Result<LikelihoodFunction> {
    if sample.is_empty() {
        return Err(EvidenceError::EmptySample);
    }
    for obs in sample.iter() {
        if !model.outcomes().contains(obs) {
            return Err(EvidenceError::OutcomeNotInSpace {
                outcome: obs.display_token(),
            });
        }
    }
    let counts = sample.counts();
    // A point can only have a positive product if it supports every observed
    // outcome, so candidates come from one outcome's inverse support.
    let candidates = model.points_supporting(&counts[0].0)?;
    let mut support = IndexMap::new();
    for point in candidates {
        let mut product = 1.0f64;
        for (outcome, count) in &counts {
            let p = model.prob(&point, outcome)?;
            product *= p.powi(*count as i32);
            if product == 0.0 {
                break;
            }
        }
        if product > 0.0 {
            support.insert(point, product);
        }
    }
    LikelihoodFunction::from_support(Arc::clone(model.space()), support)
}

/// The law of likelihood: evidence for `a` over `b` within one function.
///
/// Both points must belong to the function's space ([`EvidenceError::CrossModelComparison`]
/// otherwise); if both likelihoods are zero the ratio is a meaningless 0/0
/// ([`EvidenceError::UndefinedRatio`]).
pub fn likelihood_ratio(
    function: &LikelihoodFunction,
    a: &ParameterPoint,
    b: &ParameterPoint,
) -> Result<EvidenceComparison> {
    let la = function.value(a)?;
    let lb = function.value(b)?;
    let ratio = if la == 0.0 && lb == 0.0 {
        return Err(EvidenceError::UndefinedRatio {
            point_a: a.display_coords(),
            point_b: b.display_coords(),
        });
    } else if lb == 0.0 {
        f64::INFINITY
    } else {
        la / lb
    };
    Ok(EvidenceComparison {
        point_a: a.clone(),
        point_b: b.clone(),
        ratio,
        classification: classify(ratio),
    })
}

/// All points attaining the function's maximum (exact ties included), in the
/// function's canonical support order. Never empty.
pub fn max_likelihood_points(function: &LikelihoodFunction) -> Vec<ParameterPoint> {
    let max = function
        .support()
        .values()
        .fold(0.0f64, |acc, &v| acc.max(v));
    function
        .support()
        .iter()
        .filter(|(_, &v)| v == max)
        .map(|(p, _)| p.clone())
        .collect()
}

/// The function's maximum value.
pub fn max_likelihood_value(function: &LikelihoodFunction) -> f64 {
    function
        .support()
        .values()
        .fold(0.0f64, |acc, &v| acc.max(v))
}

/// Whether two functions over the same space are rescalings of one another:
/// their zero sets coincide and, with c fitted at the largest value of `a`,
/// |a(θ) − c·b(θ)| ≤ ε·max(a) everywhere. Functions over different spaces are
/// refused.
pub fn proportional_equivalent(
    a: &LikelihoodFunction,
    b: &LikelihoodFunction,
    epsilon: f64,
) -> Result<bool> {
    if *a.space() != *b.space() {
        return Err(EvidenceError::CrossModelComparison);
    }
    // Zero sets must coincide, i.e. the positive supports hold the same points.
    if a.support().len() != b.support().len() {
        return Ok(false);
    }
    if !a.support().keys().all(|p| b.support().contains_key(p)) {
        return Ok(false);
    }
    let (peak, &max_a) = a
        .support()
        .iter()
        .max_by(|(pa, va), (pb, vb)| va.total_cmp(vb).then_with(|| pb.cmp(pa)))
        .expect("support is never empty");
    let c = max_a / b.support()[peak];
    let tol = epsilon * max_a;
    Ok(a.support()
        .iter()
        .all(|(p, &va)| (va - c * b.support()[p]).abs() <= tol))
}

/// Whether ratios may be read across the two functions: true exactly when
/// they are the same likelihood function — one space and proportional values
/// (tolerance [`COMPARABLE_TOLERANCE`]). Functions over different spaces, or
/// from different observations, are not comparable.
pub fn comparable(a: &LikelihoodFunction, b: &LikelihoodFunction) -> bool {
    match proportional_equivalent(a, b, COMPARABLE_TOLERANCE) {
        Ok(p) => p,
        Err(_) => false,
    }
}
