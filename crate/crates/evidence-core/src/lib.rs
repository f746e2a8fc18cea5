//! Likelihood-based evidence analysis for finite discrete models.
//!
//! This crate measures statistical evidence by the law of likelihood: data
//! support one parameter value over another exactly as much as the ratio of
//! their likelihoods, read off a single likelihood function. It provides:
//!
//! * model building blocks ([`model`], [`space`], [`outcome`], [`sample`]) —
//!   finite parameter spaces, discrete outcome spaces, validated PMF tables,
//!   and lazily-backed families too large to tabulate;
//! * likelihood operations ([`likelihood`]) — likelihood functions, evidence
//!   ratios with conclusive/neutral classification, maximum-likelihood point
//!   sets, and proportionality/comparability predicates;
//! * a built-in model library ([`models`]) with seeded sampling;
//! * nuisance-parameter elimination ([`nuisance`]) — derived-statistic
//!   models, marginal and profile likelihood;
//! * misleading-evidence probabilities ([`misleading`]) — exact enumeration
//!   and reproducible Monte Carlo for P(evidence ≥ k for a false hypothesis);
//! * a line-oriented model file format ([`modelspec`]) with a canonical
//!   serializer.
//!
//! Everything is deterministic: seeded generators are counter-based with
//! per-trial streams, reductions run in fixed order, and equal inputs produce
//! bit-identical outputs regardless of thread count.

pub mod error;
pub mod likelihood;
pub mod misleading;
pub mod model;
pub mod models;
pub mod modelspec;
pub mod nuisance;
pub mod outcome;
pub mod sample;
pub mod space;
pub mod value;

pub use error::{EvidenceError, Result};
pub use likelihood::{
    classify, comparable, iid_likelihood, likelihood, likelihood_ratio, max_likelihood_points,
    max_likelihood_value, proportional_equivalent, Classification, EvidenceComparison,
    LikelihoodFunction,
};
pub use model::{DiscreteModel, PmfEvaluator, NORMALIZATION_TOLERANCE};
pub use outcome::OutcomeSpace;
pub use sample::Sample;
pub use space::{Dimension, DimensionValues, ParameterPoint, ParameterSpace};
pub use value::Value;
