//! Probability of misleading evidence.
//!
//! Evidence is *misleading* when data generated from a known true parameter
//! point end up favoring some wrong value over the true one by at least a
//! chosen strength threshold. This module computes that probability — exactly
//! by enumerating outcome multisets, or by seeded Monte Carlo — under several
//! comparison styles, from the raw "best wrong point vs true point" reading
//! to nuisance-corrected marginal and derived-statistic readings.
//!
//! The contrast between styles is the point: a sharp null embedded in a big
//! parameter vector can make raw misleading evidence *certain* at any finite
//! threshold, while the derived-statistic reading of the same problem is
//! never misled at all.

use rayon::prelude::*;

use crate::error::{EvidenceError, Result};
use crate::likelihood::{iid_likelihood, LikelihoodFunction};
use crate::model::DiscreteModel;
use crate::models::sample_stream;
use crate::nuisance::{
    derived_statistic_model, distinct_count_statistic, marginalize, multiset_count, multiset_mass,
    DerivedOptions, DerivedStatistic, NuisanceSpec,
};
use crate::sample::Sample;
use crate::space::ParameterPoint;
use crate::value::Value;

/// Default cap on enumerated outcome multisets for the exact path.
pub const DEFAULT_MISLEADING_BUDGET: u128 = 5_000_000;

/// How the "evidence against the true value" ratio is read off a sample.
#[derive(Debug, Clone)]
pub enum ComparisonStyle {
    /// Best favored point vs best point carrying the true interest
    /// coordinates, on the raw likelihood over the full parameter space.
    /// With no nuisance specification every dimension is interest, so this
    /// is the classic sup-over-wrong-points vs true-point comparison.
    VectorArgmax,
    /// A fixed head-to-head: likelihood at `a` over likelihood at `b`.
    FixedPair { a: ParameterPoint, b: ParameterPoint },
    /// Same comparison after marginalizing the nuisance dimensions out of
    /// the likelihood function.
    InterestMarginal,
    /// Same comparison on the derived-statistic model, which must first pass
    /// the nuisance-independence check.
    InterestDerived,
}

/// Which wrong interest values count as "favored" by misleading evidence.
#[derive(Debug, Clone)]
pub enum Favored {
    /// Any interest coordinate tuple other than the true one.
    OtherInterestValues,
    /// An explicit list of interest coordinate tuples; each must differ from
    /// the true tuple.
    InterestValues(Vec<Vec<Value>>),
}

/// A fully specified misleading-evidence question.
#[derive(Debug, Clone)]
pub struct ComparisonSpec {
    style: ComparisonStyle,
    favored: Favored,
    threshold: f64,
    nuisance: Option<NuisanceSpec>,
    statistic: Option<DerivedStatistic>,
}

impl ComparisonSpec {
    /// A spec with the given style and strength threshold (must exceed 1).
    /// Defaults: every other interest value is favored, no nuisance split,
    /// and the distinct-count statistic for the derived style.
    pub fn new(style: ComparisonStyle, threshold: f64) -> Result<Self> {
        if !threshold.is_finite() || threshold <= 1.0 {
            return Err(EvidenceError::InvalidConfig(format!(
                "evidence threshold must be a finite number above 1, got {threshold}"
            )));
        }
        Ok(ComparisonSpec {
            style,
            favored: Favored::OtherInterestValues,
            threshold,
            nuisance: None,
            statistic: None,
        })
    }

    #[must_use]
    pub fn with_favored(mut self, favored: Favored) -> Self {
        self.favored = favored;
        self
    }

    #[must_use]
    pub fn with_nuisance(mut self, spec: NuisanceSpec) -> Self {
        self.nuisance = Some(spec);
        self
    }

    #[must_use]
    pub fn with_statistic(mut self, statistic: DerivedStatistic) -> Self {
        self.statistic = Some(statistic);
        self
    }

    pub fn style(&self) -> &ComparisonStyle {
        &self.style
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }
}

/// Tuning knobs for misleading-evidence computations.
#[derive(Debug, Clone, PartialEq)]
pub struct MisleadingOptions {
    /// Cap on enumerated outcome multisets for the exact path.
    pub multiset_budget: u128,
    /// Options forwarded to derived-model construction for
    /// [`ComparisonStyle::InterestDerived`].
    pub derived: DerivedOptions,
}

impl Default for MisleadingOptions {
    fn default() -> Self {
        MisleadingOptions {
            multiset_budget: DEFAULT_MISLEADING_BUDGET,
            derived: DerivedOptions::default(),
        }
    }
}

/// How a misleading probability was computed.
#[derive(Debug, Clone, PartialEq)]
pub enum MisleadingMethod {
    /// Every outcome multiset was enumerated; `classes` of them were visited.
    Exact { classes: u64 },
    /// Seeded simulation with a binomial standard error on the probability.
    MonteCarlo {
        trials: u64,
        seed: u64,
        standard_error: f64,
    },
}

/// The result of a misleading-evidence computation.
#[derive(Debug, Clone)]
pub struct MisleadingReport {
    /// Probability that a size-`sample_size` iid sample from `true_point`
    /// yields evidence of strength ≥ `threshold` for a favored value.
    pub probability: f64,
    pub threshold: f64,
    pub sample_size: usize,
    pub true_point: ParameterPoint,
    pub method: MisleadingMethod,
    /// The smallest evidence ratio among misleading samples, if any were
    /// found — how close the threshold came to being missed.
    pub min_misleading_ratio: Option<f64>,
}

enum PreparedStyle {
    Vector,
    FixedPair {
        a: ParameterPoint,
        b: ParameterPoint,
    },
    Marginal {
        spec: NuisanceSpec,
    },
    Derived {
        model: DiscreteModel,
        statistic: DerivedStatistic,
        true_point: ParameterPoint,
        favored_points: Vec<ParameterPoint>,
    },
}

enum FavoredTuples {
    Other,
    Listed(Vec<Vec<Value>>),
}

/// A comparison spec resolved against a model, true point, and sample size;
/// it can judge individual samples ([`ComparisonJudge::ratio_for`]) or
/// integrate over the whole sample space.
pub struct ComparisonJudge {
    model: DiscreteModel,
    true_point: ParameterPoint,
    sample_size: usize,
    threshold: f64,
    interest_idx: Vec<usize>,
    true_tuple: Vec<Value>,
    favored: FavoredTuples,
    style: PreparedStyle,
}

impl ComparisonJudge {
    pub fn new(
        model: &DiscreteModel,
        true_point: &ParameterPoint,
        sample_size: usize,
        spec: &ComparisonSpec,
        options: &MisleadingOptions,
    ) -> Result<Self> {
        if sample_size == 0 {
            return Err(EvidenceError::EmptySample);
        }
        if !model.space().owns(true_point) {
            return Err(EvidenceError::CrossModelComparison);
        }
        let space = model.space();

        let interest_idx: Vec<usize> = match &spec.nuisance {
            None => (0..space.dimensions().len()).collect(),
            Some(ns) => {
                let mut idx = Vec::with_capacity(ns.interest().len());
                for name in ns.interest() {
                    idx.push(space.dimension_index(name).ok_or_else(|| {
                        EvidenceError::UnknownDimension { name: name.clone() }
                    })?);
                }
                idx.sort_unstable();
                idx
            }
        };
        let true_tuple: Vec<Value> = interest_idx
            .iter()
            .map(|&i| true_point.coords()[i].clone())
            .collect();

        let favored = match &spec.favored {
            Favored::OtherInterestValues => FavoredTuples::Other,
            Favored::InterestValues(tuples) => {
                if tuples.is_empty() {
                    return Err(EvidenceError::InvalidConfig(
                        "the favored list must name at least one interest value".into(),
                    ));
                }
                for tuple in tuples {
                    if tuple.len() != interest_idx.len() {
                        return Err(EvidenceError::InvalidConfig(format!(
                            "favored tuple has {} coordinates for {} interest dimensions",
                            tuple.len(),
                            interest_idx.len()
                        )));
                    }
                    for (v, &i) in tuple.iter().zip(&interest_idx) {
                        let dim = &space.dimensions()[i];
                        if !dim.values().contains(v) {
                            return Err(EvidenceError::UnknownValue {
                                dimension: dim.name().to_owned(),
                                value: v.display_token(),
                            });
                        }
                    }
                    if *tuple == true_tuple {
                        return Err(EvidenceError::InvalidConfig(
                            "the favored list must not contain the true interest value".into(),
                        ));
                    }
                }
                FavoredTuples::Listed(tuples.clone())
            }
        };

        let style = match &spec.style {
            ComparisonStyle::VectorArgmax => PreparedStyle::Vector,
            ComparisonStyle::FixedPair { a, b } => {
                if !space.owns(a) || !space.owns(b) {
                    return Err(EvidenceError::CrossModelComparison);
                }
                if a == b {
                    return Err(EvidenceError::InvalidConfig(
                        "a fixed-pair comparison needs two distinct points".into(),
                    ));
                }
                PreparedStyle::FixedPair {
                    a: a.clone(),
                    b: b.clone(),
                }
            }
            ComparisonStyle::InterestMarginal => {
                let ns = spec.nuisance.clone().ok_or_else(|| {
                    EvidenceError::InvalidConfig(
                        "the marginal style needs a nuisance specification".into(),
                    )
                })?;
                PreparedStyle::Marginal { spec: ns }
            }
            ComparisonStyle::InterestDerived => {
                let ns = spec.nuisance.clone().ok_or_else(|| {
                    EvidenceError::InvalidConfig(
                        "the derived style needs a nuisance specification".into(),
                    )
                })?;
                let statistic = spec
                    .statistic
                    .clone()
                    .unwrap_or_else(distinct_count_statistic);
                let derived =
                    derived_statistic_model(model, &statistic, sample_size, &ns, &options.derived)?
                        .model;
                let derived_space = derived.space().clone();
                let derived_true = derived_space.point_from_coords(true_tuple.clone())?;
                let mut favored_points = Vec::new();
                match &favored {
                    FavoredTuples::Other => {
                        for point in derived_space.points() {
                            if point.coords() != true_tuple.as_slice() {
                                favored_points.push(point);
                            }
                        }
                    }
                    FavoredTuples::Listed(tuples) => {
                        for tuple in tuples {
                            favored_points.push(derived_space.point_from_coords(tuple.clone())?);
                        }
                    }
                }
                PreparedStyle::Derived {
                    model: derived,
                    statistic,
                    true_point: derived_true,
                    favored_points,
                }
            }
        };

        Ok(ComparisonJudge {
            model: model.clone(),
            true_point: true_point.clone(),
            sample_size,
            threshold: spec.threshold,
            interest_idx,
            true_tuple,
            favored,
            style,
        })
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn true_point(&self) -> &ParameterPoint {
        &self.true_point
    }

    /// The evidence ratio this comparison reads off one sample: favored side
    /// over true side. `None` means the sample supports neither side (both
    /// likelihoods zero), which never counts as misleading.
    pub fn ratio_for(&self, sample: &Sample) -> Result<Option<f64>> {
        if sample.n() != self.sample_size {
            return Err(EvidenceError::SpecInconsistent(format!(
                "judge prepared for samples of size {}, got {}",
                self.sample_size,
                sample.n()
            )));
        }
        match &self.style {
            PreparedStyle::FixedPair { a, b } => {
                let mut la = 1.0f64;
                let mut lb = 1.0f64;
                for (outcome, count) in sample.counts() {
                    la *= self.model.prob(a, &outcome)?.powi(count as i32);
                    lb *= self.model.prob(b, &outcome)?.powi(count as i32);
                }
                Ok(ratio_opt(la, lb))
            }
            PreparedStyle::Vector => {
                let f = iid_likelihood(&self.model, sample)?;
                let (sup_favored, sup_true) =
                    split_sup(&f, &self.interest_idx, &self.true_tuple, &self.favored);
                Ok(ratio_opt(sup_favored, sup_true))
            }
            PreparedStyle::Marginal { spec } => {
                let f = iid_likelihood(&self.model, sample)?;
                let g = marginalize(&f, spec)?;
                let all: Vec<usize> = (0..g.space().dimensions().len()).collect();
                let (sup_favored, sup_true) =
                    split_sup(&g, &all, &self.true_tuple, &self.favored);
                Ok(ratio_opt(sup_favored, sup_true))
            }
            PreparedStyle::Derived {
                model,
                statistic,
                true_point,
                favored_points,
            } => {
                let value = statistic.apply(sample);
                let lb = model.prob(true_point, &value)?;
                let mut la = 0.0f64;
                for point in favored_points {
                    let p = model.prob(point, &value)?;
                    if p > la {
                        la = p;
                    }
                }
                Ok(ratio_opt(la, lb))
            }
        }
    }

    /// Exact misleading probability by enumerating all outcome multisets of
    /// the sample size over the true point's support. The reported
    /// probability is the misleading mass divided by the total enumerated
    /// mass, so an always-misleading comparison yields exactly 1 and a
    /// never-misleading one exactly 0.
    pub fn exact(&self, options: &MisleadingOptions) -> Result<MisleadingReport> {
        let support = self.model.support(&self.true_point)?;
        let classes = multiset_count(support.len() as u128, self.sample_size as u32);
        if classes > options.multiset_budget {
            return Err(EvidenceError::EnumerationTooLarge {
                size: classes,
                bound: options.multiset_budget,
            });
        }
        // Split the enumeration by first support index: tasks are
        // data-parallel, and the final combination runs in ascending index
        // order, so results are bit-identical for any thread count.
        let tasks: Vec<ExactTask> = (0..support.len())
            .into_par_iter()
            .map(|first| self.exact_task(&support, first))
            .collect::<Result<Vec<_>>>()?;
        let mut misleading_mass = 0.0f64;
        let mut total_mass = 0.0f64;
        let mut visited: u64 = 0;
        let mut min_ratio = f64::INFINITY;
        let mut any_misleading = false;
        for task in tasks {
            misleading_mass += task.misleading_mass;
            total_mass += task.total_mass;
            visited += task.classes;
            if task.any_misleading {
                any_misleading = true;
                if task.min_ratio < min_ratio {
                    min_ratio = task.min_ratio;
                }
            }
        }
        if total_mass <= 0.0 {
            return Err(EvidenceError::SpecInconsistent(
                "the true point assigns zero mass to every outcome".into(),
            ));
        }
        Ok(MisleadingReport {
            probability: misleading_mass / total_mass,
            threshold: self.threshold,
            sample_size: self.sample_size,
            true_point: self.true_point.clone(),
            method: MisleadingMethod::Exact { classes: visited },
            min_misleading_ratio: any_misleading.then_some(min_ratio),
        })
    }

    fn exact_task(&self, support: &[(Value, f64)], first: usize) -> Result<ExactTask> {
        let mut out = ExactTask::default();
        let mut outcomes: Vec<Value> = Vec::with_capacity(self.sample_size);
        for_each_multiset_with_first(first, support.len(), self.sample_size, &mut |indices| {
            let mass = multiset_mass(support, indices);
            out.total_mass += mass;
            out.classes += 1;
            outcomes.clear();
            outcomes.extend(indices.iter().map(|&i| support[i].0.clone()));
            if let Some(ratio) = self.ratio_for(&Sample::new(outcomes.clone()))? {
                if ratio >= self.threshold {
                    out.misleading_mass += mass;
                    out.any_misleading = true;
                    if ratio < out.min_ratio {
                        out.min_ratio = ratio;
                    }
                }
            }
            Ok(())
        })?;
        Ok(out)
    }

    /// Monte Carlo misleading probability over seeded trials. Trial `t`
    /// always draws from random stream `t`, and the reductions (a count and
    /// a minimum) are order-independent, so the estimate is bit-identical
    /// for any thread count.
    pub fn monte_carlo(&self, trials: u64, seed: u64) -> Result<MisleadingReport> {
        if trials == 0 {
            return Err(EvidenceError::InvalidConfig(
                "at least one Monte Carlo trial is required".into(),
            ));
        }
        // Every style reads the sample only through its outcome multiset, so
        // trials with equal counts have equal ratios. Each worker keeps its
        // own memo (capped, since the number of distinct multisets can be
        // huge); sharing nothing across threads keeps the reduction
        // deterministic, and memoized values are bit-identical to recomputed
        // ones because the evaluation itself is deterministic.
        const MEMO_CAP: usize = 1 << 16;
        type Memo = std::collections::HashMap<Vec<(Value, u32)>, Option<f64>>;
        let (count, min_ratio) = (0..trials)
            .into_par_iter()
            .map_init(Memo::new, |memo, trial| -> Result<(u64, f64)> {
                let sample = sample_stream(
                    &self.model,
                    &self.true_point,
                    self.sample_size,
                    seed,
                    trial,
                )?;
                let key = sample.counts();
                let ratio = match memo.get(&key) {
                    Some(known) => *known,
                    None => {
                        let fresh = self.ratio_for(&sample)?;
                        if memo.len() < MEMO_CAP {
                            memo.insert(key, fresh);
                        }
                        fresh
                    }
                };
                Ok(match ratio {
                    Some(ratio) if ratio >= self.threshold => (1, ratio),
                    _ => (0, f64::INFINITY),
                })
            })
            .try_reduce(
                || (0u64, f64::INFINITY),
                |a, b| Ok((a.0 + b.0, a.1.min(b.1))),
            )?;
        let p = count as f64 / trials as f64;
        let standard_error = (p * (1.0 - p) / trials as f64).sqrt();
        Ok(MisleadingReport {
            probability: p,
            threshold: self.threshold,
            sample_size: self.sample_size,
            true_point: self.true_point.clone(),
            method: MisleadingMethod::MonteCarlo {
                trials,
                seed,
                standard_error,
            },
            min_misleading_ratio: (count > 0).then_some(min_ratio),
        })
    }
}

struct ExactTask {
    misleading_mass: f64,
    total_mass: f64,
    classes: u64,
    min_ratio: f64,
    any_misleading: bool,
}

impl Default for ExactTask {
    fn default() -> Self {
        ExactTask {
            misleading_mass: 0.0,
            total_mass: 0.0,
            classes: 0,
            min_ratio: f64::INFINITY,
            any_misleading: false,
        }
    }
}

/// Exact misleading probability; see [`ComparisonJudge::exact`].
pub fn exact_misleading_probability(
    model: &DiscreteModel,
    true_point: &ParameterPoint,
    sample_size: usize,
    spec: &ComparisonSpec,
    options: &MisleadingOptions,
) -> Result<MisleadingReport> {
    ComparisonJudge::new(model, true_point, sample_size, spec, options)?.exact(options)
}

/// Monte Carlo misleading probability; see [`ComparisonJudge::monte_carlo`].
pub fn monte_carlo_misleading(
    model: &DiscreteModel,
    true_point: &ParameterPoint,
    sample_size: usize,
    spec: &ComparisonSpec,
    trials: u64,
    seed: u64,
    options: &MisleadingOptions,
) -> Result<MisleadingReport> {
    ComparisonJudge::new(model, true_point, sample_size, spec, options)?.monte_carlo(trials, seed)
}

fn ratio_opt(favored: f64, truth: f64) -> Option<f64> {
    if favored == 0.0 && truth == 0.0 {
        None
    } else if truth == 0.0 {
        Some(f64::INFINITY)
    } else {
        Some(favored / truth)
    }
}

/// Best likelihood among favored interest tuples and best among points
/// carrying the true interest tuple.
fn split_sup(
    f: &LikelihoodFunction,
    interest_idx: &[usize],
    true_tuple: &[Value],
    favored: &FavoredTuples,
) -> (f64, f64) {
    let mut sup_favored = 0.0f64;
    let mut sup_true = 0.0f64;
    for (point, &value) in f.support() {
        let coords = point.coords();
        let is_true = interest_idx
            .iter()
            .zip(true_tuple)
            .all(|(&i, t)| coords[i] == *t);
        if is_true {
            if value > sup_true {
                sup_true = value;
            }
        } else {
            let is_favored = match favored {
                FavoredTuples::Other => true,
                FavoredTuples::Listed(tuples) => tuples.iter().any(|tuple| {
                    interest_idx
                        .iter()
                        .zip(tuple)
                        .all(|(&i, t)| coords[i] == *t)
                }),
            };
            if is_favored && value > sup_favored {
                sup_favored = value;
            }
        }
    }
    (sup_favored, sup_true)
}

/// Every size-`n` non-decreasing index tuple over `0..s` whose first entry is
/// `first`.
fn for_each_multiset_with_first(
    first: usize,
    s: usize,
    n: usize,
    f: &mut impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    debug_assert!(first < s && n >= 1);
    let mut indices = vec![first; n];
    loop {
        f(&indices)?;
        let mut pos = n;
        loop {
            if pos <= 1 {
                return Ok(());
            }
            pos -= 1;
            if indices[pos] + 1 < s {
                let next = indices[pos] + 1;
                for slot in &mut indices[pos..] {
                    *slot = next;
                }
                break;
            }
        }
    }
}
