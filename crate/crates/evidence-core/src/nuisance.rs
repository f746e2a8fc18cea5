//! Eliminating nuisance dimensions from an analysis.
//!
//! Three routes are provided, in decreasing order of fidelity:
//!
//! 1. **Derived statistics** ([`derived_statistic_model`]): replace raw
//!    outcomes by a statistic whose distribution provably does not depend on
//!    the nuisance dimensions. Nothing evidential is lost about the interest
//!    dimensions, and the independence claim is *checked computationally*
//!    before the reduced model is handed back.
//! 2. **Marginal likelihood** ([`marginalize`]): weighted sums over nuisance
//!    values. Honest about uncertainty but introduces a weighting the data
//!    never asked for.
//! 3. **Profile likelihood** ([`profile`]): maximize over nuisance values.
//!    Reads best-case likelihoods as if they were likelihoods, which is
//!    exactly the slip behind the classic "100:1 against the spread
//!    hypothesis" reading of the Birnbaum example — provided as a contrast,
//!    not an endorsement.

use indexmap::IndexMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{EvidenceError, Result};
use crate::likelihood::LikelihoodFunction;
use crate::model::{DiscreteModel, DENSE_CELL_LIMIT};
use crate::models::sample_stream;
use crate::outcome::OutcomeSpace;
use crate::sample::Sample;
use crate::space::{DimensionValues, ParameterPoint, ParameterSpace};
use crate::value::Value;

/// Default cap on sample size for exact statistic-distribution enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 4;

/// Default cap on the number of outcome multisets an exact enumeration may
/// visit.
pub const DEFAULT_MULTISET_BUDGET: u128 = 5_000_000;

/// How nuisance values are weighted by [`marginalize`].
#[derive(Debug, Clone, PartialEq)]
pub enum NuisanceWeights {
    /// Every nuisance value weighs 1. Sums then depend only on the support,
    /// so lazily-windowed functions marginalize without enumerating their
    /// full nuisance range.
    Uniform,
    /// Explicit non-negative weight per nuisance coordinate tuple. Every
    /// tuple appearing in the function's support must be covered.
    Explicit(IndexMap<Vec<Value>, f64>),
}

/// A split of a parameter space into interest and nuisance dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct NuisanceSpec {
    interest: Vec<String>,
    nuisance: Vec<String>,
    weights: NuisanceWeights,
}

impl NuisanceSpec {
    /// Splits `space` into the named interest dimensions and the rest.
    /// Dimension order follows the space; unknown names are rejected, and at
    /// least one interest dimension must remain.
    pub fn keep(space: &ParameterSpace, interest: &[&str]) -> Result<Self> {
        for name in interest {
            if space.dimension_index(name).is_none() {
                return Err(EvidenceError::UnknownDimension {
                    name: (*name).to_owned(),
                });
            }
        }
        let interest_ordered: Vec<String> = space
            .dimensions()
            .iter()
            .map(|d| d.name().to_owned())
            .filter(|n| interest.iter().any(|i| i == n))
            .collect();
        if interest_ordered.is_empty() {
            return Err(EvidenceError::EmptyInterest);
        }
        let nuisance = space
            .dimensions()
            .iter()
            .map(|d| d.name().to_owned())
            .filter(|n| !interest_ordered.contains(n))
            .collect();
        Ok(NuisanceSpec {
            interest: interest_ordered,
            nuisance,
            weights: NuisanceWeights::Uniform,
        })
    }

    /// Complement form of [`NuisanceSpec::keep`]: name the dimensions to
    /// eliminate instead.
    pub fn drop(space: &ParameterSpace, nuisance: &[&str]) -> Result<Self> {
        for name in nuisance {
            if space.dimension_index(name).is_none() {
                return Err(EvidenceError::UnknownDimension {
                    name: (*name).to_owned(),
                });
            }
        }
        let interest: Vec<&str> = space
            .dimensions()
            .iter()
            .map(|d| d.name())
            .filter(|n| !nuisance.contains(n))
            .collect();
        Self::keep(space, &interest)
    }

    /// Replaces the uniform default with explicit weights, validated to be
    /// non-negative, finite, and keyed by tuples over the nuisance dimensions.
    pub fn with_weights(mut self, weights: IndexMap<Vec<Value>, f64>) -> Result<Self> {
        for (key, &w) in &weights {
            if key.len() != self.nuisance.len() {
                return Err(EvidenceError::SpecInconsistent(format!(
                    "weight key has {} coordinates for {} nuisance dimensions",
                    key.len(),
                    self.nuisance.len()
                )));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(EvidenceError::SpecInconsistent(format!(
                    "weight {w} must be finite and non-negative"
                )));
            }
        }
        self.weights = NuisanceWeights::Explicit(weights);
        Ok(self)
    }

    pub fn interest(&self) -> &[String] {
        &self.interest
    }

    pub fn nuisance(&self) -> &[String] {
        &self.nuisance
    }

    pub fn weights(&self) -> &NuisanceWeights {
        &self.weights
    }

    /// Checks the spec against the space a function actually lives on and
    /// returns `(interest indices, nuisance indices)` in dimension order.
    fn indices(&self, space: &ParameterSpace) -> Result<(Vec<usize>, Vec<usize>)> {
        let mut named: Vec<&str> = self.interest.iter().map(String::as_str).collect();
        named.extend(self.nuisance.iter().map(String::as_str));
        if named.len() != space.dimensions().len() {
            return Err(EvidenceError::SpecInconsistent(format!(
                "specification covers {} dimensions, the space has {}",
                named.len(),
                space.dimensions().len()
            )));
        }
        let mut interest_idx = Vec::new();
        let mut nuisance_idx = Vec::new();
        for (i, d) in space.dimensions().iter().enumerate() {
            if self.interest.iter().any(|n| n == d.name()) {
                interest_idx.push(i);
            } else if self.nuisance.iter().any(|n| n == d.name()) {
                nuisance_idx.push(i);
            } else {
                return Err(EvidenceError::SpecInconsistent(format!(
                    "dimension {} is neither interest nor nuisance",
                    d.name()
                )));
            }
        }
        Ok((interest_idx, nuisance_idx))
    }

    /// The sub-space spanned by the interest dimensions.
    fn interest_space(&self, space: &ParameterSpace) -> Result<Arc<ParameterSpace>> {
        let (interest_idx, _) = self.indices(space)?;
        ParameterSpace::new(
            interest_idx
                .iter()
                .map(|&i| space.dimensions()[i].clone())
                .collect(),
        )
    }
}

/// Shared reduction skeleton for [`marginalize`] and [`profile`]: group the
/// support by interest coordinates in canonical order and combine each group.
fn reduce_over_nuisance(
    function: &LikelihoodFunction,
    spec: &NuisanceSpec,
    mut combine: impl FnMut(Option<f64>, f64, &[Value]) -> Result<f64>,
) -> Result<LikelihoodFunction> {
    let space = function.space();
    let (interest_idx, nuisance_idx) = spec.indices(space)?;
    if nuisance_idx.is_empty() {
        return Ok(function.clone());
    }
    let interest_space = spec.interest_space(space)?;
    let mut grouped: IndexMap<Vec<Value>, f64> = IndexMap::new();
    for (point, &value) in function.support() {
        let coords = point.coords();
        let interest_coords: Vec<Value> =
            interest_idx.iter().map(|&i| coords[i].clone()).collect();
        let nuisance_coords: Vec<Value> =
            nuisance_idx.iter().map(|&i| coords[i].clone()).collect();
        let acc = grouped.get(&interest_coords).copied();
        let combined = combine(acc, value, &nuisance_coords)?;
        grouped.insert(interest_coords, combined);
    }
    let mut support = IndexMap::new();
    for (coords, value) in grouped {
        if value > 0.0 {
            support.insert(interest_space.point_from_coords(coords)?, value);
        }
    }
    support.sort_keys();
    if support.is_empty() {
        return Err(EvidenceError::SpecInconsistent(
            "every interest value received zero weight".into(),
        ));
    }
    LikelihoodFunction::from_support(interest_space, support)
}

/// Marginal likelihood: for each interest value, the weighted sum of the
/// function over nuisance values ([`NuisanceWeights::Uniform`] weighs each
/// value 1). Summation runs in the function's canonical support order, so
/// results are bit-stable.
pub fn marginalize(
    function: &LikelihoodFunction,
    spec: &NuisanceSpec,
) -> Result<LikelihoodFunction> {
    reduce_over_nuisance(function, spec, |acc, value, nuisance_coords| {
        let w = match spec.weights() {
            NuisanceWeights::Uniform => 1.0,
            NuisanceWeights::Explicit(map) => {
                *map.get(nuisance_coords).ok_or_else(|| {
                    EvidenceError::SpecInconsistent(format!(
                        "no weight for nuisance value ({})",
                        nuisance_coords
                            .iter()
                            .map(Value::display_token)
                            .collect::<Vec<_>>()
                            .join(",")
                    ))
                })?
            }
        };
        Ok(acc.unwrap_or(0.0) + w * value)
    })
}

/// Profile likelihood: for each interest value, the maximum of the function
/// over nuisance values. The result is *not* a likelihood function of any
/// observable; treating its ratios as evidence overstates support.
pub fn profile(function: &LikelihoodFunction, spec: &NuisanceSpec) -> Result<LikelihoodFunction> {
    if let NuisanceWeights::Explicit(_) = spec.weights() {
        return Err(EvidenceError::SpecInconsistent(
            "profile likelihood does not take weights".into(),
        ));
    }
    reduce_over_nuisance(function, spec, |acc, value, _| {
        Ok(match acc {
            None => value,
            Some(a) => a.max(value),
        })
    })
}

// ---------------------------------------------------------------------------
// Derived statistics
// ---------------------------------------------------------------------------

/// A statistic mapping a sample to a single value, with a declared codomain
/// per sample size.
///
/// `label_symmetric` declares that the statistic depends only on the pattern
/// of equalities among the draws, not on which outcome values occur (true for
/// distinct-value counts). Such statistics allow the exact enumeration to
/// canonicalize outcome order, which is what makes the independence check
/// bit-exact across nuisance values.
#[derive(Clone)]
pub struct DerivedStatistic {
    name: String,
    label_symmetric: bool,
    map: Arc<dyn Fn(&Sample) -> Value + Send + Sync>,
    codomain: Arc<dyn Fn(usize) -> Vec<Value> + Send + Sync>,
}

impl fmt::Debug for DerivedStatistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DerivedStatistic")
            .field("name", &self.name)
            .field("label_symmetric", &self.label_symmetric)
            .finish()
    }
}

impl DerivedStatistic {
    /// Builds a custom statistic. The map must be invariant under permutation
    /// of the sample; set `label_symmetric` only if it is also invariant
    /// under relabelling outcomes.
    pub fn new(
        name: impl Into<String>,
        label_symmetric: bool,
        map: Arc<dyn Fn(&Sample) -> Value + Send + Sync>,
        codomain: Arc<dyn Fn(usize) -> Vec<Value> + Send + Sync>,
    ) -> Self {
        DerivedStatistic {
            name: name.into(),
            label_symmetric,
            map,
            codomain,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn label_symmetric(&self) -> bool {
        self.label_symmetric
    }

    /// Applies the statistic.
    pub fn apply(&self, sample: &Sample) -> Value {
        (self.map)(sample)
    }

    /// The declared codomain for samples of size `n`; covers every achievable
    /// value (it may list unachievable ones).
    pub fn codomain(&self, n: usize) -> Vec<Value> {
        (self.codomain)(n)
    }
}

/// The number of distinct values in the sample, binned into `1` vs `>1`.
///
/// One distinct value means every draw repeated the same outcome — the
/// telltale the certainty hypotheses (ν_c = 1, σ = 0) live on.
pub fn distinct_count_statistic() -> DerivedStatistic {
    DerivedStatistic::new(
        "distinct-count",
        true,
        Arc::new(|sample: &Sample| {
            if sample.distinct_count() <= 1 {
                Value::label("1")
            } else {
                Value::label(">1")
            }
        }),
        Arc::new(|_n| vec![Value::label("1"), Value::label(">1")]),
    )
}

/// The exact number of distinct values in the sample (1..=n), the
/// fine-grained variant of [`distinct_count_statistic`].
pub fn distinct_count_exact_statistic() -> DerivedStatistic {
    DerivedStatistic::new(
        "distinct-count-exact",
        true,
        Arc::new(|sample: &Sample| Value::Int(sample.distinct_count() as i64)),
        Arc::new(|n| (1..=n.max(1) as i64).map(Value::Int).collect()),
    )
}

/// Options for [`derived_statistic_model`].
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedOptions {
    /// Largest sample size enumerated exactly; larger sizes fall back to
    /// Monte Carlo estimation.
    pub enumeration_bound: usize,
    /// Cap on enumerated outcome multisets.
    pub multiset_budget: u128,
    /// Monte Carlo trials for the fallback path.
    pub mc_trials: u64,
    /// Seed for the fallback path.
    pub seed: u64,
}

impl Default for DerivedOptions {
    fn default() -> Self {
        DerivedOptions {
            enumeration_bound: DEFAULT_ENUMERATION_BOUND,
            multiset_budget: DEFAULT_MULTISET_BUDGET,
            mc_trials: 100_000,
            seed: 0,
        }
    }
}

/// How a derived model's probability rows were obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum DerivationMethod {
    /// Exact enumeration; `multisets` outcome multisets were visited per
    /// checked parameter point.
    Exact { multisets: u64 },
    /// Monte Carlo estimation: per-row standard errors aligned with the
    /// derived model's rows and outcome columns.
    MonteCarlo {
        trials: u64,
        seed: u64,
        standard_errors: Vec<Vec<f64>>,
    },
}

/// A model over the interest dimensions whose outcomes are statistic values,
/// together with how it was derived.
#[derive(Debug, Clone)]
pub struct DerivedModel {
    pub model: DiscreteModel,
    pub method: DerivationMethod,
}

/// Replaces raw outcomes of `n` iid draws by a derived statistic and
/// eliminates the nuisance dimensions.
///
/// For every interest value, the statistic's distribution is computed at a
/// window of nuisance values and required to be identical across the window —
/// bit-for-bit on the exact path, within six standard errors on the Monte
/// Carlo path. If it differs, the statistic genuinely depends on the
/// nuisance dimensions and [`EvidenceError::NuisanceDependent`] is returned:
/// eliminating them would throw away evidence.
pub fn derived_statistic_model(
    model: &DiscreteModel,
    statistic: &DerivedStatistic,
    n: usize,
    spec: &NuisanceSpec,
    options: &DerivedOptions,
) -> Result<DerivedModel> {
    if n == 0 {
        return Err(EvidenceError::EmptySample);
    }
    let space = model.space();
    let (_, nuisance_idx) = spec.indices(space)?;
    let interest_space = spec.interest_space(space)?;
    let n_points = interest_space
        .point_count()
        .ok_or(EvidenceError::EnumerationTooLarge {
            size: u128::MAX,
            bound: DENSE_CELL_LIMIT,
        })?;
    if n_points > 10_000 {
        return Err(EvidenceError::EnumerationTooLarge {
            size: n_points,
            bound: 10_000,
        });
    }

    let codomain = statistic.codomain(n);
    if codomain.is_empty() {
        return Err(EvidenceError::SpecInconsistent(format!(
            "statistic {} has an empty codomain for n = {n}",
            statistic.name()
        )));
    }
    let nuisance_window = nuisance_window(space, &nuisance_idx)?;

    let exact = n <= options.enumeration_bound;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut ses: Vec<Vec<f64>> = Vec::new();
    let mut multisets_visited: u64 = 0;

    for interest_point in interest_space.points() {
        let mut reference: Option<(Vec<f64>, Vec<f64>)> = None;
        for nuisance_coords in &nuisance_window {
            let full =
                combine_point(space, &interest_space, &interest_point, &nuisance_idx, nuisance_coords)?;
            let (dist, se, visited) = if exact {
                let (d, visited) =
                    exact_statistic_distribution(model, &full, statistic, n, &codomain, options)?;
                (d, Vec::new(), visited)
            } else {
                let (d, se) =
                    mc_statistic_distribution(model, &full, statistic, n, &codomain, options)?;
                (d, se, 0)
            };
            multisets_visited = multisets_visited.max(visited);
            match &reference {
                None => reference = Some((dist, se)),
                Some((ref_dist, ref_se)) => {
                    let consistent = if exact {
                        ref_dist
                            .iter()
                            .zip(&dist)
                            .all(|(a, b)| a.to_bits() == b.to_bits())
                    } else {
                        ref_dist.iter().zip(&dist).zip(ref_se.iter().zip(&se)).all(
                            |((a, b), (sa, sb))| {
                                let tol = 6.0 * (sa * sa + sb * sb).sqrt();
                                (a - b).abs() <= tol.max(1e-12)
                            },
                        )
                    };
                    if !consistent {
                        return Err(EvidenceError::NuisanceDependent {
                            dimension: spec.nuisance().join(","),
                            detail: format!(
                                "distribution of {} at [{}] changes across nuisance values",
                                statistic.name(),
                                interest_point.display_coords()
                            ),
                        });
                    }
                }
            }
        }
        let (dist, se) = reference.expect("nuisance window is never empty");
        rows.push(dist);
        ses.push(se);
    }

    let derived = DiscreteModel::from_table(
        format!("{}:{}", model.name(), statistic.name()),
        interest_space,
        OutcomeSpace::Enumerated(codomain),
        rows,
    )?;
    let method = if exact {
        DerivationMethod::Exact {
            multisets: multisets_visited,
        }
    } else {
        DerivationMethod::MonteCarlo {
            trials: options.mc_trials,
            seed: options.seed,
            standard_errors: ses,
        }
    };
    Ok(DerivedModel {
        model: derived,
        method,
    })
}

/// A finite window of nuisance coordinate tuples at which independence is
/// checked. Listed dimensions contribute every value; interval dimensions a
/// representative spread including both ends. With no nuisance dimensions the
/// window is the single empty tuple.
fn nuisance_window(space: &ParameterSpace, nuisance_idx: &[usize]) -> Result<Vec<Vec<Value>>> {
    const WINDOW_CAP: u128 = 4096;
    let mut per_dim: Vec<Vec<Value>> = Vec::new();
    for &i in nuisance_idx {
        let dim = &space.dimensions()[i];
        let values: Vec<Value> = match dim.values() {
            DimensionValues::Listed(vs) => vs.clone(),
            DimensionValues::IntRange { lo, hi } => {
                let mut picks = vec![*lo, lo + 1, -1, 0, 1, 17, hi - 1, *hi];
                picks.retain(|v| lo <= v && v <= hi);
                picks.sort_unstable();
                picks.dedup();
                picks.into_iter().map(Value::Int).collect()
            }
        };
        per_dim.push(values);
    }
    let count = per_dim.iter().map(|v| v.len() as u128).product::<u128>();
    if count > WINDOW_CAP {
        return Err(EvidenceError::EnumerationTooLarge {
            size: count,
            bound: WINDOW_CAP,
        });
    }
    // Odometer over the per-dimension windows.
    let mut out = vec![Vec::new()];
    for values in per_dim {
        out = out
            .iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v.clone());
                    next
                })
            })
            .collect();
    }
    Ok(out)
}

/// Interleaves interest and nuisance coordinates back into a full point.
fn combine_point(
    space: &Arc<ParameterSpace>,
    interest_space: &Arc<ParameterSpace>,
    interest_point: &ParameterPoint,
    nuisance_idx: &[usize],
    nuisance_coords: &[Value],
) -> Result<ParameterPoint> {
    let mut coords: Vec<Option<Value>> = vec![None; space.dimensions().len()];
    for (v, dim) in interest_point
        .coords()
        .iter()
        .zip(interest_space.dimensions())
    {
        let i = space
            .dimension_index(dim.name())
            .expect("interest dimensions come from the space");
        coords[i] = Some(v.clone());
    }
    for (&i, v) in nuisance_idx.iter().zip(nuisance_coords) {
        coords[i] = Some(v.clone());
    }
    space.point_from_coords(
        coords
            .into_iter()
            .map(|c| c.expect("interest and nuisance partition the dimensions"))
            .collect(),
    )
}

/// Exact distribution of the statistic over `n` iid draws at `point`,
/// normalized by total enumerated mass, in codomain order.
///
/// Enumeration walks outcome multisets (the statistic is permutation
/// invariant) with multinomial weights. For label-symmetric statistics the
/// support is first sorted by descending probability, so the visited weight
/// sequence — and therefore every accumulated bit — depends only on the
/// probability multiset, not on which labels carry which probability.
fn exact_statistic_distribution(
    model: &DiscreteModel,
    point: &ParameterPoint,
    statistic: &DerivedStatistic,
    n: usize,
    codomain: &[Value],
    options: &DerivedOptions,
) -> Result<(Vec<f64>, u64)> {
    let mut support = model.support(point)?;
    if statistic.label_symmetric() {
        let mut order: Vec<usize> = (0..support.len()).collect();
        order.sort_by(|&a, &b| support[b].1.total_cmp(&support[a].1).then(a.cmp(&b)));
        support = order.into_iter().map(|i| support[i].clone()).collect();
    }
    let classes = multiset_count(support.len() as u128, n as u32);
    if classes > options.multiset_budget {
        return Err(EvidenceError::EnumerationTooLarge {
            size: classes,
            bound: options.multiset_budget,
        });
    }

    let mut acc = vec![0.0f64; codomain.len()];
    let mut total = 0.0f64;
    let mut visited: u64 = 0;
    let mut outcome_buf: Vec<Value> = Vec::with_capacity(n);
    for_each_multiset(support.len(), n, &mut |indices| {
        let mass = multiset_mass(&support, indices);
        outcome_buf.clear();
        outcome_buf.extend(indices.iter().map(|&i| support[i].0.clone()));
        let value = statistic.apply(&Sample::new(outcome_buf.clone()));
        let slot = codomain.iter().position(|v| *v == value).ok_or_else(|| {
            EvidenceError::SpecInconsistent(format!(
                "statistic {} produced {value}, which its codomain does not list",
                statistic.name()
            ))
        })?;
        acc[slot] += mass;
        total += mass;
        visited += 1;
        Ok(())
    })?;
    if total <= 0.0 {
        return Err(EvidenceError::SpecInconsistent(
            "statistic distribution has zero total mass".into(),
        ));
    }
    Ok((acc.into_iter().map(|a| a / total).collect(), visited))
}

/// Monte Carlo estimate of the statistic distribution with per-cell standard
/// errors. Stream `t` drives trial `t`, so the histogram is reproducible.
fn mc_statistic_distribution(
    model: &DiscreteModel,
    point: &ParameterPoint,
    statistic: &DerivedStatistic,
    n: usize,
    codomain: &[Value],
    options: &DerivedOptions,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let trials = options.mc_trials.max(1);
    let mut counts = vec![0u64; codomain.len()];
    for t in 0..trials {
        let sample = sample_stream(model, point, n, options.seed, t)?;
        let value = statistic.apply(&sample);
        let slot = codomain.iter().position(|v| *v == value).ok_or_else(|| {
            EvidenceError::SpecInconsistent(format!(
                "statistic {} produced {value}, which its codomain does not list",
                statistic.name()
            ))
        })?;
        counts[slot] += 1;
    }
    let t = trials as f64;
    let dist: Vec<f64> = counts.iter().map(|&c| c as f64 / t).collect();
    let se = dist.iter().map(|&p| (p * (1.0 - p) / t).sqrt()).collect();
    Ok((dist, se))
}

/// C(s + n − 1, n): the number of size-`n` multisets over `s` outcomes.
pub(crate) fn multiset_count(s: u128, n: u32) -> u128 {
    let mut num: u128 = 1;
    for k in 0..n as u128 {
        match num.checked_mul(s + k) {
            Some(v) => num = v / (k + 1),
            None => return u128::MAX,
        }
    }
    num
}

/// Calls `f` with every non-decreasing index tuple of length `n` over `0..s`.
fn for_each_multiset(
    s: usize,
    n: usize,
    f: &mut impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    let mut indices = vec![0usize; n];
    loop {
        f(&indices)?;
        // Advance: find the rightmost index that can grow, then reset the
        // tail to keep the tuple non-decreasing.
        let mut pos = n;
        loop {
            if pos == 0 {
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

/// P(one draw sequence per permutation class) = multinomial(n; counts) · Π pᵢ^cᵢ.
pub(crate) fn multiset_mass(support: &[(Value, f64)], indices: &[usize]) -> f64 {
    let mut mass = 1.0f64;
    let mut run_start = 0;
    let mut permutations = factorial(indices.len() as u32);
    for i in 0..=indices.len() {
        if i == indices.len() || indices[i] != indices[run_start] {
            let count = (i - run_start) as u32;
            permutations /= factorial(count);
            mass *= support[indices[run_start]].1.powi(count as i32);
            run_start = i;
        }
    }
    mass * permutations as f64
}

fn factorial(k: u32) -> u64 {
    (1..=k as u64).product::<u64>().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::likelihood::{iid_likelihood, likelihood, likelihood_ratio};
    use crate::models::{birnbaum_model, rain_model, urn2_model, BirnbaumConfig, UrnComposition};
    use crate::space::Dimension;

    #[test]
    fn multiset_enumeration_counts() {
        assert_eq!(multiset_count(3, 2), 6);
        assert_eq!(multiset_count(201, 2), 201 * 202 / 2);
        let mut seen = 0;
        for_each_multiset(3, 2, &mut |_| {
            seen += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(seen, 6);
    }

    #[test]
    fn multiset_masses_sum_to_one() {
        let support = vec![
            (Value::label("a"), 0.5),
            (Value::label("b"), 0.3),
            (Value::label("c"), 0.2),
        ];
        let mut total = 0.0;
        for_each_multiset(3, 3, &mut |idx| {
            total += multiset_mass(&support, idx);
            Ok(())
        })
        .unwrap();
        assert!((total - 1.0).abs() < 1e-12, "{total}");
    }

    #[test]
    fn marginal_and_profile_on_birnbaum() {
        let m = birnbaum_model(&BirnbaumConfig::default()).unwrap();
        let f = likelihood(&m, &Value::Int(17)).unwrap();
        let spec = NuisanceSpec::drop(m.space(), &["mu"]).unwrap();

        let marginal = marginalize(&f, &spec).unwrap();
        let sharp = marginal.space().point(&[("sigma", Value::Int(0))]).unwrap();
        let spread = marginal.space().point(&[("sigma", Value::Int(100))]).unwrap();
        let ratio = likelihood_ratio(&marginal, &sharp, &spread).unwrap().ratio;
        assert!((ratio - 1.0).abs() <= 1e-12, "marginal ratio {ratio}");

        let profiled = profile(&f, &spec).unwrap();
        let ratio = likelihood_ratio(&profiled, &sharp, &spread).unwrap().ratio;
        assert_eq!(ratio, 100.0);
    }

    #[test]
    fn empty_nuisance_is_identity() {
        let m = rain_model();
        let f = likelihood(&m, &Value::label("rain")).unwrap();
        let spec = NuisanceSpec::keep(m.space(), &["day"]).unwrap();
        assert_eq!(marginalize(&f, &spec).unwrap(), f);
        assert_eq!(profile(&f, &spec).unwrap(), f);
    }

    #[test]
    fn no_interest_dimensions_is_an_error() {
        let m = rain_model();
        assert_eq!(
            NuisanceSpec::drop(m.space(), &["day"]).unwrap_err(),
            EvidenceError::EmptyInterest
        );
    }

    #[test]
    fn constant_in_nuisance_marginal_scales_by_window_size() {
        // A 2×3 function constant in the nuisance dimension: the uniform
        // marginal is 3 × the interest slice.
        let space = ParameterSpace::new(vec![
            Dimension::listed("a", vec![Value::Int(0), Value::Int(1)]),
            Dimension::listed("b", vec![Value::Int(0), Value::Int(1), Value::Int(2)]),
        ])
        .unwrap();
        let mut support = IndexMap::new();
        for pt in space.points() {
            let a = pt.coords()[0].as_int().unwrap();
            support.insert(pt, if a == 0 { 0.2 } else { 0.6 });
        }
        let f = LikelihoodFunction::from_support(space.clone(), support).unwrap();
        let spec = NuisanceSpec::drop(&space, &["b"]).unwrap();
        let m = marginalize(&f, &spec).unwrap();
        let a0 = m.space().point(&[("a", Value::Int(0))]).unwrap();
        let a1 = m.space().point(&[("a", Value::Int(1))]).unwrap();
        assert_eq!(m.value(&a0).unwrap(), 3.0 * 0.2);
        assert_eq!(m.value(&a1).unwrap(), 3.0 * 0.6);
    }

    #[test]
    fn explicit_weights_must_cover_support() {
        let m = birnbaum_model(&BirnbaumConfig::default()).unwrap();
        let f = likelihood(&m, &Value::Int(17)).unwrap();
        let mut weights = IndexMap::new();
        weights.insert(vec![Value::Int(17)], 1.0);
        let spec = NuisanceSpec::drop(m.space(), &["mu"])
            .unwrap()
            .with_weights(weights)
            .unwrap();
        assert!(matches!(
            marginalize(&f, &spec),
            Err(EvidenceError::SpecInconsistent(_))
        ));
    }

    #[test]
    fn distinct_count_statistics() {
        let s = distinct_count_statistic();
        assert_eq!(
            s.apply(&Sample::new(vec![Value::Int(5), Value::Int(5)])),
            Value::label("1")
        );
        assert_eq!(
            s.apply(&Sample::new(vec![Value::Int(5), Value::Int(6)])),
            Value::label(">1")
        );
        let e = distinct_count_exact_statistic();
        assert_eq!(
            e.apply(&Sample::new(vec![Value::Int(5), Value::Int(6), Value::Int(5)])),
            Value::Int(2)
        );
        assert_eq!(e.codomain(3), vec![Value::Int(1), Value::Int(2), Value::Int(3)]);
    }

    #[test]
    fn urn2_derived_single_draw_is_uninformative() {
        let m = urn2_model(&UrnComposition::standard()).unwrap();
        let spec = NuisanceSpec::drop(m.space(), &["mu"]).unwrap();
        let derived = derived_statistic_model(
            &m,
            &distinct_count_statistic(),
            1,
            &spec,
            &DerivedOptions::default(),
        )
        .unwrap();
        let one = derived
            .model
            .space()
            .point(&[("nu_c", Value::Int(1))])
            .unwrap();
        let many = derived
            .model
            .space()
            .point(&[("nu_c", Value::Int(201))])
            .unwrap();
        // One draw always shows exactly one distinct color.
        assert_eq!(derived.model.prob(&one, &Value::label("1")).unwrap(), 1.0);
        assert_eq!(derived.model.prob(&many, &Value::label("1")).unwrap(), 1.0);
        let f = likelihood(&derived.model, &Value::label("1")).unwrap();
        assert_eq!(likelihood_ratio(&f, &one, &many).unwrap().ratio, 1.0);
    }

    #[test]
    fn urn2_derived_two_draws_match_color_census() {
        let comp = UrnComposition::standard();
        let m = urn2_model(&comp).unwrap();
        let spec = NuisanceSpec::drop(m.space(), &["mu"]).unwrap();
        let derived = derived_statistic_model(
            &m,
            &distinct_count_statistic(),
            2,
            &spec,
            &DerivedOptions::default(),
        )
        .unwrap();
        assert!(matches!(derived.method, DerivationMethod::Exact { .. }));
        let many = derived
            .model
            .space()
            .point(&[("nu_c", Value::Int(201))])
            .unwrap();
        // Independent census: P(two equal draws) = Σ_color p², computed from
        // the ball counts alone.
        let total = comp.total() as f64;
        let mut expected = (comp.shared_color_count() as f64 / total).powi(2);
        for (_, count) in comp.other_colors() {
            expected += (*count as f64 / total).powi(2);
        }
        let got = derived.model.prob(&many, &Value::label("1")).unwrap();
        assert!(
            (got - expected).abs() <= 1e-15,
            "repeat probability {got} vs census {expected}"
        );
        assert!((expected - 0.005001).abs() < 1e-12);

        let one = derived
            .model
            .space()
            .point(&[("nu_c", Value::Int(1))])
            .unwrap();
        assert_eq!(derived.model.prob(&one, &Value::label("1")).unwrap(), 1.0);
    }

    #[test]
    fn nuisance_dependent_statistic_is_refused() {
        // "Was the draw the first universe color?" depends on μ by design.
        let m = urn2_model(&UrnComposition::standard()).unwrap();
        let spec = NuisanceSpec::drop(m.space(), &["mu"]).unwrap();
        let leaky = DerivedStatistic::new(
            "first-color-indicator",
            false,
            Arc::new(|s: &Sample| {
                let hit = s.iter().any(|v| *v == Value::label("c000"));
                Value::label(if hit { "yes" } else { "no" })
            }),
            Arc::new(|_| vec![Value::label("yes"), Value::label("no")]),
        );
        let err = derived_statistic_model(&m, &leaky, 1, &spec, &DerivedOptions::default())
            .unwrap_err();
        assert!(matches!(err, EvidenceError::NuisanceDependent { .. }), "{err}");
    }

    #[test]
    fn birnbaum_derived_two_draws() {
        let m = birnbaum_model(&BirnbaumConfig::default()).unwrap();
        let spec = NuisanceSpec::drop(m.space(), &["mu"]).unwrap();
        let derived = derived_statistic_model(
            &m,
            &distinct_count_statistic(),
            2,
            &spec,
            &DerivedOptions::default(),
        )
        .unwrap();
        let sharp = derived.model.space().point(&[("sigma", Value::Int(0))]).unwrap();
        let spread = derived
            .model
            .space()
            .point(&[("sigma", Value::Int(100))])
            .unwrap();
        assert_eq!(derived.model.prob(&sharp, &Value::label("1")).unwrap(), 1.0);
        // Independent census over the triangle: Σ_x P(x|μ,100)².
        let mut expected = 0.0;
        for d in -99i64..=99 {
            expected += (1e-4 * (100 - d.abs()) as f64).powi(2);
        }
        let got = derived.model.prob(&spread, &Value::label("1")).unwrap();
        assert!(
            (got - expected).abs() <= 1e-15,
            "repeat probability {got} vs census {expected}"
        );
        assert!((expected - 0.006667).abs() < 1e-12);
    }

    #[test]
    fn mc_fallback_beyond_enumeration_bound() {
        let m = birnbaum_model(&BirnbaumConfig::default()).unwrap();
        let spec = NuisanceSpec::drop(m.space(), &["mu"]).unwrap();
        let options = DerivedOptions {
            mc_trials: 20_000,
            ..DerivedOptions::default()
        };
        let derived = derived_statistic_model(
            &m,
            &distinct_count_statistic(),
            6,
            &spec,
            &options,
        )
        .unwrap();
        let DerivationMethod::MonteCarlo {
            trials,
            standard_errors,
            ..
        } = &derived.method
        else {
            panic!("expected the Monte Carlo path for n beyond the bound");
        };
        assert_eq!(*trials, 20_000);
        assert_eq!(standard_errors.len(), 2);
        // Six draws from the sharp hypothesis always repeat one value.
        let sharp = derived
            .model
            .space()
            .point(&[("sigma", Value::Int(0))])
            .unwrap();
        assert_eq!(derived.model.prob(&sharp, &Value::label("1")).unwrap(), 1.0);
    }

    #[test]
    fn iid_likelihood_feeds_derived_models_consistently() {
        // Two draws of the same color: raw vs derived routes must agree on
        // which hypotheses the data prefer, though not on the exact number.
        let m = urn2_model(&UrnComposition::standard()).unwrap();
        let sample = Sample::new(vec![Value::label("c007"), Value::label("c007")]);
        let raw = iid_likelihood(&m, &sample).unwrap();
        let best = crate::likelihood::max_likelihood_points(&raw);
        assert_eq!(best.len(), 1);
        assert_eq!(best[0].display_coords(), "mu=c007,nu_c=1");
    }
}
