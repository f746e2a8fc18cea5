//! The shared error type for model construction and evidence operations.

/// Everything that can go wrong while building a model or analysing evidence.
///
/// Variants split into two families, which the CLI maps to distinct exit
/// codes: *validation* errors (malformed input: bad probabilities, unknown
/// values, invalid configurations) and *domain* errors (well-formed input
/// asking for something mathematically refused, such as a 0/0 ratio or a
/// comparison across models).
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[non_exhaustive]
pub enum EvidenceError {
    /// A probability table entry is negative.
    #[error("negative probability {value} at point [{point}], outcome {outcome}")]
    NegativeProbability {
        point: String,
        outcome: String,
        value: f64,
    },

    /// A probability row does not sum to 1 within the normalization tolerance.
    #[error("probabilities at point [{point}] sum to {sum:?}, not 1")]
    RowNotNormalized { point: String, sum: f64 },

    /// An observation lies outside the model's outcome space.
    #[error("observation {outcome} is not in the model's outcome space")]
    OutcomeNotInSpace { outcome: String },

    /// Every parameter point assigns the observed data probability zero, so
    /// no likelihood function exists.
    #[error("observation has probability zero under every parameter point")]
    ImpossibleObservation,

    /// An operation that needs at least one observation was given none.
    #[error("sample is empty; at least one observation is required")]
    EmptySample,

    /// Both likelihoods in a ratio are zero; 0/0 carries no evidence.
    #[error("likelihood ratio at [{point_a}] vs [{point_b}] is 0/0 and undefined")]
    UndefinedRatio { point_a: String, point_b: String },

    /// The two sides of a comparison do not lie on one likelihood function
    /// over one parameter space, so their ratio is meaningless.
    #[error("points lie on different likelihood functions; cross-model ratios are not comparable")]
    CrossModelComparison,

    /// A parameter space was declared with duplicate or empty content.
    #[error("invalid parameter space: {0}")]
    InvalidSpace(String),

    /// A coordinate names a dimension the space does not have.
    #[error("unknown dimension {name}")]
    UnknownDimension { name: String },

    /// A point is missing a coordinate for one of the space's dimensions.
    #[error("missing coordinate for dimension {name}")]
    MissingDimension { name: String },

    /// A coordinate value is not among the dimension's declared values.
    #[error("value {value} is not declared for dimension {dimension}")]
    UnknownValue { dimension: String, value: String },

    /// An urn composition violates its structural constraints.
    #[error("invalid urn composition: {0}")]
    InvalidComposition(String),

    /// A parameter grid is empty, out of range, or contains duplicates.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// A model configuration fails its own consistency rules.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A derived statistic's distribution changes across nuisance values, so
    /// eliminating those dimensions would discard information.
    #[error("statistic distribution depends on nuisance dimension(s) {dimension}: {detail}")]
    NuisanceDependent { dimension: String, detail: String },

    /// An exact enumeration would exceed the configured size bound.
    #[error("exact enumeration of {size} cases exceeds the bound of {bound}")]
    EnumerationTooLarge { size: u128, bound: u128 },

    /// A nuisance specification leaves no interest dimensions.
    #[error("no interest dimensions remain after removing nuisance dimensions")]
    EmptyInterest,

    /// Internal consistency failure between cooperating inputs (for example a
    /// nuisance specification naming dimensions the function does not have).
    #[error("inconsistent specification: {0}")]
    SpecInconsistent(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, EvidenceError>;
