//! The command-line surface: clap definitions only, no behaviour.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Likelihood-based statistical evidence for finite discrete models.
///
/// Builds a likelihood function from observed data under a model and reads
/// evidence off it: ratios between parameter points, maximum-likelihood
/// points, nuisance-parameter elimination, and probabilities of misleading
/// evidence. Output is deterministic: identical invocations (including seeds)
/// produce byte-identical stdout.
#[derive(Debug, Parser)]
#[command(name = "evidence", version, max_term_width = 100)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a model file and report every diagnostic with line and column.
    Validate(ValidateArgs),
    /// The likelihood function of an observation or iid sample.
    Likelihood(AnalysisArgs),
    /// The evidence ratio between two parameter points.
    Ratio(RatioArgs),
    /// All maximum-likelihood parameter points (ties included).
    Mle(AnalysisArgs),
    /// Marginal likelihood: sum the function over nuisance dimensions.
    Marginalize(MarginalizeArgs),
    /// Profile likelihood: maximize the function over nuisance dimensions.
    Profile(ProfileArgs),
    /// A model of a derived statistic with nuisance dimensions eliminated.
    DeriveStat(DeriveStatArgs),
    /// The probability of observing misleading evidence.
    #[command(subcommand)]
    Misleading(MisleadingCmd),
    /// The model's full probability table, for scripting and plotting.
    Export(ExportArgs),
}

/// Where the model comes from: a `.lmod` file or a named builtin. The
/// builtin-specific flags are rejected when they do not apply.
#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Model file in the line-oriented text format
    #[arg(long, value_name = "FILE", conflicts_with = "builtin")]
    pub file: Option<PathBuf>,

    /// Builtin model: rain, urn1, urn2, birnbaum, birnbaum-known-mu,
    /// binomial, or sure-thing
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,

    /// birnbaum-known-mu: the fixed location (default 17)
    #[arg(long, value_name = "INT")]
    pub mu: Option<i64>,

    /// birnbaum: smallest admissible location
    #[arg(long, value_name = "INT")]
    pub mu_lo: Option<i64>,

    /// birnbaum: largest admissible location
    #[arg(long, value_name = "INT")]
    pub mu_hi: Option<i64>,

    /// birnbaum: triangular normalization constant (must sum the spread to 1)
    #[arg(long, value_name = "REAL")]
    pub c: Option<f64>,

    /// binomial: number of trials
    #[arg(long, value_name = "COUNT")]
    pub binomial_n: Option<u32>,

    /// binomial: comma-separated success probabilities
    #[arg(long, value_name = "P1,P2,…")]
    pub p_grid: Option<String>,

    /// sure-thing: the observed flip sequence over {H,T}
    #[arg(long, value_name = "SEQ")]
    pub sequence: Option<String>,
}

/// The observed data: one outcome or a comma-separated iid sample.
#[derive(Debug, Args)]
pub struct ObsArgs {
    /// A single observed outcome
    #[arg(long, value_name = "VALUE")]
    pub obs: Option<String>,

    /// Comma-separated iid observations
    #[arg(long, value_name = "V1,V2,…", conflicts_with = "obs")]
    pub sample: Option<String>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    pub format: FormatArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Model file to check
    #[arg(value_name = "FILE.lmod")]
    pub file: PathBuf,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AnalysisArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    #[command(flatten)]
    pub obs: ObsArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RatioArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    #[command(flatten)]
    pub obs: ObsArgs,

    /// Numerator parameter point
    #[arg(long, value_name = "DIM=VAL[,DIM=VAL…]")]
    pub a: String,

    /// Denominator parameter point
    #[arg(long, value_name = "DIM=VAL[,DIM=VAL…]")]
    pub b: String,

    /// Resolve point B on a second model file; the two likelihood functions
    /// must be rescalings of one another, otherwise the ratio is refused
    #[arg(long, value_name = "FILE", conflicts_with = "b_builtin")]
    pub b_file: Option<PathBuf>,

    /// Resolve point B on a second builtin model
    #[arg(long, value_name = "NAME")]
    pub b_builtin: Option<String>,

    /// The second model's observed outcome
    #[arg(long, value_name = "VALUE", conflicts_with = "b_sample")]
    pub b_obs: Option<String>,

    /// The second model's comma-separated iid observations
    #[arg(long, value_name = "V1,V2,…")]
    pub b_sample: Option<String>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MarginalizeArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    #[command(flatten)]
    pub obs: ObsArgs,

    /// Comma-separated nuisance dimensions to sum out
    #[arg(long, value_name = "DIM[,DIM…]")]
    pub nuisance: String,

    /// Weighting over nuisance values (only `uniform` is defined)
    #[arg(long, value_name = "SCHEME")]
    pub weights: Option<String>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    #[command(flatten)]
    pub obs: ObsArgs,

    /// Comma-separated nuisance dimensions to maximize over
    #[arg(long, value_name = "DIM[,DIM…]")]
    pub nuisance: String,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DeriveStatArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    /// The derived statistic replacing the raw sample
    #[arg(long, value_enum, default_value = "distinct-count")]
    pub stat: StatArg,

    /// Sample size the statistic is computed from
    #[arg(long, value_name = "SIZE")]
    pub n: usize,

    /// Comma-separated nuisance dimensions to eliminate (default: mu, when
    /// the model has a mu dimension)
    #[arg(long, value_name = "DIM[,DIM…]")]
    pub nuisance: Option<String>,

    /// Trials for the Monte Carlo fallback beyond the exact-enumeration bound
    #[arg(long, value_name = "COUNT")]
    pub trials: Option<u64>,

    /// Seed for the Monte Carlo fallback
    #[arg(long, value_name = "SEED")]
    pub seed: Option<u64>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatArg {
    /// Number of distinct observed values, binned into 1 vs >1
    DistinctCount,
    /// Exact number of distinct observed values, 1..=n
    DistinctCountExact,
}

/// How the misleading probability is computed.
#[derive(Debug, Subcommand)]
pub enum MisleadingCmd {
    /// Exact enumeration of the whole sample space.
    Exact(MisleadingArgs),
    /// Seeded Monte Carlo estimation with per-trial random streams.
    Mc(MisleadingMcArgs),
}

#[derive(Debug, Args)]
pub struct MisleadingArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    /// The true parameter point samples are drawn from
    #[arg(long = "true", value_name = "DIM=VAL[,DIM=VAL…]")]
    pub true_point: String,

    /// How evidence against the true value is read off a sample
    #[arg(long, value_enum)]
    pub style: StyleArg,

    /// Evidence-strength threshold; a sample misleads when some wrong value
    /// is favored by at least this ratio
    #[arg(long, value_name = "RATIO")]
    pub k: f64,

    /// Sample size drawn per trial
    #[arg(long, value_name = "SIZE")]
    pub n: usize,

    /// fixed-pair: the favored point (defaults to the rival on two-point models)
    #[arg(long, value_name = "DIM=VAL[,DIM=VAL…]")]
    pub a: Option<String>,

    /// fixed-pair: the reference point (defaults to --true)
    #[arg(long, value_name = "DIM=VAL[,DIM=VAL…]")]
    pub b: Option<String>,

    /// Comma-separated nuisance dimensions (default: mu, for the
    /// interest-marginal and interest-derived styles)
    #[arg(long, value_name = "DIM[,DIM…]")]
    pub nuisance: Option<String>,

    /// interest-derived: the statistic the evidence is read from
    #[arg(long, value_enum, default_value = "distinct-count")]
    pub stat: StatArg,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MisleadingMcArgs {
    #[command(flatten)]
    pub base: MisleadingArgs,

    /// Number of simulated samples
    #[arg(long, value_name = "COUNT", default_value_t = 100_000)]
    pub trials: u64,

    /// Seed for the simulation
    #[arg(long, value_name = "SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StyleArg {
    /// Best wrong point vs best point with the true interest values, on the
    /// raw likelihood function
    VectorArgmax,
    /// A fixed head-to-head between two named points
    FixedPair,
    /// The comparison after marginalizing nuisance dimensions out
    InterestMarginal,
    /// The comparison on the derived-statistic model
    InterestDerived,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    pub format: ExportFormatArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormatArg {
    Csv,
    Json,
}
