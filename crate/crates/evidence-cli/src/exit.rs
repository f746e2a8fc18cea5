//! Error-to-exit-code mapping and single-line stderr diagnostics.
//!
//! Every failure leaves the process through one of three codes: 2 for a bad
//! command line, 3 when the *input* is malformed (unreadable files, parse
//! errors, unknown values, invalid configurations), 4 when well-formed input
//! asks for something the mathematics refuses (0/0 ratios, cross-model
//! comparisons, nuisance-dependent statistics). Each failure prints exactly
//! one machine-readable line to stderr: `error[<class>]: <kind>: <details>`.

use evidence_core::modelspec::{ParseErrors, Severity};
use evidence_core::EvidenceError;

/// Exit code for usage errors (clap's own rejections use the same code).
pub const EXIT_USAGE: i32 = 2;
/// Exit code for validation and parse failures.
pub const EXIT_VALIDATION: i32 = 3;
/// Exit code for domain refusals.
pub const EXIT_DOMAIN: i32 = 4;

/// A failure on its way to becoming an exit code and a stderr line.
#[derive(Debug)]
pub enum CliError {
    /// Bad command line beyond what clap checks structurally.
    Usage(String),
    /// A file could not be read.
    Io { path: String, message: String },
    /// A model file failed to parse.
    Parse { path: String, errors: ParseErrors },
    /// The core library refused the request.
    Evidence(EvidenceError),
}

impl From<EvidenceError> for CliError {
    fn from(e: EvidenceError) -> Self {
        CliError::Evidence(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } | CliError::Parse { .. } => EXIT_VALIDATION,
            CliError::Evidence(e) => {
                if is_domain(e) {
                    EXIT_DOMAIN
                } else {
                    EXIT_VALIDATION
                }
            }
        }
    }

    /// The single diagnostic line printed to stderr.
    pub fn render_line(&self) -> String {
        match self {
            CliError::Usage(msg) => format!("error[usage]: {}", one_line(msg)),
            CliError::Io { path, message } => {
                format!("error[validation]: io: {path}: {}", one_line(message))
            }
            CliError::Parse { path, errors } => {
                let first = errors
                    .diagnostics
                    .iter()
                    .find(|d| d.severity == Severity::Error);
                match first {
                    Some(d) => format!(
                        "error[validation]: parse: {path}: line {}, col {}: {} ({} error(s); run `evidence validate` for the full list)",
                        d.line,
                        d.col,
                        one_line(&d.message),
                        errors.error_count()
                    ),
                    None => format!("error[validation]: parse: {path}: parse failed"),
                }
            }
            CliError::Evidence(e) => {
                let class = if is_domain(e) { "domain" } else { "validation" };
                format!("error[{class}]: {}: {}", error_kind(e), one_line(&e.to_string()))
            }
        }
    }
}

/// Domain errors are refusals of well-formed requests; everything else in
/// [`EvidenceError`] reports malformed input.
fn is_domain(e: &EvidenceError) -> bool {
    matches!(
        e,
        EvidenceError::UndefinedRatio { .. }
            | EvidenceError::CrossModelComparison
            | EvidenceError::ImpossibleObservation
            | EvidenceError::NuisanceDependent { .. }
            | EvidenceError::EnumerationTooLarge { .. }
            | EvidenceError::EmptyInterest
            | EvidenceError::SpecInconsistent(_)
    )
}

/// Stable kebab-case token naming the error variant.
pub fn error_kind(e: &EvidenceError) -> &'static str {
    match e {
        EvidenceError::NegativeProbability { .. } => "negative-probability",
        EvidenceError::RowNotNormalized { .. } => "row-not-normalized",
        EvidenceError::OutcomeNotInSpace { .. } => "outcome-not-in-space",
        EvidenceError::ImpossibleObservation => "impossible-observation",
        EvidenceError::EmptySample => "empty-sample",
        EvidenceError::UndefinedRatio { .. } => "undefined-ratio",
        EvidenceError::CrossModelComparison => "cross-model-comparison",
        EvidenceError::InvalidSpace(_) => "invalid-space",
        EvidenceError::UnknownDimension { .. } => "unknown-dimension",
        EvidenceError::MissingDimension { .. } => "missing-dimension",
        EvidenceError::UnknownValue { .. } => "unknown-value",
        EvidenceError::InvalidComposition(_) => "invalid-composition",
        EvidenceError::InvalidGrid(_) => "invalid-grid",
        EvidenceError::InvalidConfig(_) => "invalid-config",
        EvidenceError::NuisanceDependent { .. } => "nuisance-dependent",
        EvidenceError::EnumerationTooLarge { .. } => "enumeration-too-large",
        EvidenceError::EmptyInterest => "empty-interest",
        EvidenceError::SpecInconsistent(_) => "spec-inconsistent",
        _ => "evidence-error",
    }
}

/// Collapses a possibly multi-line message onto one line.
fn one_line(msg: &str) -> String {
    msg.split(['\n', '\r'])
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join("; ")
}
