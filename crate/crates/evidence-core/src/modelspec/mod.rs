//! A plain-text format for finite discrete models.
//!
//! ```text
//! # Daily rain forecast probabilities.
//! model rain
//! param day : Monday Tuesday Wednesday Thursday Friday Saturday Sunday
//! outcome : rain not-rain
//! row Monday : 0 1
//! row Tuesday : 0.07 0.93
//! row Wednesday : 0.65 0.35
//! row Thursday : 0.2 0.8
//! row Friday : 0.05 0.95
//! row Saturday : 0.01 0.99
//! row Sunday : 0.01 0.99
//! ```
//!
//! One `model` line, one `param` line per dimension, one `outcome` line, and
//! one `row` line per parameter-value combination. Tokens are separated by
//! whitespace; `:` separates a declaration head from its body; `#` starts a
//! comment; labels containing special characters are double-quoted (`\"` and
//! `\\` escapes). Probabilities are decimal numbers or rationals like `1/3`;
//! rationals are preserved verbatim by the serializer. Rows must sum to 1:
//! deviations up to 1e-12 pass silently, up to 1e-9 earn a warning, larger
//! ones are errors.
//!
//! [`parse`] reports *all* diagnostics with line and column, not just the
//! first. [`serialize`] emits a canonical form — declaration-order params,
//! rows sorted by parameter value, single spaces — and parsing a canonical
//! string and serializing it again reproduces it byte for byte.

mod parse;
mod serialize;

pub use parse::{parse, ParseErrors, Parsed};
pub use serialize::serialize;

use std::collections::HashMap;
use std::fmt;

use crate::error::{EvidenceError, Result};
use crate::model::{DiscreteModel, DENSE_CELL_LIMIT};
use crate::outcome::OutcomeSpace;
use crate::space::{Dimension, DimensionValues, ParameterSpace};
use crate::value::Value;

/// Row sums within this distance of 1 pass without comment.
pub const ROW_SUM_SILENT: f64 = 1e-12;
/// Row sums within this distance of 1 earn a warning; beyond it, an error.
pub const ROW_SUM_WARNING: f64 = 1e-9;

/// Largest number of values a dimension or outcome interval may be expanded
/// to when converting a model into a document.
const EXPORT_VALUE_LIMIT: u128 = 10_000;

/// A parsed model file.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelDocument {
    pub name: String,
    pub params: Vec<ParamDecl>,
    pub outcomes: Vec<Value>,
    pub rows: Vec<RowDecl>,
}

/// One `param` line: a named dimension and its values in declaration order.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamDecl {
    pub name: String,
    pub values: Vec<Value>,
}

/// One `row` line: a parameter-value combination and its outcome
/// probabilities in outcome order.
#[derive(Debug, Clone, PartialEq)]
pub struct RowDecl {
    pub coords: Vec<Value>,
    pub probs: Vec<ProbabilityLiteral>,
}

/// A probability as written: decimal or rational. Rationals keep their
/// numerator and denominator (2/6 is not collapsed to 1/3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbabilityLiteral {
    Decimal(f64),
    Rational { num: u64, den: u64 },
}

impl ProbabilityLiteral {
    pub fn value(&self) -> f64 {
        match self {
            ProbabilityLiteral::Decimal(x) => *x,
            ProbabilityLiteral::Rational { num, den } => *num as f64 / *den as f64,
        }
    }
}

impl fmt::Display for ProbabilityLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbabilityLiteral::Decimal(x) => write!(f, "{x}"),
            ProbabilityLiteral::Rational { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

/// How serious a diagnostic is. Warnings still produce a usable document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Warning,
    Error,
}

/// What kind of problem a diagnostic reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticKind {
    /// Malformed syntax: unknown directives, missing `:`, bad numbers…
    Syntax,
    /// The same parameter combination has two rows.
    DuplicateRow,
    /// A parameter combination has no row.
    MissingRow,
    /// A row's probabilities do not sum to 1.
    RowNotNormalized,
    /// A row names a value its parameter never declared.
    UnknownValue,
    /// A `param` or `outcome` line lists the same value twice.
    DuplicateValue,
}

/// A single parser finding, located by 1-based line and column.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub col: usize,
    pub kind: DiagnosticKind,
    pub severity: Severity,
    pub message: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(
            f,
            "{tag}: line {}, col {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl ModelDocument {
    /// Builds the executable model this document describes. The document is
    /// assumed structurally complete (as [`parse`] guarantees); probability
    /// validation is re-run by the model constructor.
    pub fn to_model(&self) -> Result<DiscreteModel> {
        let dims = self
            .params
            .iter()
            .map(|p| Dimension::listed(&p.name, p.values.clone()))
            .collect();
        let space = ParameterSpace::new(dims)?;
        if self.outcomes.is_empty() {
            return Err(EvidenceError::InvalidSpace(
                "a model needs at least one outcome".into(),
            ));
        }
        let by_coords: HashMap<&[Value], &RowDecl> = self
            .rows
            .iter()
            .map(|r| (r.coords.as_slice(), r))
            .collect();
        let mut rows = Vec::with_capacity(self.rows.len());
        for point in space.points() {
            let decl = by_coords.get(point.coords()).ok_or_else(|| {
                EvidenceError::SpecInconsistent(format!(
                    "no row for ({})",
                    point.display_coords()
                ))
            })?;
            rows.push(decl.probs.iter().map(ProbabilityLiteral::value).collect());
        }
        DiscreteModel::from_table(
            self.name.clone(),
            space,
            OutcomeSpace::Enumerated(self.outcomes.clone()),
            rows,
        )
    }

    /// Renders a model as a document, expanding interval dimensions and
    /// outcome intervals (up to a size limit) and writing probabilities as
    /// decimals.
    pub fn from_model(model: &DiscreteModel) -> Result<Self> {
        let space = model.space();
        let params = space
            .dimensions()
            .iter()
            .map(|d| {
                let values = match d.values() {
                    DimensionValues::Listed(vs) => vs.clone(),
                    DimensionValues::IntRange { lo, hi } => {
                        let len = (*hi as i128 - *lo as i128 + 1) as u128;
                        if len > EXPORT_VALUE_LIMIT {
                            return Err(EvidenceError::EnumerationTooLarge {
                                size: len,
                                bound: EXPORT_VALUE_LIMIT,
                            });
                        }
                        (*lo..=*hi).map(Value::Int).collect()
                    }
                };
                Ok(ParamDecl {
                    name: d.name().to_owned(),
                    values,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let outcomes: Vec<Value> = match &**model.outcomes() {
            OutcomeSpace::Enumerated(vs) => vs.clone(),
            OutcomeSpace::IntegerInterval { lo, hi } => {
                let len = (*hi as i128 - *lo as i128 + 1) as u128;
                if len > EXPORT_VALUE_LIMIT {
                    return Err(EvidenceError::EnumerationTooLarge {
                        size: len,
                        bound: EXPORT_VALUE_LIMIT,
                    });
                }
                (*lo..=*hi).map(Value::Int).collect()
            }
        };
        let cells = space
            .point_count()
            .and_then(|n| n.checked_mul(outcomes.len() as u128))
            .unwrap_or(u128::MAX);
        if cells > DENSE_CELL_LIMIT {
            return Err(EvidenceError::EnumerationTooLarge {
                size: cells,
                bound: DENSE_CELL_LIMIT,
            });
        }
        let mut rows = Vec::new();
        for point in space.points() {
            let mut probs = Vec::with_capacity(outcomes.len());
            for outcome in &outcomes {
                probs.push(ProbabilityLiteral::Decimal(model.prob(&point, outcome)?));
            }
            rows.push(RowDecl {
                coords: point.coords().to_vec(),
                probs,
            });
        }
        Ok(ModelDocument {
            name: model.name().to_owned(),
            params,
            outcomes,
            rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::likelihood::{likelihood, likelihood_ratio};
    use crate::models::{birnbaum_model, rain_model, BirnbaumConfig};

    #[test]
    fn rain_model_round_trips_through_the_format() {
        let original = rain_model();
        let doc = ModelDocument::from_model(&original).unwrap();
        let text = serialize(&doc);
        let parsed = parse(&text).expect("canonical text parses");
        assert!(parsed.warnings.is_empty());
        let rebuilt = parsed.document.to_model().unwrap();

        // Identical probabilities, bit for bit: decimals are written in
        // shortest round-trip form.
        let space = rebuilt.space().clone();
        for point in space.points() {
            let day = point.coords()[0].clone();
            let orig_point = original.space().point(&[("day", day)]).unwrap();
            for outcome in [Value::label("rain"), Value::label("not-rain")] {
                assert_eq!(
                    rebuilt.prob(&point, &outcome).unwrap().to_bits(),
                    original.prob(&orig_point, &outcome).unwrap().to_bits()
                );
            }
        }

        let f = likelihood(&rebuilt, &Value::label("rain")).unwrap();
        let wed = space.point(&[("day", Value::label("Wednesday"))]).unwrap();
        let thu = space.point(&[("day", Value::label("Thursday"))]).unwrap();
        assert_eq!(likelihood_ratio(&f, &wed, &thu).unwrap().ratio, 3.25);
    }

    #[test]
    fn interval_backed_models_refuse_export() {
        let m = birnbaum_model(&BirnbaumConfig::default()).unwrap();
        assert!(matches!(
            ModelDocument::from_model(&m),
            Err(EvidenceError::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn rational_probabilities_evaluate_and_print_verbatim() {
        let p = ProbabilityLiteral::Rational { num: 2, den: 6 };
        assert_eq!(p.value(), 2.0 / 6.0);
        assert_eq!(p.to_string(), "2/6");
        assert_eq!(ProbabilityLiteral::Decimal(0.25).to_string(), "0.25");
    }
}
