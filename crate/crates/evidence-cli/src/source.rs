//! Turns command-line model sources and value tokens into core objects.

use std::path::Path;
use std::sync::Arc;

use evidence_core::models::{
    birnbaum_known_mu_model, birnbaum_model, binomial_model, rain_model, sure_thing_model,
    urn1_model, urn2_model, BirnbaumConfig, UrnComposition,
};
use evidence_core::modelspec;
use evidence_core::{
    DiscreteModel, EvidenceError, OutcomeSpace, ParameterPoint, ParameterSpace, Sample, Value,
};

use crate::cli::{ObsArgs, SourceArgs};
use crate::exit::CliError;

/// Names accepted by `--builtin`, in documentation order.
pub const BUILTIN_NAMES: [&str; 7] = [
    "rain",
    "urn1",
    "urn2",
    "birnbaum",
    "birnbaum-known-mu",
    "binomial",
    "sure-thing",
];

/// The builtin-specific flags: which builtins accept them and which require
/// them. A provided flag claimed by no builtin on the command line is a usage
/// error, so `--mu` with `--builtin rain` fails fast instead of being
/// silently ignored.
const EXTRA_FLAGS: [(&str, &[&str], &[&str]); 7] = [
    ("mu", &["birnbaum-known-mu"], &[]),
    ("mu-lo", &["birnbaum"], &[]),
    ("mu-hi", &["birnbaum"], &[]),
    ("c", &["birnbaum"], &[]),
    ("binomial-n", &["binomial"], &["binomial"]),
    ("p-grid", &["binomial"], &["binomial"]),
    ("sequence", &["sure-thing"], &["sure-thing"]),
];

fn provided_extras(args: &SourceArgs) -> Vec<&'static str> {
    let mut out = Vec::new();
    if args.mu.is_some() {
        out.push("mu");
    }
    if args.mu_lo.is_some() {
        out.push("mu-lo");
    }
    if args.mu_hi.is_some() {
        out.push("mu-hi");
    }
    if args.c.is_some() {
        out.push("c");
    }
    if args.binomial_n.is_some() {
        out.push("binomial-n");
    }
    if args.p_grid.is_some() {
        out.push("p-grid");
    }
    if args.sequence.is_some() {
        out.push("sequence");
    }
    out
}

fn accepts(builtin: Option<&str>, flag: &str) -> bool {
    let Some(name) = builtin else { return false };
    EXTRA_FLAGS
        .iter()
        .any(|(f, accepted, _)| *f == flag && accepted.contains(&name))
}

fn unknown_builtin(name: &str) -> CliError {
    CliError::Usage(format!(
        "unknown builtin {name:?}; expected one of {}",
        BUILTIN_NAMES.join(", ")
    ))
}

/// Checks that every provided builtin flag is claimed by one of the builtins
/// named on the command line (a second model source may claim flags too).
pub fn check_extras(args: &SourceArgs, builtins: &[Option<&str>]) -> Result<(), CliError> {
    for flag in provided_extras(args) {
        if !builtins.iter().any(|b| accepts(*b, flag)) {
            let context = match builtins.iter().flatten().next() {
                Some(name) => format!("builtin {name}"),
                None => "a model file".into(),
            };
            return Err(CliError::Usage(format!(
                "--{flag} does not apply to {context}"
            )));
        }
    }
    Ok(())
}

/// Builds the model named by `--file`/`--builtin`. `also_claimed_by` lists a
/// second builtin on the same command line (for `ratio --b-builtin`) whose
/// flags are legitimate even though this model ignores them.
pub fn resolve_model(args: &SourceArgs, also_claimed_by: Option<&str>) -> Result<DiscreteModel, CliError> {
    check_extras(args, &[args.builtin.as_deref(), also_claimed_by])?;
    build(args.file.as_deref(), args.builtin.as_deref(), args)
}

/// Builds the second model of a `ratio` comparison from `--b-file`/
/// `--b-builtin`, sharing the builtin flag pool with the primary source.
pub fn resolve_second_model(
    file: Option<&Path>,
    builtin: Option<&str>,
    shared: &SourceArgs,
) -> Result<DiscreteModel, CliError> {
    build(file, builtin, shared)
}

fn build(
    file: Option<&Path>,
    builtin: Option<&str>,
    args: &SourceArgs,
) -> Result<DiscreteModel, CliError> {
    match (file, builtin) {
        (Some(path), None) => load_model_file(path),
        (None, Some(name)) => build_builtin(name, args),
        (None, None) => Err(CliError::Usage(
            "a model source is required: pass --file FILE or --builtin NAME".into(),
        )),
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--file conflicts with --builtin; pass exactly one".into(),
        )),
    }
}

fn require<T: Clone>(value: &Option<T>, builtin: &str, flag: &str) -> Result<T, CliError> {
    value
        .clone()
        .ok_or_else(|| CliError::Usage(format!("builtin {builtin} requires --{flag}")))
}

fn build_builtin(name: &str, args: &SourceArgs) -> Result<DiscreteModel, CliError> {
    match name {
        "rain" => Ok(rain_model()),
        "urn1" => Ok(urn1_model()),
        "urn2" => Ok(urn2_model(&UrnComposition::standard())?),
        "birnbaum" => {
            let mut config = BirnbaumConfig::default();
            if let Some(lo) = args.mu_lo {
                config.mu_lo = lo;
            }
            if let Some(hi) = args.mu_hi {
                config.mu_hi = hi;
            }
            if let Some(c) = args.c {
                config.c = c;
            }
            Ok(birnbaum_model(&config)?)
        }
        "birnbaum-known-mu" => Ok(birnbaum_known_mu_model(args.mu.unwrap_or(17))),
        "binomial" => {
            let n = require(&args.binomial_n, name, "binomial-n")?;
            let grid_text = require(&args.p_grid, name, "p-grid")?;
            let grid = parse_p_grid(&grid_text)?;
            Ok(binomial_model(n, &grid)?)
        }
        "sure-thing" => {
            let sequence = require(&args.sequence, name, "sequence")?;
            Ok(sure_thing_model(&sequence)?)
        }
        other => Err(unknown_builtin(other)),
    }
}

fn parse_p_grid(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|tok| {
            tok.trim().parse::<f64>().map_err(|_| {
                CliError::Usage(format!("--p-grid entry {tok:?} is not a number"))
            })
        })
        .collect()
}

/// Reads and parses a model file; warnings go to stderr, errors abort.
pub fn load_model_file(path: &Path) -> Result<DiscreteModel, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    match modelspec::parse(&text) {
        Ok(parsed) => {
            for w in &parsed.warnings {
                eprintln!(
                    "warning[parse]: {}: line {}, col {}: {}",
                    path.display(),
                    w.line,
                    w.col,
                    w.message
                );
            }
            Ok(parsed.document.to_model()?)
        }
        Err(errors) => Err(CliError::Parse {
            path: path.display().to_string(),
            errors,
        }),
    }
}

/// Parses `dim=value[,dim=value…]` into a full parameter point.
pub fn parse_point(space: &Arc<ParameterSpace>, text: &str) -> Result<ParameterPoint, CliError> {
    let mut coords: Vec<(&str, Value)> = Vec::new();
    for part in text.split(',') {
        let Some((dim, token)) = part.split_once('=') else {
            return Err(CliError::Usage(format!(
                "coordinate {part:?} is not in dim=value form"
            )));
        };
        let value = space.resolve_value(dim, token)?;
        coords.push((dim, value));
    }
    Ok(space.point(&coords)?)
}

/// Resolves one outcome token against the model's outcome space, matching
/// either the parsed value or its canonical display form.
pub fn resolve_outcome(model: &DiscreteModel, token: &str) -> Result<Value, CliError> {
    let parsed = Value::parse_token(token);
    if model.outcomes().contains(&parsed) {
        return Ok(parsed);
    }
    if let OutcomeSpace::Enumerated(values) = &**model.outcomes() {
        if let Some(v) = values.iter().find(|v| v.display_token() == token) {
            return Ok(v.clone());
        }
    }
    Err(EvidenceError::OutcomeNotInSpace {
        outcome: token.to_owned(),
    }
    .into())
}

/// Builds the observed sample from `--obs` or `--sample`.
pub fn resolve_sample(model: &DiscreteModel, obs: &ObsArgs) -> Result<Sample, CliError> {
    resolve_sample_tokens(model, obs.obs.as_deref(), obs.sample.as_deref())
}

/// Like [`resolve_sample`], from raw optional tokens (used for the second
/// model of a `ratio` comparison).
pub fn resolve_sample_tokens(
    model: &DiscreteModel,
    obs: Option<&str>,
    sample: Option<&str>,
) -> Result<Sample, CliError> {
    match (obs, sample) {
        (Some(token), None) => Ok(Sample::new(vec![resolve_outcome(model, token)?])),
        (None, Some(list)) => {
            let values = list
                .split(',')
                .map(|token| resolve_outcome(model, token))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Sample::new(values))
        }
        (None, None) => Err(CliError::Usage(
            "an observation is required: pass --obs VALUE or --sample V1,V2,…".into(),
        )),
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--obs conflicts with --sample; pass exactly one".into(),
        )),
    }
}

/// Splits a `--nuisance` list into dimension names.
pub fn split_dims(text: &str) -> Vec<&str> {
    text.split(',').collect()
}
