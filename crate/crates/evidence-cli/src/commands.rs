//! Subcommand implementations: build the model, run one core analysis,
//! assemble a [`Report`].

use std::sync::Arc;

use evidence_core::misleading::{
    exact_misleading_probability, monte_carlo_misleading, ComparisonSpec, ComparisonStyle,
    MisleadingMethod, MisleadingOptions,
};
use evidence_core::modelspec::{self, DiagnosticKind, ModelDocument, ParseDiagnostic, Severity};
use evidence_core::nuisance::{
    derived_statistic_model, distinct_count_exact_statistic, distinct_count_statistic, marginalize,
    profile, DerivationMethod, DerivedOptions, DerivedStatistic, NuisanceSpec,
};
use evidence_core::{
    comparable, iid_likelihood, likelihood_ratio, max_likelihood_points, max_likelihood_value,
    DiscreteModel, EvidenceError, LikelihoodFunction, ParameterPoint, ParameterSpace, Sample,
    Value,
};

use crate::cli::{
    AnalysisArgs, Cli, Command, DeriveStatArgs, ExportArgs, ExportFormatArg, FormatArg,
    MarginalizeArgs, MisleadingArgs, MisleadingCmd, ObsArgs, ProfileArgs, RatioArgs, SourceArgs,
    StatArg, StyleArg, ValidateArgs,
};
use crate::exit::{CliError, EXIT_VALIDATION};
use crate::report::{Report, Scalar, Table};
use crate::source;

/// Spaces up to this many points are tabulated in full (zeros included);
/// larger ones list only the function's positive support.
const TABLE_ENUMERATION_BOUND: u128 = 10_000;

pub fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Validate(args) => cmd_validate(args),
        Command::Likelihood(args) => finish(cmd_likelihood(args)),
        Command::Ratio(args) => finish(cmd_ratio(args)),
        Command::Mle(args) => finish(cmd_mle(args)),
        Command::Marginalize(args) => finish(cmd_marginalize(args)),
        Command::Profile(args) => finish(cmd_profile(args)),
        Command::DeriveStat(args) => finish(cmd_derive_stat(args)),
        Command::Misleading(cmd) => finish(cmd_misleading(cmd)),
        Command::Export(args) => finish(cmd_export(args)),
    }
}

fn finish(result: Result<(Report, FormatArg), CliError>) -> Result<i32, CliError> {
    let (report, format) = result?;
    emit(&report, format);
    Ok(0)
}

fn emit(report: &Report, format: FormatArg) {
    let rendered = match format {
        FormatArg::Text => report.render_text(),
        FormatArg::Csv => report.render_csv(),
        FormatArg::Json => report.render_json(),
    };
    print!("{rendered}");
}

// ---------------------------------------------------------------------------
// validate

fn cmd_validate(args: ValidateArgs) -> Result<i32, CliError> {
    let path = args.file.display().to_string();
    let text = std::fs::read_to_string(&args.file).map_err(|e| CliError::Io {
        path: path.clone(),
        message: e.to_string(),
    })?;
    let (valid, model_name, diagnostics) = match modelspec::parse(&text) {
        Ok(parsed) => (true, Some(parsed.document.name.clone()), parsed.warnings),
        Err(errors) => (false, None, errors.diagnostics),
    };
    let error_count = diagnostics
        .iter()
        .filter(|d| d.severity == Severity::Error)
        .count() as u64;
    let warning_count = diagnostics.len() as u64 - error_count;

    let mut report = Report::new("validate");
    report.field("file", Scalar::Str(path));
    report.field("valid", Scalar::Bool(valid));
    if let Some(name) = model_name {
        report.field("model", Scalar::Str(name));
    }
    report.field("errors", Scalar::UInt(error_count));
    report.field("warnings", Scalar::UInt(warning_count));
    if !diagnostics.is_empty() {
        report.table = Some(diagnostics_table(&diagnostics));
    }
    emit(&report, args.output.format);
    Ok(if valid { 0 } else { EXIT_VALIDATION })
}

fn diagnostics_table(diagnostics: &[ParseDiagnostic]) -> Table {
    Table {
        headers: ["line", "col", "severity", "kind", "message"]
            .map(String::from)
            .to_vec(),
        rows: diagnostics
            .iter()
            .map(|d| {
                vec![
                    Scalar::UInt(d.line as u64),
                    Scalar::UInt(d.col as u64),
                    Scalar::Str(severity_token(d.severity).into()),
                    Scalar::Str(kind_token(d.kind).into()),
                    Scalar::Str(d.message.clone()),
                ]
            })
            .collect(),
    }
}

fn severity_token(severity: Severity) -> &'static str {
    match severity {
        Severity::Warning => "warning",
        Severity::Error => "error",
    }
}

fn kind_token(kind: DiagnosticKind) -> &'static str {
    match kind {
        DiagnosticKind::Syntax => "syntax",
        DiagnosticKind::DuplicateRow => "duplicate-row",
        DiagnosticKind::MissingRow => "missing-row",
        DiagnosticKind::RowNotNormalized => "row-not-normalized",
        DiagnosticKind::UnknownValue => "unknown-value",
        DiagnosticKind::DuplicateValue => "duplicate-value",
    }
}

// ---------------------------------------------------------------------------
// likelihood / mle

fn analysis_parts(
    source_args: &SourceArgs,
    obs_args: &ObsArgs,
) -> Result<(DiscreteModel, Sample, LikelihoodFunction), CliError> {
    let model = source::resolve_model(source_args, None)?;
    let sample = source::resolve_sample(&model, obs_args)?;
    let function = iid_likelihood(&model, &sample)?;
    Ok((model, sample, function))
}

fn cmd_likelihood(args: AnalysisArgs) -> Result<(Report, FormatArg), CliError> {
    let (model, sample, function) = analysis_parts(&args.source, &args.obs)?;
    let mut report = Report::new("likelihood");
    report.field("model", Scalar::Str(model.name().into()));
    report.field("observations", Scalar::Str(sample_tokens(&sample)));
    report.field("sample_size", Scalar::UInt(sample.n() as u64));
    let (table, scope) = function_table(&function);
    report.field("table_scope", Scalar::Str(scope.into()));
    report.table = Some(table);
    Ok((report, args.output.format))
}

fn cmd_mle(args: AnalysisArgs) -> Result<(Report, FormatArg), CliError> {
    let (model, sample, function) = analysis_parts(&args.source, &args.obs)?;
    let best = max_likelihood_points(&function);
    let mut report = Report::new("mle");
    report.field("model", Scalar::Str(model.name().into()));
    report.field("observations", Scalar::Str(sample_tokens(&sample)));
    report.field(
        "max_value",
        Scalar::Float(max_likelihood_value(&function)),
    );
    report.field("argmax_count", Scalar::UInt(best.len() as u64));
    report.table = Some(Table {
        headers: dim_headers(function.space()),
        rows: best.iter().map(|p| coord_scalars(p)).collect(),
    });
    Ok((report, args.output.format))
}

// ---------------------------------------------------------------------------
// ratio

fn cmd_ratio(args: RatioArgs) -> Result<(Report, FormatArg), CliError> {
    let has_second = args.b_file.is_some() || args.b_builtin.is_some();
    if !has_second && (args.b_obs.is_some() || args.b_sample.is_some()) {
        return Err(CliError::Usage(
            "--b-obs/--b-sample need a second model source (--b-file or --b-builtin)".into(),
        ));
    }
    let model = source::resolve_model(&args.source, args.b_builtin.as_deref())?;
    let sample = source::resolve_sample(&model, &args.obs)?;
    let function = iid_likelihood(&model, &sample)?;

    let mut report = Report::new("ratio");
    report.field("model", Scalar::Str(model.name().into()));
    report.field("observations", Scalar::Str(sample_tokens(&sample)));

    if has_second {
        let model_b = source::resolve_second_model(
            args.b_file.as_deref(),
            args.b_builtin.as_deref(),
            &args.source,
        )?;
        let sample_b =
            source::resolve_sample_tokens(&model_b, args.b_obs.as_deref(), args.b_sample.as_deref())?;
        let function_b = iid_likelihood(&model_b, &sample_b)?;
        report.field("model_b", Scalar::Str(model_b.name().into()));
        report.field("observations_b", Scalar::Str(sample_tokens(&sample_b)));
        // Ratios may only be read across the two functions when they are the
        // same likelihood function up to scale; otherwise the comparison is
        // between different functions and is refused.
        if !comparable(&function, &function_b) {
            return Err(EvidenceError::CrossModelComparison.into());
        }
        report.field("comparable", Scalar::Bool(true));
    }

    let a = source::parse_point(function.space(), &args.a)?;
    let b = source::parse_point(function.space(), &args.b)?;
    let comparison = likelihood_ratio(&function, &a, &b)?;
    report.field("a", Scalar::Str(a.display_coords()));
    report.field("b", Scalar::Str(b.display_coords()));
    report.field("likelihood_a", Scalar::Float(function.value(&a)?));
    report.field("likelihood_b", Scalar::Float(function.value(&b)?));
    report.field("ratio", Scalar::Float(comparison.ratio));
    report.field(
        "classification",
        Scalar::Str(comparison.classification.as_str().into()),
    );
    Ok((report, args.output.format))
}

// ---------------------------------------------------------------------------
// marginalize / profile

fn cmd_marginalize(args: MarginalizeArgs) -> Result<(Report, FormatArg), CliError> {
    if let Some(scheme) = &args.weights {
        if scheme != "uniform" {
            return Err(CliError::Usage(format!(
                "--weights supports only \"uniform\", got {scheme:?}"
            )));
        }
    }
    let (model, sample, function) = analysis_parts(&args.source, &args.obs)?;
    let spec = NuisanceSpec::drop(model.space(), &source::split_dims(&args.nuisance))?;
    let reduced = marginalize(&function, &spec)?;
    Ok((
        reduced_report("marginalize", &model, &sample, &spec, Some("uniform"), &reduced),
        args.output.format,
    ))
}

fn cmd_profile(args: ProfileArgs) -> Result<(Report, FormatArg), CliError> {
    let (model, sample, function) = analysis_parts(&args.source, &args.obs)?;
    let spec = NuisanceSpec::drop(model.space(), &source::split_dims(&args.nuisance))?;
    let reduced = profile(&function, &spec)?;
    Ok((
        reduced_report("profile", &model, &sample, &spec, None, &reduced),
        args.output.format,
    ))
}

fn reduced_report(
    command: &'static str,
    model: &DiscreteModel,
    sample: &Sample,
    spec: &NuisanceSpec,
    weights: Option<&str>,
    reduced: &LikelihoodFunction,
) -> Report {
    let mut report = Report::new(command);
    report.field("model", Scalar::Str(model.name().into()));
    report.field("observations", Scalar::Str(sample_tokens(sample)));
    report.field("interest", Scalar::Str(spec.interest().join(",")));
    report.field("nuisance", Scalar::Str(spec.nuisance().join(",")));
    if let Some(scheme) = weights {
        report.field("weights", Scalar::Str(scheme.into()));
    }
    let (table, scope) = function_table(reduced);
    report.field("table_scope", Scalar::Str(scope.into()));
    report.table = Some(table);
    report
}

// ---------------------------------------------------------------------------
// derive-stat

fn stat_for(arg: StatArg) -> DerivedStatistic {
    match arg {
        StatArg::DistinctCount => distinct_count_statistic(),
        StatArg::DistinctCountExact => distinct_count_exact_statistic(),
    }
}

/// The nuisance dimensions to eliminate: explicit `--nuisance`, else `mu`
/// when the model has one.
fn nuisance_dims_or_default(
    explicit: Option<&str>,
    space: &ParameterSpace,
    context: &str,
) -> Result<String, CliError> {
    match explicit {
        Some(text) => Ok(text.to_owned()),
        None => {
            if space.dimension_index("mu").is_some() {
                Ok("mu".into())
            } else {
                Err(CliError::Usage(format!(
                    "{context} needs --nuisance DIM[,DIM…]: the model has no mu dimension to default to"
                )))
            }
        }
    }
}

fn cmd_derive_stat(args: DeriveStatArgs) -> Result<(Report, FormatArg), CliError> {
    let model = source::resolve_model(&args.source, None)?;
    let statistic = stat_for(args.stat);
    let dims_text =
        nuisance_dims_or_default(args.nuisance.as_deref(), model.space(), "derive-stat")?;
    let spec = NuisanceSpec::drop(model.space(), &source::split_dims(&dims_text))?;
    let mut options = DerivedOptions::default();
    if let Some(trials) = args.trials {
        options.mc_trials = trials;
    }
    if let Some(seed) = args.seed {
        options.seed = seed;
    }
    let derived = derived_statistic_model(&model, &statistic, args.n, &spec, &options)?;

    let mut report = Report::new("derive-stat");
    report.field("model", Scalar::Str(model.name().into()));
    report.field("statistic", Scalar::Str(statistic.name().into()));
    report.field("n", Scalar::UInt(args.n as u64));
    report.field("interest", Scalar::Str(spec.interest().join(",")));
    report.field("nuisance", Scalar::Str(spec.nuisance().join(",")));
    let standard_errors = match &derived.method {
        DerivationMethod::Exact { multisets } => {
            report.field("method", Scalar::Str("exact".into()));
            report.field("multisets", Scalar::UInt(*multisets));
            None
        }
        DerivationMethod::MonteCarlo {
            trials,
            seed,
            standard_errors,
        } => {
            report.field("method", Scalar::Str("monte-carlo".into()));
            report.field("trials", Scalar::UInt(*trials));
            report.field("seed", Scalar::UInt(*seed));
            Some(standard_errors)
        }
    };

    let outcomes: Vec<Value> = derived.model.outcomes().iter().collect();
    let mut headers = dim_headers(derived.model.space());
    for outcome in &outcomes {
        headers.push(format!("P({})", outcome.display_token()));
    }
    if standard_errors.is_some() {
        for outcome in &outcomes {
            headers.push(format!("se({})", outcome.display_token()));
        }
    }
    let mut rows = Vec::new();
    for (row_index, point) in derived.model.space().points().enumerate() {
        let mut row = coord_scalars(&point);
        for outcome in &outcomes {
            row.push(Scalar::Float(derived.model.prob(&point, outcome)?));
        }
        if let Some(all_se) = standard_errors {
            for se in &all_se[row_index] {
                row.push(Scalar::Float(*se));
            }
        }
        rows.push(row);
    }
    report.table = Some(Table { headers, rows });
    Ok((report, args.output.format))
}

// ---------------------------------------------------------------------------
// misleading

fn style_token(style: StyleArg) -> &'static str {
    match style {
        StyleArg::VectorArgmax => "vector-argmax",
        StyleArg::FixedPair => "fixed-pair",
        StyleArg::InterestMarginal => "interest-marginal",
        StyleArg::InterestDerived => "interest-derived",
    }
}

fn cmd_misleading(cmd: MisleadingCmd) -> Result<(Report, FormatArg), CliError> {
    let (base, mc): (MisleadingArgs, Option<(u64, u64)>) = match cmd {
        MisleadingCmd::Exact(args) => (args, None),
        MisleadingCmd::Mc(args) => {
            let pair = (args.trials, args.seed);
            (args.base, Some(pair))
        }
    };
    let model = source::resolve_model(&base.source, None)?;
    let space = model.space();
    let true_point = source::parse_point(space, &base.true_point)?;

    if (base.a.is_some() || base.b.is_some()) && base.style != StyleArg::FixedPair {
        return Err(CliError::Usage(
            "--a/--b apply only to --style fixed-pair".into(),
        ));
    }
    let needs_nuisance = matches!(
        base.style,
        StyleArg::InterestMarginal | StyleArg::InterestDerived
    );
    let nuisance_spec = match (&base.nuisance, needs_nuisance) {
        (Some(text), _) => Some(NuisanceSpec::drop(space, &source::split_dims(text))?),
        (None, true) => Some(
            NuisanceSpec::drop(
                space,
                &source::split_dims(&nuisance_dims_or_default(
                    None,
                    space,
                    &format!("--style {}", style_token(base.style)),
                )?),
            )?,
        ),
        (None, false) => None,
    };

    let style = match base.style {
        StyleArg::VectorArgmax => ComparisonStyle::VectorArgmax,
        StyleArg::InterestMarginal => ComparisonStyle::InterestMarginal,
        StyleArg::InterestDerived => ComparisonStyle::InterestDerived,
        StyleArg::FixedPair => {
            let (a, b) = match (&base.a, &base.b) {
                (Some(a), Some(b)) => {
                    (source::parse_point(space, a)?, source::parse_point(space, b)?)
                }
                (None, None) => default_pair(space, &true_point)?,
                _ => {
                    return Err(CliError::Usage(
                        "--style fixed-pair needs both --a and --b".into(),
                    ))
                }
            };
            ComparisonStyle::FixedPair { a, b }
        }
    };

    let mut spec = ComparisonSpec::new(style, base.k)?;
    if let Some(ns) = nuisance_spec.clone() {
        spec = spec.with_nuisance(ns);
    }
    if base.style == StyleArg::InterestDerived {
        spec = spec.with_statistic(stat_for(base.stat));
    }
    let options = MisleadingOptions::default();
    let outcome = match mc {
        None => exact_misleading_probability(&model, &true_point, base.n, &spec, &options)?,
        Some((trials, seed)) => {
            monte_carlo_misleading(&model, &true_point, base.n, &spec, trials, seed, &options)?
        }
    };

    let mut report = Report::new("misleading");
    report.field("model", Scalar::Str(model.name().into()));
    report.field("style", Scalar::Str(style_token(base.style).into()));
    report.field("true", Scalar::Str(true_point.display_coords()));
    report.field("threshold", Scalar::Float(outcome.threshold));
    report.field("sample_size", Scalar::UInt(outcome.sample_size as u64));
    if let Some(ns) = &nuisance_spec {
        report.field("interest", Scalar::Str(ns.interest().join(",")));
        report.field("nuisance", Scalar::Str(ns.nuisance().join(",")));
    }
    report.field("probability", Scalar::Float(outcome.probability));
    match &outcome.method {
        MisleadingMethod::Exact { classes } => {
            report.field("method", Scalar::Str("exact".into()));
            report.field("classes", Scalar::UInt(*classes));
        }
        MisleadingMethod::MonteCarlo {
            trials,
            seed,
            standard_error,
        } => {
            report.field("method", Scalar::Str("monte-carlo".into()));
            report.field("trials", Scalar::UInt(*trials));
            report.field("seed", Scalar::UInt(*seed));
            report.field("standard_error", Scalar::Float(*standard_error));
        }
    }
    report.field(
        "min_misleading_ratio",
        match outcome.min_misleading_ratio {
            Some(r) => Scalar::Float(r),
            None => Scalar::Null,
        },
    );
    Ok((report, base.output.format))
}

/// On a two-point model the fixed pair defaults to rival vs truth.
fn default_pair(
    space: &Arc<ParameterSpace>,
    true_point: &ParameterPoint,
) -> Result<(ParameterPoint, ParameterPoint), CliError> {
    if space.point_count() == Some(2) {
        let rival = space
            .points()
            .find(|p| p != true_point)
            .expect("a two-point space has a point besides the true one");
        Ok((rival, true_point.clone()))
    } else {
        Err(CliError::Usage(
            "--style fixed-pair needs both --a and --b on models with more than two parameter points"
                .into(),
        ))
    }
}

// ---------------------------------------------------------------------------
// export

fn cmd_export(args: ExportArgs) -> Result<(Report, FormatArg), CliError> {
    let model = source::resolve_model(&args.source, None)?;
    let doc = ModelDocument::from_model(&model)?;
    let mut headers: Vec<String> = doc.params.iter().map(|p| p.name.clone()).collect();
    headers.extend(
        doc.outcomes
            .iter()
            .map(|o| format!("P({})", o.display_token())),
    );
    let rows = doc
        .rows
        .iter()
        .map(|row| {
            let mut cells: Vec<Scalar> = row.coords.iter().map(value_scalar).collect();
            cells.extend(row.probs.iter().map(|p| Scalar::Float(p.value())));
            cells
        })
        .collect();
    let mut report = Report::new("export");
    report.field("model", Scalar::Str(doc.name.clone()));
    report.table = Some(Table { headers, rows });
    let format = match args.format {
        ExportFormatArg::Csv => FormatArg::Csv,
        ExportFormatArg::Json => FormatArg::Json,
    };
    Ok((report, format))
}

// ---------------------------------------------------------------------------
// shared table helpers

fn sample_tokens(sample: &Sample) -> String {
    sample
        .iter()
        .map(|v| v.display_token())
        .collect::<Vec<_>>()
        .join(",")
}

fn dim_headers(space: &Arc<ParameterSpace>) -> Vec<String> {
    space
        .dimensions()
        .iter()
        .map(|d| d.name().to_owned())
        .collect()
}

fn coord_scalars(point: &ParameterPoint) -> Vec<Scalar> {
    point.coords().iter().map(value_scalar).collect()
}

/// Integers stay numeric; reals and labels use their canonical display token,
/// which the CLI accepts back verbatim.
fn value_scalar(value: &Value) -> Scalar {
    match value {
        Value::Int(i) => Scalar::Int(*i),
        other => Scalar::Str(other.display_token()),
    }
}

/// Tabulates a likelihood function: the whole space (zeros included) when it
/// is small enough to enumerate, otherwise just the positive support.
fn function_table(function: &LikelihoodFunction) -> (Table, &'static str) {
    let space = function.space();
    let mut headers = dim_headers(space);
    headers.push("value".into());
    if space.is_enumerable_within(TABLE_ENUMERATION_BOUND) {
        let rows = space
            .points()
            .map(|point| {
                let mut row = coord_scalars(&point);
                row.push(Scalar::Float(
                    function.value(&point).expect("point from the same space"),
                ));
                row
            })
            .collect();
        (Table { headers, rows }, "full")
    } else {
        let rows = function
            .support()
            .iter()
            .map(|(point, &value)| {
                let mut row = coord_scalars(point);
                row.push(Scalar::Float(value));
                row
            })
            .collect();
        (Table { headers, rows }, "support")
    }
}
