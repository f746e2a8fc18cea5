//! Acceptance suite: one test per release criterion, each printing a
//! `ACCEPTANCE C## … PASS` line (visible with `--nocapture`; the test names
//! give the same one-line-per-criterion view in default output). Failures
//! panic with an `ACCEPTANCE C## FAIL` message.

mod common;

use std::time::Instant;

use common::{exit_code, run, run_env, stderr, stdout};
use evidence_core::misleading::{
    exact_misleading_probability, monte_carlo_misleading, ComparisonSpec, ComparisonStyle,
    MisleadingMethod, MisleadingOptions,
};
use evidence_core::models::{
    binomial_model, birnbaum_known_mu_model, birnbaum_model, rain_model, sample, sure_thing_model,
    urn1_model, urn2_model, BirnbaumConfig, UrnComposition,
};
use evidence_core::modelspec::{self, ModelDocument, ParamDecl, ProbabilityLiteral, RowDecl};
use evidence_core::nuisance::{
    derived_statistic_model, distinct_count_statistic, marginalize, profile, DerivedOptions,
    NuisanceSpec,
};
use evidence_core::{
    comparable, iid_likelihood, likelihood, likelihood_ratio, max_likelihood_points,
    DiscreteModel, ParameterPoint, Sample, Value,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde_json::Value as Json;

fn pass(id: &str, detail: &str) {
    println!("ACCEPTANCE {id} PASS — {detail}");
}

fn point(model: &DiscreteModel, coords: &[(&str, Value)]) -> ParameterPoint {
    model
        .space()
        .point(coords)
        .expect("acceptance points lie in their spaces")
}

fn json_run(args: &[&str]) -> Json {
    let out = run(args);
    assert_eq!(
        exit_code(&out),
        0,
        "ACCEPTANCE FAIL: {args:?} errored: {}",
        stderr(&out)
    );
    serde_json::from_str(&stdout(&out)).expect("CLI output should be valid JSON")
}

// ---------------------------------------------------------------------------

#[test]
fn c01_rain_ratios_exact() {
    // Library path.
    let model = rain_model();
    let f = likelihood(&model, &Value::label("rain")).expect("rain is observable");
    let wed_thu = likelihood_ratio(
        &f,
        &point(&model, &[("day", Value::label("Wednesday"))]),
        &point(&model, &[("day", Value::label("Thursday"))]),
    )
    .expect("defined ratio");
    assert_eq!(wed_thu.ratio, 3.25, "ACCEPTANCE C01 FAIL: Wednesday:Thursday");
    let thu_sat = likelihood_ratio(
        &f,
        &point(&model, &[("day", Value::label("Thursday"))]),
        &point(&model, &[("day", Value::label("Saturday"))]),
    )
    .expect("defined ratio");
    assert_eq!(thu_sat.ratio, 20.0, "ACCEPTANCE C01 FAIL: Thursday:Saturday");

    // CLI path.
    let payload = &json_run(&[
        "ratio", "--builtin", "rain", "--obs", "rain",
        "--a", "day=Wednesday", "--b", "day=Thursday", "--format", "json",
    ])["payload"];
    assert_eq!(payload["ratio"], Json::from(3.25), "ACCEPTANCE C01 FAIL: CLI Wednesday:Thursday");
    let payload = &json_run(&[
        "ratio", "--builtin", "rain", "--obs", "rain",
        "--a", "day=Thursday", "--b", "day=Saturday", "--format", "json",
    ])["payload"];
    assert_eq!(payload["ratio"], Json::from(20.0), "ACCEPTANCE C01 FAIL: CLI Thursday:Saturday");

    pass("C01", "rain Wednesday:Thursday = 3.25 and Thursday:Saturday = 20, exact, library and CLI");
}

#[test]
fn c02_urn1_red_and_non_red() {
    let model = urn1_model();
    let one = point(&model, &[("nu_c", Value::Int(1))]);
    let all = point(&model, &[("nu_c", Value::Int(201))]);

    let red = likelihood(&model, &Value::label("red")).expect("red is observable");
    let cmp = likelihood_ratio(&red, &one, &all).expect("defined");
    assert_eq!(cmp.ratio, 100.0, "ACCEPTANCE C02 FAIL: red draw should give exactly 100");

    let non_red = likelihood(&model, &Value::label("non-red")).expect("non-red is observable");
    let cmp = likelihood_ratio(&non_red, &one, &all).expect("defined");
    assert_eq!(cmp.ratio, 0.0, "ACCEPTANCE C02 FAIL: non-red draw should give ratio 0");
    assert!(
        cmp.classification.as_str().starts_with("conclusive"),
        "ACCEPTANCE C02 FAIL: non-red draw should be conclusive, got {}",
        cmp.classification.as_str()
    );

    pass("C02", "urn1 red draw LR(1:201) = 100 exactly; non-red draw ratio 0, conclusive");
}

#[test]
fn c03_derived_statistic_is_evidence_free_at_n1() {
    let stat = distinct_count_statistic();
    let options = DerivedOptions::default();

    for (label, model, dims) in [
        ("urn2", urn2_model(&UrnComposition::standard()).expect("builds"), vec!["mu"]),
        ("birnbaum", birnbaum_model(&BirnbaumConfig::default()).expect("builds"), vec!["mu"]),
    ] {
        let spec = NuisanceSpec::drop(model.space(), &dims).expect("mu exists");
        let derived = derived_statistic_model(&model, &stat, 1, &spec, &options)
            .expect("n=1 derivation is exact and cheap");
        let interest: Vec<ParameterPoint> = derived.model.space().points().collect();
        assert_eq!(interest.len(), 2, "ACCEPTANCE C03 FAIL: two interest values expected");

        let mut possible = 0usize;
        for obs in derived.model.outcomes().iter() {
            // "Every possible observation": skip outcomes no parameter can produce.
            let reachable = interest
                .iter()
                .any(|p| derived.model.prob(p, &obs).expect("in space") > 0.0);
            if !reachable {
                continue;
            }
            possible += 1;
            let f = likelihood(&derived.model, &obs).expect("reachable observation");
            let cmp = likelihood_ratio(&f, &interest[0], &interest[1]).expect("defined");
            assert_eq!(
                cmp.ratio, 1.0,
                "ACCEPTANCE C03 FAIL: {label} n=1 derived LR must be exactly 1 for obs {obs:?}"
            );
        }
        assert!(possible >= 1, "ACCEPTANCE C03 FAIL: {label} has no possible observation");
    }

    pass("C03", "urn2 and birnbaum, n=1 derived-statistic analysis: LR = 1 exactly for every possible observation");
}

#[test]
fn c04_birnbaum_vector_argmax_and_headline_ratio() {
    let model = birnbaum_model(&BirnbaumConfig::default()).expect("builds");
    let mut xs: Vec<i64> = (-120..=120).step_by(7).collect();
    xs.extend([-9_999_999_999, -9_999_999_900, 9_999_999_900, 9_999_999_999]);

    for &x in &xs {
        let f = likelihood(&model, &Value::Int(x)).expect("in the observable range");
        let best = max_likelihood_points(&f);
        let certain = point(&model, &[("mu", Value::Int(x)), ("sigma", Value::Int(0))]);
        assert_eq!(
            best,
            vec![certain.clone()],
            "ACCEPTANCE C04 FAIL: argmax for x={x} is not uniquely (x, 0)"
        );
        let rival = point(&model, &[("mu", Value::Int(x)), ("sigma", Value::Int(100))]);
        let cmp = likelihood_ratio(&f, &certain, &rival).expect("defined");
        assert_eq!(
            cmp.ratio, 100.0,
            "ACCEPTANCE C04 FAIL: LR((x,0):(x,100)) for x={x} should be exactly 100"
        );
        assert!(cmp.ratio >= 100.0, "ACCEPTANCE C04 FAIL: headline ratio below 100");
    }

    // The sometimes-quoted c = 1/10,040 would give 10040/100 = 100.4 ("all
    // exceeding 100") but does not normalize the triangle, and the model
    // refuses to build with it.
    let quoted = BirnbaumConfig { c: 1.0 / 10_040.0, ..BirnbaumConfig::default() };
    assert!(
        birnbaum_model(&quoted).is_err(),
        "ACCEPTANCE C04 FAIL: c = 1/10040 must be rejected by validation"
    );
    let alternate = 10_040.0 / 100.0;

    pass(
        "C04",
        &format!(
            "argmax uniquely (x,0) and LR = 100 exactly (c = 1/10000) for {} window locations; \
             under the quoted c = 1/10040 the ratio would be {alternate} but that c fails \
             normalization and is rejected",
            xs.len()
        ),
    );
}

#[test]
fn c05_misleading_probability_extremes() {
    let model = birnbaum_model(&BirnbaumConfig::default()).expect("builds");
    let truth = point(&model, &[("mu", Value::Int(0)), ("sigma", Value::Int(100))]);
    let options = MisleadingOptions::default();

    let spec = ComparisonSpec::new(ComparisonStyle::VectorArgmax, 100.0).expect("k > 1");
    let report = exact_misleading_probability(&model, &truth, 1, &spec, &options).expect("exact");
    assert_eq!(
        report.probability, 1.0,
        "ACCEPTANCE C05 FAIL: vector-argmax misleading probability must be exactly 1"
    );

    let nuisance = NuisanceSpec::drop(model.space(), &["mu"]).expect("mu exists");
    for k in [1.000001, 1.5, 2.0, 8.0, 32.0, 100.0, 1e6] {
        let spec = ComparisonSpec::new(ComparisonStyle::InterestDerived, k)
            .expect("k > 1")
            .with_nuisance(nuisance.clone())
            .with_statistic(distinct_count_statistic());
        let report =
            exact_misleading_probability(&model, &truth, 1, &spec, &options).expect("exact");
        assert_eq!(
            report.probability, 0.0,
            "ACCEPTANCE C05 FAIL: interest-derived misleading probability must be 0 for k={k}"
        );
    }

    pass("C05", "birnbaum true (0,100), n=1: vector-argmax misleading probability 1.0 exactly; interest-derived 0.0 for every k > 1");
}

#[test]
fn c06_marginal_one_profile_hundred() {
    let model = birnbaum_model(&BirnbaumConfig::default()).expect("builds");
    let f = likelihood(&model, &Value::Int(17)).expect("observable");
    let spec = NuisanceSpec::drop(model.space(), &["mu"]).expect("mu exists");
    let sigma0 = |g: &evidence_core::LikelihoodFunction| {
        let p = g.space().point(&[("sigma", Value::Int(0))]).expect("sigma space");
        let q = g.space().point(&[("sigma", Value::Int(100))]).expect("sigma space");
        likelihood_ratio(g, &p, &q).expect("defined").ratio
    };

    let marginal = marginalize(&f, &spec).expect("marginalizes");
    let m = sigma0(&marginal);
    assert!(
        (m - 1.0).abs() <= 1e-12,
        "ACCEPTANCE C06 FAIL: marginal LR(σ=0:σ=100) = {m}, not within 1e-12 of 1"
    );

    let profiled = profile(&f, &spec).expect("profiles");
    let p = sigma0(&profiled);
    assert_eq!(
        p, 100.0,
        "ACCEPTANCE C06 FAIL: profile LR(σ=0:σ=100) should reproduce the flawed 100"
    );

    pass("C06", &format!("obs x=17: marginal-over-mu LR(σ=0:σ=100) = {m} (within 1e-12 of 1); profile-over-mu = 100 exactly"));
}

#[test]
fn c07_two_observations() {
    let model = birnbaum_model(&BirnbaumConfig::default()).expect("builds");
    let spec = NuisanceSpec::drop(model.space(), &["mu"]).expect("mu exists");

    // Equal pair: the best σ=0 location beats the best σ=100 location 10⁴:1.
    let equal = Sample::new(vec![Value::Int(17), Value::Int(17)]);
    let f = iid_likelihood(&model, &equal).expect("possible");
    let profiled = profile(&f, &spec).expect("profiles");
    let s0 = profiled.space().point(&[("sigma", Value::Int(0))]).expect("in space");
    let s100 = profiled.space().point(&[("sigma", Value::Int(100))]).expect("in space");
    let cmp = likelihood_ratio(&profiled, &s0, &s100).expect("defined");
    assert_eq!(
        cmp.ratio, 10_000.0,
        "ACCEPTANCE C07 FAIL: x1=x2 should give LR = 10^4 exactly for σ=0 at its best μ"
    );

    // Distinct pair: σ=0 cannot produce two different values at all.
    let distinct = Sample::new(vec![Value::Int(17), Value::Int(132)]);
    let g = iid_likelihood(&model, &distinct).expect("possible under σ=100");
    assert!(
        g.support().keys().all(|p| p.coord("sigma") != Some(&Value::Int(0))),
        "ACCEPTANCE C07 FAIL: x1≠x2 must leave σ=0 with zero likelihood everywhere"
    );
    let gp = profile(&g, &spec).expect("profiles");
    let cmp = likelihood_ratio(
        &gp,
        &gp.space().point(&[("sigma", Value::Int(0))]).expect("in space"),
        &gp.space().point(&[("sigma", Value::Int(100))]).expect("in space"),
    )
    .expect("defined");
    assert_eq!(cmp.ratio, 0.0, "ACCEPTANCE C07 FAIL: σ=0 likelihood should be identically 0");

    // Exact P(x1 = x2 | σ=100) by full pair enumeration (199² terms), checked
    // against the independently derived statistic model.
    let mu = point(&model, &[("mu", Value::Int(0)), ("sigma", Value::Int(100))]);
    let mut census = 0.0_f64;
    let mut terms = 0u32;
    for x1 in -99..=99_i64 {
        for x2 in -99..=99_i64 {
            let p1 = model.prob(&mu, &Value::Int(x1)).expect("in space");
            let p2 = model.prob(&mu, &Value::Int(x2)).expect("in space");
            terms += 1;
            if x1 == x2 {
                census += p1 * p2;
            }
        }
    }
    assert_eq!(terms, 199 * 199, "ACCEPTANCE C07 FAIL: enumeration should cover 199² pairs");

    let derived = derived_statistic_model(&model, &distinct_count_statistic(), 2, &spec, &DerivedOptions::default())
        .expect("exact derivation");
    let sigma100 = derived.model.space().point(&[("sigma", Value::Int(100))]).expect("in space");
    let via_derived = derived.model.prob(&sigma100, &Value::label("1")).expect("in space");
    assert!(
        (census - via_derived).abs() <= 1e-12,
        "ACCEPTANCE C07 FAIL: pair census {census} disagrees with derived model {via_derived}"
    );
    assert!(
        (census - 0.006667).abs() <= 1e-9,
        "ACCEPTANCE C07 FAIL: P(x1=x2|σ=100) should be 0.0066670 (= 666700/10⁸), got {census}"
    );

    pass(
        "C07",
        &format!(
            "x1=x2 → LR = 10^4 exactly; x1≠x2 → σ=0 likelihood ≡ 0; exact P(x1=x2|σ=100) = {census} \
             by 199² -term enumeration (the often-claimed bound \"< 10⁻⁴\" does not hold; acceptance \
             is on the enumeration value)"
        ),
    );
}

#[test]
fn c08_cross_model_ratio_is_refused() {
    // Library: the two functions live on different spaces.
    let binomial = binomial_model(3, &[0.5, 0.9]).expect("builds");
    let sure = sure_thing_model("HTH").expect("builds");
    let f = likelihood(&binomial, &Value::Int(2)).expect("observable");
    let g = likelihood(&sure, &Value::label("HTH")).expect("observable");
    assert!(
        !comparable(&f, &g),
        "ACCEPTANCE C08 FAIL: binomial and sure-thing functions must not be comparable"
    );

    // CLI: the same comparison exits 4 with the CrossModelComparison diagnostic.
    let out = run(&[
        "ratio", "--builtin", "binomial", "--binomial-n", "3", "--p-grid", "0.5,0.9",
        "--obs", "2", "--a", "p=0.9",
        "--b-builtin", "sure-thing", "--sequence", "HTH", "--b-obs", "HTH", "--b", "sequence=HTH",
    ]);
    assert_eq!(exit_code(&out), 4, "ACCEPTANCE C08 FAIL: expected exit 4");
    assert!(
        stderr(&out).contains("cross-model-comparison"),
        "ACCEPTANCE C08 FAIL: diagnostic was {}",
        stderr(&out)
    );

    pass("C08", "binomial-point vs sure-thing-point ratio refused: not comparable in-library, exit 4 cross-model-comparison in the CLI");
}

// ---------------------------------------------------------------------------
// C09: property suites

fn builtin_fleet() -> Vec<DiscreteModel> {
    vec![
        rain_model(),
        urn1_model(),
        urn2_model(&UrnComposition::standard()).expect("builds"),
        birnbaum_known_mu_model(17),
        binomial_model(4, &[0.3, 0.5, 0.9]).expect("builds"),
        sure_thing_model("HTH").expect("builds"),
    ]
}

/// A random fully-tabulated document whose rows are exactly normalized
/// (rational rows) or normalized to within f64 rounding (decimal rows).
fn fuzz_document(rng: &mut ChaCha12Rng, index: usize) -> ModelDocument {
    let dim_count = rng.gen_range(1..=2);
    let params: Vec<ParamDecl> = (0..dim_count)
        .map(|d| ParamDecl {
            name: format!("d{d}"),
            values: (0..rng.gen_range(2..=4))
                .map(|v| Value::label(format!("v{v}")))
                .collect(),
        })
        .collect();
    let outcomes: Vec<Value> = (0..rng.gen_range(2..=5))
        .map(|o| Value::label(format!("o{o}")))
        .collect();

    let mut combos: Vec<Vec<Value>> = vec![vec![]];
    for param in &params {
        combos = combos
            .iter()
            .flat_map(|prefix| {
                param.values.iter().map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v.clone());
                    next
                })
            })
            .collect();
    }

    let rows = combos
        .into_iter()
        .map(|coords| {
            let probs = if rng.gen_bool(0.5) {
                let weights: Vec<u64> = (0..outcomes.len()).map(|_| rng.gen_range(1..=1000)).collect();
                let den: u64 = weights.iter().sum();
                weights
                    .into_iter()
                    .map(|num| ProbabilityLiteral::Rational { num, den })
                    .collect()
            } else {
                let weights: Vec<f64> = (0..outcomes.len()).map(|_| rng.gen_range(0.01..1.0)).collect();
                let total: f64 = weights.iter().sum();
                weights
                    .into_iter()
                    .map(|w| ProbabilityLiteral::Decimal(w / total))
                    .collect()
            };
            RowDecl { coords, probs }
        })
        .collect();

    ModelDocument { name: format!("fuzz-{index}"), params, outcomes, rows }
}

#[test]
fn c09_property_suites() {
    let started = Instant::now();

    // Normalization for every builtin: each parameter point's outcome
    // probabilities sum to 1 within 1e-9.
    for model in builtin_fleet() {
        for p in model.space().points() {
            let total: f64 = model.outcomes().iter().map(|o| model.prob(&p, &o).expect("in space")).sum();
            assert!(
                (total - 1.0).abs() <= 1e-9,
                "ACCEPTANCE C09 FAIL: {} row {} sums to {total}",
                model.name(),
                p.display_coords()
            );
        }
    }
    // The rule-backed location family cannot enumerate its outcome interval;
    // sum each tested location's window instead and pin zero mass outside it.
    let birnbaum = birnbaum_model(&BirnbaumConfig::default()).expect("builds");
    let config = BirnbaumConfig::default();
    let (obs_lo, obs_hi) = (config.mu_lo - 99, config.mu_hi + 99);
    for mu in [config.mu_lo, -40, 0, 17, config.mu_hi] {
        for sigma in [0_i64, 100] {
            let p = point(&birnbaum, &[("mu", Value::Int(mu)), ("sigma", Value::Int(sigma))]);
            let total: f64 = ((mu - 150).max(obs_lo)..=(mu + 150).min(obs_hi))
                .map(|x| birnbaum.prob(&p, &Value::Int(x)).expect("in space"))
                .sum();
            assert!(
                (total - 1.0).abs() <= 1e-9,
                "ACCEPTANCE C09 FAIL: birnbaum ({mu},{sigma}) window mass {total}"
            );
            for x in [mu - 150, mu - 100, mu + 100, mu + 150] {
                if !(obs_lo..=obs_hi).contains(&x) {
                    continue;
                }
                assert_eq!(
                    birnbaum.prob(&p, &Value::Int(x)).expect("in space"),
                    0.0,
                    "ACCEPTANCE C09 FAIL: birnbaum mass outside the window at x={x}"
                );
            }
        }
    }

    // Normalization for 100 fuzzed parsed models, plus scale and permutation
    // invariance on each.
    let mut rng = ChaCha12Rng::seed_from_u64(0xC09);
    for index in 0..100 {
        let doc = fuzz_document(&mut rng, index);
        let text = modelspec::serialize(&doc);
        let parsed = modelspec::parse(&text)
            .unwrap_or_else(|e| panic!("ACCEPTANCE C09 FAIL: fuzz model {index} unparseable: {e}"));
        let model = parsed.document.to_model()
            .unwrap_or_else(|e| panic!("ACCEPTANCE C09 FAIL: fuzz model {index} invalid: {e}"));
        for p in model.space().points() {
            let total: f64 = model.outcomes().iter().map(|o| model.prob(&p, &o).expect("in space")).sum();
            assert!(
                (total - 1.0).abs() <= 1e-9,
                "ACCEPTANCE C09 FAIL: fuzz model {index} row {} sums to {total}",
                p.display_coords()
            );
        }

        // Scale invariance: a positively rescaled function gives identical
        // ratios and the identical argmax set.
        let obs = doc.outcomes[0].clone();
        if let Ok(f) = likelihood(&model, &obs) {
            // Dyadic factors scale exactly in binary floating point, so the
            // invariance can be asserted bit-for-bit rather than within a
            // tolerance.
            let gamma = [0.125, 0.5, 4.0, 64.0][index % 4];
            let scaled = f.scaled(gamma);
            let points: Vec<ParameterPoint> = model.space().points().collect();
            for pair in points.windows(2) {
                let lhs = likelihood_ratio(&f, &pair[0], &pair[1]);
                let rhs = likelihood_ratio(&scaled, &pair[0], &pair[1]);
                match (lhs, rhs) {
                    (Ok(a), Ok(b)) => assert_eq!(
                        a.ratio, b.ratio,
                        "ACCEPTANCE C09 FAIL: scale changed a ratio in fuzz model {index}"
                    ),
                    (Err(_), Err(_)) => {}
                    _ => panic!("ACCEPTANCE C09 FAIL: scale changed definedness in fuzz model {index}"),
                }
            }
            assert_eq!(
                max_likelihood_points(&f),
                max_likelihood_points(&scaled),
                "ACCEPTANCE C09 FAIL: scale changed the argmax set in fuzz model {index}"
            );
        }

        // Permutation invariance of iid likelihood, bit for bit.
        let outcome_pool: Vec<Value> = doc.outcomes.clone();
        let mut draws: Vec<Value> = (0..4)
            .map(|_| outcome_pool[rng.gen_range(0..outcome_pool.len())].clone())
            .collect();
        let forward = iid_likelihood(&model, &Sample::new(draws.clone()));
        draws.reverse();
        let swapped = {
            let mut d = draws.clone();
            d.swap(0, 1);
            d
        };
        let reversed = iid_likelihood(&model, &Sample::new(draws));
        let shuffled = iid_likelihood(&model, &Sample::new(swapped));
        match (&forward, &reversed, &shuffled) {
            (Ok(a), Ok(b), Ok(c)) => {
                for p in model.space().points() {
                    let va = a.value(&p).expect("in space");
                    assert_eq!(va, b.value(&p).expect("in space"), "ACCEPTANCE C09 FAIL: permutation changed fuzz model {index}");
                    assert_eq!(va, c.value(&p).expect("in space"), "ACCEPTANCE C09 FAIL: permutation changed fuzz model {index}");
                }
            }
            (Err(_), Err(_), Err(_)) => {}
            _ => panic!("ACCEPTANCE C09 FAIL: permutation changed possibility in fuzz model {index}"),
        }
    }

    // Parse/serialize round-trip on a 50-file corpus: the canonical form is a
    // fixed point of parse → serialize.
    let dir = tempfile::tempdir().expect("tempdir");
    let mut corpus_rng = ChaCha12Rng::seed_from_u64(0xF11E5);
    for index in 0..50 {
        let doc = fuzz_document(&mut corpus_rng, 1_000 + index);
        let path = dir.path().join(format!("model_{index}.lmod"));
        std::fs::write(&path, modelspec::serialize(&doc)).expect("write corpus file");
    }
    for index in 0..50 {
        let path = dir.path().join(format!("model_{index}.lmod"));
        let text = std::fs::read_to_string(&path).expect("read corpus file");
        let parsed = modelspec::parse(&text).expect("corpus parses");
        let again = modelspec::serialize(&parsed.document);
        assert_eq!(
            again, text,
            "ACCEPTANCE C09 FAIL: round-trip changed corpus file {index}"
        );
    }

    // Monte Carlo within 5 standard errors of exact enumeration on ten
    // configurations at 10⁵ trials.
    let urn1 = urn1_model();
    let urn2 = urn2_model(&UrnComposition::standard()).expect("builds");
    let known = birnbaum_known_mu_model(17);
    let binom_a = binomial_model(4, &[0.3, 0.7]).expect("builds");
    let binom_b = binomial_model(4, &[0.5, 0.9]).expect("builds");
    let birnbaum_pair = |m: &DiscreteModel| ComparisonStyle::FixedPair {
        a: point(m, &[("sigma", Value::Int(0))]),
        b: point(m, &[("sigma", Value::Int(100))]),
    };
    let urn_pair = |m: &DiscreteModel| ComparisonStyle::FixedPair {
        a: point(m, &[("nu_c", Value::Int(1))]),
        b: point(m, &[("nu_c", Value::Int(201))]),
    };
    let shared_mu = urn2.space().dimensions()[0].values();
    let first_label = match shared_mu {
        evidence_core::DimensionValues::Listed(values) => values[0].clone(),
        _ => panic!("urn2 mu dimension is listed"),
    };

    struct McConfig {
        name: &'static str,
        model: DiscreteModel,
        truth: ParameterPoint,
        spec: ComparisonSpec,
        n: usize,
    }
    let mu_nuisance = |m: &DiscreteModel| NuisanceSpec::drop(m.space(), &["mu"]).expect("mu exists");
    let configs = vec![
        McConfig {
            name: "urn1 pair n=2",
            truth: point(&urn1, &[("nu_c", Value::Int(201))]),
            spec: ComparisonSpec::new(urn_pair(&urn1), 10.0).expect("k > 1"),
            model: urn1.clone(),
            n: 2,
        },
        McConfig {
            name: "urn1 pair n=3",
            truth: point(&urn1, &[("nu_c", Value::Int(201))]),
            spec: ComparisonSpec::new(urn_pair(&urn1), 10.0).expect("k > 1"),
            model: urn1.clone(),
            n: 3,
        },
        McConfig {
            // The pair orientation is favored-over-true, so with the certain
            // composition true the spread one is the favored rival.
            name: "urn1 true certain",
            truth: point(&urn1, &[("nu_c", Value::Int(1))]),
            spec: ComparisonSpec::new(
                ComparisonStyle::FixedPair {
                    a: point(&urn1, &[("nu_c", Value::Int(201))]),
                    b: point(&urn1, &[("nu_c", Value::Int(1))]),
                },
                10.0,
            )
            .expect("k > 1"),
            model: urn1.clone(),
            n: 2,
        },
        McConfig {
            name: "known-mu pair n=1",
            truth: point(&known, &[("sigma", Value::Int(100))]),
            spec: ComparisonSpec::new(birnbaum_pair(&known), 10.0).expect("k > 1"),
            model: known.clone(),
            n: 1,
        },
        McConfig {
            name: "known-mu pair n=3",
            truth: point(&known, &[("sigma", Value::Int(100))]),
            spec: ComparisonSpec::new(birnbaum_pair(&known), 2.0).expect("k > 1"),
            model: known.clone(),
            n: 3,
        },
        McConfig {
            name: "binomial argmax n=2",
            truth: point(&binom_a, &[("p", Value::Real(0.3))]),
            spec: ComparisonSpec::new(ComparisonStyle::VectorArgmax, 5.0).expect("k > 1"),
            model: binom_a.clone(),
            n: 2,
        },
        McConfig {
            name: "binomial argmax n=3",
            truth: point(&binom_b, &[("p", Value::Real(0.9))]),
            spec: ComparisonSpec::new(ComparisonStyle::VectorArgmax, 3.0).expect("k > 1"),
            model: binom_b.clone(),
            n: 3,
        },
        McConfig {
            name: "birnbaum marginal n=1",
            truth: point(&birnbaum, &[("mu", Value::Int(0)), ("sigma", Value::Int(100))]),
            spec: ComparisonSpec::new(ComparisonStyle::InterestMarginal, 100.0)
                .expect("k > 1")
                .with_nuisance(mu_nuisance(&birnbaum)),
            model: birnbaum.clone(),
            n: 1,
        },
        McConfig {
            name: "birnbaum derived n=2",
            truth: point(&birnbaum, &[("mu", Value::Int(0)), ("sigma", Value::Int(100))]),
            spec: ComparisonSpec::new(ComparisonStyle::InterestDerived, 2.0)
                .expect("k > 1")
                .with_nuisance(mu_nuisance(&birnbaum))
                .with_statistic(distinct_count_statistic()),
            model: birnbaum.clone(),
            n: 2,
        },
        McConfig {
            name: "urn2 derived n=2",
            truth: point(&urn2, &[("mu", first_label), ("nu_c", Value::Int(201))]),
            spec: ComparisonSpec::new(ComparisonStyle::InterestDerived, 5.0)
                .expect("k > 1")
                .with_nuisance(mu_nuisance(&urn2))
                .with_statistic(distinct_count_statistic()),
            model: urn2.clone(),
            n: 2,
        },
    ];
    assert_eq!(configs.len(), 10, "ACCEPTANCE C09 FAIL: ten configurations required");

    let options = MisleadingOptions::default();
    let mc_started = Instant::now();
    for (index, config) in configs.iter().enumerate() {
        let exact = exact_misleading_probability(&config.model, &config.truth, config.n, &config.spec, &options)
            .unwrap_or_else(|e| panic!("ACCEPTANCE C09 FAIL: exact path for {} errored: {e}", config.name));
        let mc = monte_carlo_misleading(
            &config.model, &config.truth, config.n, &config.spec,
            100_000, 0xC09_0 + index as u64, &options,
        )
        .unwrap_or_else(|e| panic!("ACCEPTANCE C09 FAIL: MC path for {} errored: {e}", config.name));
        assert!(
            matches!(mc.method, MisleadingMethod::MonteCarlo { .. }),
            "ACCEPTANCE C09 FAIL: MC report lacks a Monte Carlo method record"
        );
        // The yardstick is the standard error of a binomial estimate at the
        // exact probability; when that is 0 the estimator must agree exactly.
        let p = exact.probability;
        let se = (p * (1.0 - p) / 100_000.0).sqrt();
        let diff = (mc.probability - p).abs();
        if se == 0.0 {
            assert_eq!(
                mc.probability, p,
                "ACCEPTANCE C09 FAIL: {} degenerate stream disagrees with exact", config.name
            );
        } else {
            assert!(
                diff <= 5.0 * se,
                "ACCEPTANCE C09 FAIL: {} MC {} vs exact {p} differs by {diff} > 5·SE ({se})",
                config.name, mc.probability
            );
        }
    }
    let mc_elapsed = mc_started.elapsed();
    assert!(
        mc_elapsed.as_secs_f64() <= 10.0,
        "ACCEPTANCE C09 FAIL: ten MC configurations took {mc_elapsed:?} (> 10 s)"
    );

    pass(
        "C09",
        &format!(
            "normalization ≤ 1e-9 for builtins and 100 fuzzed parsed models; ratios and argmax \
             scale-invariant; iid likelihood permutation-invariant bit-for-bit; 50-file corpus \
             round-trips byte-identically; 10 MC configurations within 5 SE of exact at 10⁵ trials \
             in {:.2} s (total suite {:.2} s)",
            mc_elapsed.as_secs_f64(),
            started.elapsed().as_secs_f64()
        ),
    );
}

#[test]
fn c10_determinism() {
    // Library sampling: same seed, same draws.
    let model = birnbaum_model(&BirnbaumConfig::default()).expect("builds");
    let truth = point(&model, &[("mu", Value::Int(0)), ("sigma", Value::Int(100))]);
    let first = sample(&model, &truth, 1_000, 42).expect("samples");
    let second = sample(&model, &truth, 1_000, 42).expect("samples");
    assert_eq!(
        first.observations(),
        second.observations(),
        "ACCEPTANCE C10 FAIL: library sampling is not reproducible"
    );

    // Library Monte Carlo: bit-identical probability and standard error.
    let spec = ComparisonSpec::new(ComparisonStyle::VectorArgmax, 100.0).expect("k > 1");
    let options = MisleadingOptions::default();
    let a = monte_carlo_misleading(&model, &truth, 1, &spec, 50_000, 9, &options).expect("runs");
    let b = monte_carlo_misleading(&model, &truth, 1, &spec, 50_000, 9, &options).expect("runs");
    assert_eq!(a.probability.to_bits(), b.probability.to_bits(), "ACCEPTANCE C10 FAIL: MC probability drifted");

    // CLI: byte-identical stdout across runs and across thread counts.
    let args = [
        "misleading", "mc", "--builtin", "birnbaum", "--true", "mu=0,sigma=100",
        "--style", "vector-argmax", "--k", "100", "--n", "1",
        "--trials", "50000", "--seed", "9", "--format", "json",
    ];
    let run_a = run(&args);
    let run_b = run(&args);
    assert_eq!(exit_code(&run_a), 0, "ACCEPTANCE C10 FAIL: {}", stderr(&run_a));
    assert_eq!(run_a.stdout, run_b.stdout, "ACCEPTANCE C10 FAIL: repeated runs differ");
    let threads_one = run_env(&args, &[("LIKELIHOOD_EVIDENCE_THREADS", "1")]);
    let threads_four = run_env(&args, &[("LIKELIHOOD_EVIDENCE_THREADS", "4")]);
    assert_eq!(
        threads_one.stdout, threads_four.stdout,
        "ACCEPTANCE C10 FAIL: thread count changed the output"
    );
    assert_eq!(
        run_a.stdout, threads_one.stdout,
        "ACCEPTANCE C10 FAIL: capped pool changed the output"
    );

    pass("C10", "sampling and Monte Carlo byte-identical across runs and across thread counts for a fixed seed");
}
