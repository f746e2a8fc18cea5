//! Property tests for the algebra of likelihood functions: the invariants
//! that make evidence ratios meaningful at all (scale freedom, permutation
//! freedom, transitivity) plus structural guarantees of the model builders
//! and the text format.

use proptest::prelude::*;

use evidence_core::modelspec::{parse, serialize, ModelDocument};
use evidence_core::{
    classify, comparable, iid_likelihood, likelihood, likelihood_ratio, proportional_equivalent,
    Classification, DiscreteModel, Dimension, EvidenceError, OutcomeSpace, ParameterSpace, Sample,
    Value,
};

/// A generated model: 1–3 dimensions of 1–4 values each, 2–5 outcomes, rows
/// normalized from arbitrary non-negative weights (zeros allowed, at least
/// one positive weight per row).
fn arb_model() -> impl Strategy<Value = DiscreteModel> {
    let dims = prop::collection::vec(1usize..=4, 1..=3);
    (dims, 2usize..=5).prop_flat_map(|(dim_sizes, n_outcomes)| {
        let n_rows: usize = dim_sizes.iter().product();
        let row = prop::collection::vec(
            prop_oneof![2 => Just(0.0f64), 5 => 0.01f64..1.0],
            n_outcomes,
        )
        .prop_filter("a row needs some mass", |w| w.iter().sum::<f64>() > 0.0);
        prop::collection::vec(row, n_rows).prop_map(move |raw_rows| {
            let dims: Vec<Dimension> = dim_sizes
                .iter()
                .enumerate()
                .map(|(d, &len)| {
                    Dimension::listed(
                        format!("d{d}"),
                        (0..len).map(|v| Value::label(format!("v{v}"))).collect(),
                    )
                })
                .collect();
            let space = ParameterSpace::new(dims).expect("generated dimensions are valid");
            let outcomes: Vec<Value> =
                (0..n_outcomes).map(|o| Value::label(format!("o{o}"))).collect();
            let rows: Vec<Vec<f64>> = raw_rows
                .iter()
                .map(|w| {
                    let total: f64 = w.iter().sum();
                    w.iter().map(|x| x / total).collect()
                })
                .collect();
            DiscreteModel::from_table(
                "generated",
                space,
                OutcomeSpace::Enumerated(outcomes),
                rows,
            )
            .expect("normalized rows pass validation")
        })
    })
}

/// A model plus an outcome index to observe.
fn arb_model_and_outcome() -> impl Strategy<Value = (DiscreteModel, Value)> {
    (arb_model(), 0usize..5).prop_map(|(model, pick)| {
        let outcomes: Vec<Value> = model.outcomes().iter().collect();
        let outcome = outcomes[pick % outcomes.len()].clone();
        (model, outcome)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// Every support entry of a likelihood function is exactly the model
    /// probability of the observation at that point, and off-support points
    /// report zero.
    #[test]
    fn likelihood_matches_model_probabilities((model, outcome) in arb_model_and_outcome()) {
        match likelihood(&model, &outcome) {
            Err(EvidenceError::ImpossibleObservation) => {
                for point in model.space().points() {
                    prop_assert_eq!(model.prob(&point, &outcome).unwrap(), 0.0);
                }
            }
            Ok(f) => {
                for point in model.space().points() {
                    let expected = model.prob(&point, &outcome).unwrap();
                    prop_assert_eq!(f.value(&point).unwrap().to_bits(), expected.to_bits());
                }
            }
            Err(other) => prop_assert!(false, "unexpected error {other}"),
        }
    }

    /// Rescaling a likelihood function by a power of two changes no evidence
    /// ratio by even one bit, and the rescaled function stays comparable.
    #[test]
    fn dyadic_rescaling_preserves_every_ratio(
        (model, outcome) in arb_model_and_outcome(),
        exponent in -20i32..=20,
        pick_a in 0usize..64,
        pick_b in 0usize..64,
    ) {
        let Ok(f) = likelihood(&model, &outcome) else { return Ok(()); };
        let gamma = 2.0f64.powi(exponent);
        let scaled = f.scaled(gamma);
        prop_assert!(comparable(&f, &scaled));
        prop_assert!(proportional_equivalent(&f, &scaled, 1e-9).unwrap());

        let points: Vec<_> = model.space().points().collect();
        let a = &points[pick_a % points.len()];
        let b = &points[pick_b % points.len()];
        match (likelihood_ratio(&f, a, b), likelihood_ratio(&scaled, a, b)) {
            (Ok(plain), Ok(scaled)) => {
                prop_assert_eq!(plain.ratio.to_bits(), scaled.ratio.to_bits());
                prop_assert_eq!(plain.classification, scaled.classification);
            }
            (Err(EvidenceError::UndefinedRatio { .. }), Err(EvidenceError::UndefinedRatio { .. })) => {}
            (x, y) => prop_assert!(false, "divergent outcomes {x:?} vs {y:?}"),
        }
    }

    /// The likelihood of an iid sample does not depend on observation order:
    /// rotating the sample yields bit-identical support values.
    #[test]
    fn sample_order_is_evidentially_irrelevant(
        (model, outcome) in arb_model_and_outcome(),
        extra in 0usize..5,
        rotation in 0usize..7,
    ) {
        let outcomes: Vec<Value> = model.outcomes().iter().collect();
        let mut draws = vec![outcome];
        for i in 0..extra {
            draws.push(outcomes[(i * 2 + 1) % outcomes.len()].clone());
        }
        let mut rotated = draws.clone();
        rotated.rotate_left(rotation % draws.len());

        let original = iid_likelihood(&model, &Sample::new(draws));
        let shuffled = iid_likelihood(&model, &Sample::new(rotated));
        match (original, shuffled) {
            (Ok(f), Ok(g)) => {
                prop_assert_eq!(f.support().len(), g.support().len());
                for (point, value) in f.support() {
                    prop_assert_eq!(value.to_bits(), g.value(point).unwrap().to_bits());
                }
            }
            (Err(EvidenceError::ImpossibleObservation), Err(EvidenceError::ImpossibleObservation)) => {}
            (x, y) => prop_assert!(false, "divergent outcomes {x:?} vs {y:?}"),
        }
    }

    /// Evidence ratios multiply along chains: L(a)/L(c) equals
    /// (L(a)/L(b))·(L(b)/L(c)) to within 1e-12 relative error whenever all
    /// three are finite and positive.
    #[test]
    fn ratios_are_transitive(
        (model, outcome) in arb_model_and_outcome(),
        picks in [0usize..64, 0usize..64, 0usize..64],
    ) {
        let Ok(f) = likelihood(&model, &outcome) else { return Ok(()); };
        let points: Vec<_> = model.space().points().collect();
        let a = &points[picks[0] % points.len()];
        let b = &points[picks[1] % points.len()];
        let c = &points[picks[2] % points.len()];
        let (va, vb, vc) = (
            f.value(a).unwrap(),
            f.value(b).unwrap(),
            f.value(c).unwrap(),
        );
        prop_assume!(va > 0.0 && vb > 0.0 && vc > 0.0);
        let direct = likelihood_ratio(&f, a, c).unwrap().ratio;
        let chained =
            likelihood_ratio(&f, a, b).unwrap().ratio * likelihood_ratio(&f, b, c).unwrap().ratio;
        prop_assert!(
            (direct - chained).abs() <= 1e-12 * direct.abs(),
            "direct {direct} vs chained {chained}"
        );
    }

    /// Swapping the roles of the two compared points inverts the ratio and
    /// mirrors the classification.
    #[test]
    fn reversed_comparisons_mirror(
        (model, outcome) in arb_model_and_outcome(),
        pick_a in 0usize..64,
        pick_b in 0usize..64,
    ) {
        let Ok(f) = likelihood(&model, &outcome) else { return Ok(()); };
        let points: Vec<_> = model.space().points().collect();
        let a = &points[pick_a % points.len()];
        let b = &points[pick_b % points.len()];
        let Ok(fwd) = likelihood_ratio(&f, a, b) else { return Ok(()); };
        let rev = likelihood_ratio(&f, b, a).unwrap();
        let mirrored = match fwd.classification {
            Classification::FavorsA => Classification::FavorsB,
            Classification::FavorsB => Classification::FavorsA,
            Classification::ConclusiveA => Classification::ConclusiveB,
            Classification::ConclusiveB => Classification::ConclusiveA,
            Classification::Neutral => Classification::Neutral,
        };
        prop_assert_eq!(rev.classification, mirrored);
        if fwd.ratio > 0.0 && fwd.ratio.is_finite() {
            prop_assert!(
                (rev.ratio * fwd.ratio - 1.0).abs() <= 1e-12,
                "product {} not 1",
                rev.ratio * fwd.ratio
            );
        }
        prop_assert_eq!(classify(fwd.ratio), fwd.classification);
    }

    /// A model survives the trip through the text format with bit-identical
    /// probabilities, and the canonical serialization is a fixpoint.
    #[test]
    fn text_format_round_trip(model in arb_model()) {
        let doc = ModelDocument::from_model(&model).unwrap();
        let text = serialize(&doc);
        let parsed = parse(&text).expect("canonical text parses cleanly");
        prop_assert!(parsed.warnings.is_empty());
        prop_assert_eq!(serialize(&parsed.document), text.clone());

        let rebuilt = parsed.document.to_model().unwrap();
        let outcomes: Vec<Value> = model.outcomes().iter().collect();
        for (point, rebuilt_point) in model.space().points().zip(rebuilt.space().points()) {
            for outcome in &outcomes {
                prop_assert_eq!(
                    model.prob(&point, outcome).unwrap().to_bits(),
                    rebuilt.prob(&rebuilt_point, outcome).unwrap().to_bits()
                );
            }
        }
    }

    /// The parser never panics, whatever bytes it is fed.
    #[test]
    fn parser_is_total(text in "[ -~\\n\\t]{0,300}") {
        let _ = parse(&text);
    }

    /// Directive-shaped fuzz: lines that look like the format but may be
    /// arbitrarily broken still produce diagnostics, not panics.
    #[test]
    fn parser_is_total_on_directive_soup(
        lines in prop::collection::vec(
            prop_oneof![
                Just("model m".to_string()),
                Just("param p : a b".to_string()),
                Just("outcome : x y".to_string()),
                "row [a-b ]{0,6}: [0-9/. ]{0,12}",
                "[a-z\"#: ]{0,20}",
            ],
            0..12,
        )
    ) {
        let _ = parse(&lines.join("\n"));
    }
}
