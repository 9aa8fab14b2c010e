//! End-to-end runs on planted-signal corpora.

use std::collections::HashMap;

use ambient_core::classifiers::{
    informative_features, train_naive_bayes, ClassifierConfig, ClassifierKind, Example, Hyperparams,
};
use ambient_core::corpus::{
    generate_synthetic, normalize_description, CountRange, LabelSpec, LabeledDataset, SyntheticSpec,
};
use ambient_core::evaluation::{cross_validate, run_ablation, CvOptions};
use ambient_core::features::{build_vocabulary, FeatureMode, FeatureSchema};

const FILLER: [&str; 8] = [
    "love", "life", "fan", "dad", "world", "coffee", "travel", "official",
];

/// Signal only in description words; all labels share the count ranges.
fn word_signal_spec(p: f64) -> SyntheticSpec {
    SyntheticSpec::new(vec![
        LabelSpec::new("m").signal("music", p),
        LabelSpec::new("p").signal("news", p),
        LabelSpec::new("s").signal("sports", p),
    ])
    .with_filler(FILLER, CountRange::new(0, 4))
}

/// Signal only in follower counts; descriptions are shared filler.
fn count_signal_spec() -> SyntheticSpec {
    let l = |name: &str, lo: u64, hi: u64| {
        LabelSpec::new(name).counts(
            CountRange::new(lo, hi),
            CountRange::new(10, 1000),
            CountRange::new(10, 10_000),
        )
    };
    SyntheticSpec::new(vec![
        l("c", 100_000, 9_999_999),
        l("o", 1_000, 99_999),
        l("u", 1, 999),
    ])
    .with_filler(FILLER, CountRange::new(0, 4))
}

fn examples(ds: &LabeledDataset, mode: FeatureMode) -> (FeatureSchema, Vec<Example>) {
    let vocab = (mode == FeatureMode::Full).then(|| build_vocabulary(ds, 50).unwrap());
    let (schema, fvs) = FeatureSchema::fit(mode, vocab, ds.profiles()).unwrap();
    let labels = ds.labels().unwrap().into_iter().map(String::from);
    (schema, fvs.into_iter().zip(labels).collect())
}

#[test]
fn vocabulary_contains_planted_words() {
    let ds = generate_synthetic(&word_signal_spec(0.9), 300, 7).unwrap();
    let v = build_vocabulary(&ds, 50).unwrap();
    // brute-force frequencies
    let mut counts: HashMap<String, u64> = HashMap::new();
    for p in ds.profiles() {
        for t in normalize_description(&p.description) {
            *counts.entry(t).or_default() += 1;
        }
    }
    for w in ["music", "news", "sports"] {
        assert!(v.words().iter().any(|x| x == w), "{w}");
        let i = v.words().iter().position(|x| x == w).unwrap();
        assert_eq!(v.frequencies().unwrap()[i], counts[w]);
    }
}

#[test]
fn planted_word_is_most_informative() {
    // "music" appears only in label m
    let ds = generate_synthetic(&word_signal_spec(0.9), 300, 3).unwrap();
    let (schema, ex) = examples(&ds, FeatureMode::Full);
    let model = train_naive_bayes(&schema, &ex, 0.5f64).unwrap();
    let rows = informative_features(&model, 10).unwrap();
    let top3: Vec<&str> = rows[..3].iter().map(|r| r.feature.as_str()).collect();
    assert!(top3.contains(&"contains(music)"), "{top3:?}");
    let music = rows
        .iter()
        .find(|r| r.feature == "contains(music)")
        .unwrap();
    assert_eq!(music.most_likely, "m");

    // recompute the quotient from raw counts
    let with = |label: &str| {
        ds.profiles()
            .iter()
            .filter(|p| p.label.as_deref() == Some(label))
            .filter(|p| {
                normalize_description(&p.description)
                    .iter()
                    .any(|t| t == "music")
            })
            .count() as f64
    };
    let n = |label: &str| {
        ds.profiles()
            .iter()
            .filter(|p| p.label.as_deref() == Some(label))
            .count() as f64
    };
    let p_m = (with("m") + 0.5) / (n("m") + 0.5 * 3.0);
    let p_least = (with(&music.least_likely) + 0.5) / (n(&music.least_likely) + 0.5 * 3.0);
    assert!((music.ratio - p_m / p_least).abs() < 1e-9);
}

#[test]
fn numerical_signal_survives_without_words() {
    let ds = generate_synthetic(&count_signal_spec(), 400, 11).unwrap();
    let hp = Hyperparams::<f64>::default();
    let opts = CvOptions {
        seed: 11,
        ..Default::default()
    };
    for kind in [ClassifierKind::NaiveBayes, ClassifierKind::DecisionTree] {
        let config = ClassifierConfig::for_kind(kind, &hp);
        let num = cross_validate(&ds, &config, FeatureMode::Numerical, &opts).unwrap();
        let full = cross_validate(&ds, &config, FeatureMode::Full, &opts).unwrap();
        assert!(
            num.average_accuracy >= 95.0,
            "{kind}: {}",
            num.average_accuracy
        );
        assert!(
            (num.average_accuracy - full.average_accuracy).abs() <= 5.0,
            "{kind}"
        );
    }
}

#[test]
fn external_vocabulary_is_used_for_every_fold() {
    let ds = generate_synthetic(&word_signal_spec(0.9), 120, 2).unwrap();
    let vocab = ambient_core::features::Vocabulary::from_words(["music", "news"]).unwrap();
    let opts = CvOptions {
        external_vocabulary: Some(vocab),
        ..Default::default()
    };
    let config = ClassifierConfig::<f64>::NaiveBayes { alpha: 0.5 };
    let r = cross_validate(&ds, &config, FeatureMode::Full, &opts).unwrap();
    for f in &r.folds {
        assert_eq!(
            f.vocabulary.as_deref(),
            Some(&["music".to_string(), "news".to_string()][..])
        );
    }
}

#[test]
fn word_signal_ablation_prefers_full_mode() {
    let ds = generate_synthetic(&word_signal_spec(0.9), 400, 21).unwrap();
    let mut hp = Hyperparams::<f64>::default();
    hp.svm.seed = 21;
    let table = run_ablation(
        &ds,
        &hp,
        &CvOptions {
            seed: 21,
            ..Default::default()
        },
    );
    println!("{table}");
    for kind in ClassifierKind::ALL {
        let num = table.get(FeatureMode::Numerical, kind).unwrap();
        let full = table.get(FeatureMode::Full, kind).unwrap();
        assert!(full > num, "{kind}: {full} vs {num}");
    }
}
