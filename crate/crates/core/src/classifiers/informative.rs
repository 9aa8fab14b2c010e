use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::NaiveBayesModel;
use crate::error::{Error, Result};
use crate::features::{FeatureKind, FeatureValue};
use crate::scalar::Scalar;

/// One row of the "most informative features" ranking of a Naive Bayes model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InformativeFeature<F: Scalar> {
    pub feature: String,
    pub value: FeatureValue,
    pub kind: FeatureKind,
    pub most_likely: String,
    pub least_likely: String,
    /// `P(value | most_likely) / P(value | least_likely)`, always ≥ 1.
    pub ratio: F,
}

impl<F: Scalar> InformativeFeature<F> {
    /// `contains(w)` for word indicators, `name = value` otherwise.
    pub fn display_name(&self) -> String {
        match self.kind {
            FeatureKind::Boolean => self.feature.clone(),
            FeatureKind::Nominal => format!("{} = {}", self.feature, self.value),
        }
    }
}

impl<F: Scalar> fmt::Display for InformativeFeature<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}  {} : {}  {:.1} : 1.0",
            self.display_name(),
            self.most_likely,
            self.least_likely,
            self.ratio
        )
    }
}

/// Ranks every `(feature, value)` pair seen in training by the spread of its
/// smoothed conditional probability across labels. Word indicators are only
/// reported for `true`.
pub fn informative_features<F: Scalar>(
    model: &NaiveBayesModel<F>,
    top_n: usize,
) -> Result<Vec<InformativeFeature<F>>> {
    let labels = model.labels();
    if labels.len() < 2 {
        return Err(Error::TooFewLabels(labels.len()));
    }
    let mut rows = Vec::new();
    for (fi, feature) in model.schema().features().iter().enumerate() {
        let table = &model.tables()[fi];
        for (vi, &value) in feature.values.iter().enumerate() {
            if feature.kind == FeatureKind::Boolean && value != FeatureValue::Bool(true) {
                continue;
            }
            if table.counts.iter().all(|row| row[vi] == 0) {
                continue;
            }
            let probs: Vec<F> = table.probs.iter().map(|row| row[vi]).collect();
            let most = super::argmax_first(&probs);
            let least = (0..probs.len())
                .filter(|&l| l != most)
                .fold(None::<usize>, |best, l| match best {
                    Some(b) if probs[b] <= probs[l] => Some(b),
                    _ => Some(l),
                })
                .unwrap();
            rows.push(InformativeFeature {
                feature: feature.name.clone(),
                value,
                kind: feature.kind,
                most_likely: labels[most].clone(),
                least_likely: labels[least].clone(),
                ratio: probs[most] / probs[least],
            });
        }
    }
    rows.sort_by(|a, b| {
        b.ratio
            .partial_cmp(&a.ratio)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.feature.cmp(&b.feature))
            .then_with(|| a.value.cmp(&b.value))
    });
    rows.truncate(top_n);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifiers::{train_naive_bayes, Example};
    use crate::corpus::UserProfile;
    use crate::features::{Bin, FeatureMode, FeatureSchema, Vocabulary};

    fn model(rows: &[(u64, &str, &str)]) -> NaiveBayesModel<f64> {
        let profiles: Vec<UserProfile> = rows
            .iter()
            .map(|(f, d, _)| UserProfile::new(*f, 10, 10, *d))
            .collect();
        let vocab = Vocabulary::from_words(["music", "news"]).unwrap();
        let (schema, fvs) = FeatureSchema::fit(FeatureMode::Full, Some(vocab), &profiles).unwrap();
        let ex: Vec<Example> = fvs
            .into_iter()
            .zip(rows.iter().map(|r| r.2.to_string()))
            .collect();
        train_naive_bayes(&schema, &ex, 0.5).unwrap()
    }

    #[test]
    fn row_format() {
        let row = InformativeFeature {
            feature: "contains(music)".into(),
            value: FeatureValue::Bool(true),
            kind: FeatureKind::Boolean,
            most_likely: "m".into(),
            least_likely: "p".into(),
            ratio: 23.4f64,
        };
        assert_eq!(row.to_string(), "contains(music)  m : p  23.4 : 1.0");
        let row = InformativeFeature {
            feature: "followers".into(),
            value: FeatureValue::Bin(Bin::Int(6)),
            kind: FeatureKind::Nominal,
            most_likely: "c".into(),
            least_likely: "u".into(),
            ratio: 34.1f64,
        };
        assert_eq!(row.to_string(), "followers = 6  c : u  34.1 : 1.0");
    }

    #[test]
    fn planted_word_ranks_first() {
        let m = model(&[
            (100, "music", "m"),
            (100, "music", "m"),
            (100, "music news", "m"),
            (100, "", "p"),
            (100, "news", "p"),
            (100, "", "p"),
        ]);
        let rows = informative_features(&m, 10).unwrap();
        assert_eq!(rows[0].feature, "contains(music)");
        assert_eq!(rows[0].most_likely, "m");
        // P(true|m) = (3+.5)/(3+1.5), P(true|p) = (0+.5)/(3+1.5)
        assert!((rows[0].ratio - 7.0).abs() < 1e-12);
        // constant features have ratio 1 and rank last
        let last = rows.last().unwrap();
        assert_eq!(last.ratio, 1.0);
        assert!(rows.windows(2).all(|w| w[0].ratio >= w[1].ratio));
        assert!(rows.iter().all(|r| r.most_likely != r.least_likely));
        assert!(informative_features(&m, 1).unwrap().len() == 1);
        assert!(informative_features(&m, 1000).unwrap().len() == rows.len());
    }

    #[test]
    fn single_label_model_is_rejected() {
        let m = model(&[(1, "music", "m"), (10, "", "m")]);
        assert!(informative_features(&m, 5).is_err());
    }
}
