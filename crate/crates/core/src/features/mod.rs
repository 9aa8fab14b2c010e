//! Nominal feature extraction from profiles: binned counts, binned
//! follower/following ratio and binary description-word indicators.

mod bin;
mod schema;
mod vocab;

pub use bin::{follower_ratio, log_bin, log_bin_count, log_bin_ratio, Bin};
pub use schema::{encode_onehot, FeatureKind, FeatureSchema, SchemaFeature};
pub use vocab::{build_vocabulary, Vocabulary, DEFAULT_VOCABULARY_SIZE};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::corpus::{normalize_description, UserProfile};
use crate::error::{Error, Result};

/// Which feature groups are extracted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FeatureMode {
    #[serde(rename = "numerical")]
    Numerical,
    #[serde(rename = "numerical+ratio")]
    NumericalRatio,
    /// Numerical, ratio and description words.
    #[serde(rename = "full")]
    Full,
}

impl FeatureMode {
    pub const ALL: [FeatureMode; 3] = [
        FeatureMode::Numerical,
        FeatureMode::NumericalRatio,
        FeatureMode::Full,
    ];

    pub fn has_ratio(self) -> bool {
        self != FeatureMode::Numerical
    }

    /// Row label used in ablation tables.
    pub fn table_label(self) -> &'static str {
        match self {
            FeatureMode::Numerical => "numerical",
            FeatureMode::NumericalRatio => "numerical+ratio",
            FeatureMode::Full => "numerical+ratio+description",
        }
    }
}

impl fmt::Display for FeatureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FeatureMode::Numerical => "numerical",
            FeatureMode::NumericalRatio => "numerical+ratio",
            FeatureMode::Full => "full",
        })
    }
}

impl FromStr for FeatureMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "numerical" => Ok(FeatureMode::Numerical),
            "numerical+ratio" => Ok(FeatureMode::NumericalRatio),
            "full" | "numerical+ratio+description" => Ok(FeatureMode::Full),
            _ => Err(Error::InvalidArgument(format!(
                "unknown feature mode `{s}`"
            ))),
        }
    }
}

/// Value of one nominal feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FeatureValue {
    Bin(Bin),
    Bool(bool),
}

impl fmt::Display for FeatureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeatureValue::Bin(b) => b.fmt(f),
            FeatureValue::Bool(b) => b.fmt(f),
        }
    }
}

impl FromStr for FeatureValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "true" => Ok(FeatureValue::Bool(true)),
            "false" => Ok(FeatureValue::Bool(false)),
            _ => s.parse().map(FeatureValue::Bin),
        }
    }
}

impl Serialize for FeatureValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FeatureValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Name of the binary feature for vocabulary word `word`.
pub fn contains_feature(word: &str) -> String {
    format!("contains({word})")
}

/// Named nominal features of one profile, in schema order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FeatureVector {
    features: Vec<(String, FeatureValue)>,
}

impl FeatureVector {
    pub fn new(features: Vec<(String, FeatureValue)>) -> Self {
        FeatureVector { features }
    }

    pub fn get(&self, name: &str) -> Option<FeatureValue> {
        self.features
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, v)| v)
    }

    /// Value at schema position `idx`, falling back to a lookup by name.
    pub(crate) fn value_at(&self, idx: usize, name: &str) -> Result<FeatureValue> {
        match self.features.get(idx) {
            Some((n, v)) if n == name => Ok(*v),
            _ => self
                .get(name)
                .ok_or_else(|| Error::MissingFeature(name.to_string())),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, FeatureValue)> {
        self.features.iter().map(|(n, v)| (n.as_str(), *v))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.features.iter().map(|(n, _)| n.as_str())
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }
}

/// Extracts the features `schema` defines. Only the mode and vocabulary of
/// the schema are consulted, never its observed value sets.
pub fn extract_features(profile: &UserProfile, schema: &FeatureSchema) -> FeatureVector {
    let mut features = vec![
        (
            "followers".to_string(),
            FeatureValue::Bin(log_bin_count(profile.followers)),
        ),
        (
            "following".to_string(),
            FeatureValue::Bin(log_bin_count(profile.following)),
        ),
        (
            "tweets".to_string(),
            FeatureValue::Bin(log_bin_count(profile.tweets)),
        ),
    ];
    if schema.mode().has_ratio() {
        features.push((
            "ratio".to_string(),
            FeatureValue::Bin(follower_ratio(profile)),
        ));
    }
    if let Some(vocab) = schema.vocabulary() {
        let tokens: BTreeSet<String> = normalize_description(&profile.description)
            .into_iter()
            .collect();
        for w in vocab.words() {
            features.push((contains_feature(w), FeatureValue::Bool(tokens.contains(w))));
        }
    }
    FeatureVector { features }
}
