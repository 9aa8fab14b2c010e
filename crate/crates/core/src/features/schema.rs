use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{
    contains_feature, extract_features, FeatureMode, FeatureValue, FeatureVector, Vocabulary,
};
use crate::corpus::UserProfile;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureKind {
    Nominal,
    Boolean,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaFeature {
    pub name: String,
    pub kind: FeatureKind,
    /// Values observed in training, sorted. Every feature also owns an
    /// implicit UNK value that is not listed here.
    pub values: Vec<FeatureValue>,
}

/// Feature layout for one feature mode plus the value sets seen in training.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureSchema {
    mode: FeatureMode,
    vocabulary: Option<Vocabulary>,
    features: Vec<SchemaFeature>,
}

impl FeatureSchema {
    /// Schema with empty value sets. `Full` mode needs a vocabulary; other
    /// modes ignore it.
    pub fn new(mode: FeatureMode, vocabulary: Option<Vocabulary>) -> Result<Self> {
        let vocabulary = match (mode, vocabulary) {
            (FeatureMode::Full, None) => {
                return Err(Error::InvalidArgument(
                    "full feature mode requires a vocabulary".into(),
                ))
            }
            (FeatureMode::Full, v) => v,
            _ => None,
        };
        let nominal = |name: &str| SchemaFeature {
            name: name.to_string(),
            kind: FeatureKind::Nominal,
            values: Vec::new(),
        };
        let mut features = vec![
            nominal("followers"),
            nominal("following"),
            nominal("tweets"),
        ];
        if mode.has_ratio() {
            features.push(nominal("ratio"));
        }
        if let Some(v) = &vocabulary {
            features.extend(v.words().iter().map(|w| SchemaFeature {
                name: contains_feature(w),
                kind: FeatureKind::Boolean,
                values: Vec::new(),
            }));
        }
        Ok(FeatureSchema {
            mode,
            vocabulary,
            features,
        })
    }

    /// Builds the schema, extracts every profile and records observed values.
    pub fn fit<'a, I>(
        mode: FeatureMode,
        vocabulary: Option<Vocabulary>,
        profiles: I,
    ) -> Result<(Self, Vec<FeatureVector>)>
    where
        I: IntoIterator<Item = &'a UserProfile>,
    {
        let mut schema = Self::new(mode, vocabulary)?;
        let fvs: Vec<FeatureVector> = profiles
            .into_iter()
            .map(|p| extract_features(p, &schema))
            .collect();
        schema.observe(&fvs)?;
        Ok((schema, fvs))
    }

    /// Adds every value in `fvs` to the observed value sets.
    pub fn observe(&mut self, fvs: &[FeatureVector]) -> Result<()> {
        let mut sets: Vec<BTreeSet<FeatureValue>> = self
            .features
            .iter()
            .map(|f| f.values.iter().copied().collect())
            .collect();
        for fv in fvs {
            self.check(fv)?;
            for (i, f) in self.features.iter().enumerate() {
                let v = fv.value_at(i, &f.name)?;
                match (f.kind, v) {
                    (FeatureKind::Nominal, FeatureValue::Bin(_))
                    | (FeatureKind::Boolean, FeatureValue::Bool(_)) => {}
                    _ => {
                        return Err(Error::InconsistentSchema(format!(
                            "value `{v}` does not fit feature `{}`",
                            f.name
                        )))
                    }
                }
                sets[i].insert(v);
            }
        }
        for (f, s) in self.features.iter_mut().zip(sets) {
            f.values = s.into_iter().collect();
        }
        Ok(())
    }

    pub fn mode(&self) -> FeatureMode {
        self.mode
    }

    pub fn vocabulary(&self) -> Option<&Vocabulary> {
        self.vocabulary.as_ref()
    }

    pub fn features(&self) -> &[SchemaFeature] {
        &self.features
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.features.iter().map(|f| f.name.as_str())
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    /// Position of `value` in feature `feature`'s observed set; `None` means UNK.
    pub fn value_index(&self, feature: usize, value: FeatureValue) -> Option<usize> {
        self.features[feature].values.binary_search(&value).ok()
    }

    /// Fails unless `fv` carries exactly the schema's feature names.
    pub fn check(&self, fv: &FeatureVector) -> Result<()> {
        for (i, f) in self.features.iter().enumerate() {
            fv.value_at(i, &f.name)?;
        }
        if fv.len() != self.features.len() {
            let extra = fv
                .names()
                .find(|n| !self.names().any(|m| m == *n))
                .unwrap_or("<duplicate>");
            return Err(Error::InconsistentSchema(format!(
                "feature `{extra}` is not in the schema"
            )));
        }
        Ok(())
    }

    /// Length of the one-hot encoding.
    pub fn onehot_dim(&self) -> usize {
        self.features
            .iter()
            .map(|f| match f.kind {
                FeatureKind::Nominal => f.values.len() + 1,
                FeatureKind::Boolean => 1,
            })
            .sum()
    }
}

/// One indicator per observed value plus a trailing UNK slot for nominal
/// features; a single 0/1 slot for boolean features. Slots follow schema order.
pub fn encode_onehot<F: Scalar>(fv: &FeatureVector, schema: &FeatureSchema) -> Result<Vec<F>> {
    schema.check(fv)?;
    let mut out = vec![F::zero(); schema.onehot_dim()];
    let mut offset = 0;
    for (i, f) in schema.features().iter().enumerate() {
        let v = fv.value_at(i, &f.name)?;
        match f.kind {
            FeatureKind::Nominal => {
                let slot = schema.value_index(i, v).unwrap_or(f.values.len());
                out[offset + slot] = F::one();
                offset += f.values.len() + 1;
            }
            FeatureKind::Boolean => {
                if v == FeatureValue::Bool(true) {
                    out[offset] = F::one();
                }
                offset += 1;
            }
        }
    }
    Ok(out)
}
