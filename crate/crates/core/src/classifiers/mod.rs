//! Naive Bayes, ID3 decision tree and one-vs-rest linear SVM over nominal
//! feature vectors, behind a single [`Model`] interface.

mod informative;
mod naive_bayes;
mod svm;
mod tree;

pub use informative::{informative_features, InformativeFeature};
pub use naive_bayes::{train_naive_bayes, NaiveBayesModel, DEFAULT_ALPHA};
pub use svm::{svm_objective, train_svm, train_svm_dense, LinearSvmModel, SvmParams};
pub use tree::{train_decision_tree, DecisionTreeModel, DecisionTreeParams, TreeNode};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::UserProfile;
use crate::error::{Error, Result};
use crate::features::{extract_features, FeatureSchema, FeatureVector};
use crate::scalar::Scalar;

/// A feature vector paired with its gold label.
pub type Example = (FeatureVector, String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassifierKind {
    #[serde(rename = "dt")]
    DecisionTree,
    #[serde(rename = "svm")]
    LinearSvm,
    #[serde(rename = "nb")]
    NaiveBayes,
}

impl ClassifierKind {
    /// Column order of ablation tables.
    pub const ALL: [ClassifierKind; 3] = [
        ClassifierKind::DecisionTree,
        ClassifierKind::LinearSvm,
        ClassifierKind::NaiveBayes,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            ClassifierKind::DecisionTree => "dt",
            ClassifierKind::LinearSvm => "svm",
            ClassifierKind::NaiveBayes => "nb",
        }
    }

    pub fn table_label(self) -> &'static str {
        match self {
            ClassifierKind::DecisionTree => "DT",
            ClassifierKind::LinearSvm => "SVM",
            ClassifierKind::NaiveBayes => "NB",
        }
    }
}

impl fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for ClassifierKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nb" => Ok(ClassifierKind::NaiveBayes),
            "dt" => Ok(ClassifierKind::DecisionTree),
            "svm" => Ok(ClassifierKind::LinearSvm),
            _ => Err(Error::InvalidArgument(format!("unknown classifier `{s}`"))),
        }
    }
}

/// Hyperparameters of every classifier; [`ClassifierConfig::for_kind`]
/// picks the relevant subset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperparams<F: Scalar> {
    pub alpha: F,
    pub tree: DecisionTreeParams<F>,
    pub svm: SvmParams<F>,
}

impl<F: Scalar> Default for Hyperparams<F> {
    fn default() -> Self {
        Hyperparams {
            alpha: F::lit(DEFAULT_ALPHA),
            tree: DecisionTreeParams::default(),
            svm: SvmParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassifierConfig<F: Scalar> {
    NaiveBayes { alpha: F },
    DecisionTree(DecisionTreeParams<F>),
    LinearSvm(SvmParams<F>),
}

impl<F: Scalar> ClassifierConfig<F> {
    pub fn for_kind(kind: ClassifierKind, hp: &Hyperparams<F>) -> Self {
        match kind {
            ClassifierKind::NaiveBayes => ClassifierConfig::NaiveBayes { alpha: hp.alpha },
            ClassifierKind::DecisionTree => ClassifierConfig::DecisionTree(hp.tree.clone()),
            ClassifierKind::LinearSvm => ClassifierConfig::LinearSvm(hp.svm.clone()),
        }
    }

    pub fn kind(&self) -> ClassifierKind {
        match self {
            ClassifierConfig::NaiveBayes { .. } => ClassifierKind::NaiveBayes,
            ClassifierConfig::DecisionTree(_) => ClassifierKind::DecisionTree,
            ClassifierConfig::LinearSvm(_) => ClassifierKind::LinearSvm,
        }
    }

    pub fn train(&self, schema: &FeatureSchema, examples: &[Example]) -> Result<Model<F>> {
        Ok(match self {
            ClassifierConfig::NaiveBayes { alpha } => {
                Model::NaiveBayes(train_naive_bayes(schema, examples, *alpha)?)
            }
            ClassifierConfig::DecisionTree(p) => {
                Model::DecisionTree(train_decision_tree(schema, examples, p)?)
            }
            ClassifierConfig::LinearSvm(p) => Model::LinearSvm(train_svm(schema, examples, p)?),
        })
    }
}

/// Any trained classifier together with the schema it was trained on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Model<F: Scalar> {
    NaiveBayes(NaiveBayesModel<F>),
    DecisionTree(DecisionTreeModel<F>),
    LinearSvm(LinearSvmModel<F>),
}

impl<F: Scalar> Model<F> {
    pub fn kind(&self) -> ClassifierKind {
        match self {
            Model::NaiveBayes(_) => ClassifierKind::NaiveBayes,
            Model::DecisionTree(_) => ClassifierKind::DecisionTree,
            Model::LinearSvm(_) => ClassifierKind::LinearSvm,
        }
    }

    pub fn schema(&self) -> &FeatureSchema {
        match self {
            Model::NaiveBayes(m) => m.schema(),
            Model::DecisionTree(m) => m.schema(),
            Model::LinearSvm(m) => m.schema(),
        }
    }

    pub fn labels(&self) -> &[String] {
        match self {
            Model::NaiveBayes(m) => m.labels(),
            Model::DecisionTree(m) => m.labels(),
            Model::LinearSvm(m) => m.labels(),
        }
    }

    /// Predicted label; argmax ties go to the lexicographically first label.
    pub fn predict(&self, fv: &FeatureVector) -> Result<&str> {
        match self {
            Model::NaiveBayes(m) => m.predict(fv),
            Model::DecisionTree(m) => m.predict(fv),
            Model::LinearSvm(m) => m.predict(fv),
        }
    }

    pub fn predict_profile(&self, profile: &UserProfile) -> Result<&str> {
        self.predict(&extract_features(profile, self.schema()))
    }
}

/// Index of the first maximum. `labels` are sorted, so the first maximum is
/// the lexicographically smallest tied label.
pub(crate) fn argmax_first<F: Scalar>(scores: &[F]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

/// Validates examples against `schema` and maps each gold label to its index
/// in the sorted label list.
pub(crate) fn index_labels(
    schema: &FeatureSchema,
    examples: &[Example],
) -> Result<(Vec<String>, Vec<usize>)> {
    if examples.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    for (fv, _) in examples {
        schema
            .check(fv)
            .map_err(|e| Error::InconsistentSchema(e.to_string()))?;
        for (i, f) in schema.features().iter().enumerate() {
            let v = fv.value_at(i, &f.name)?;
            if schema.value_index(i, v).is_none() {
                return Err(Error::InconsistentSchema(format!(
                    "training value `{v}` of `{}` is missing from the schema value set",
                    f.name
                )));
            }
        }
    }
    let labels: Vec<String> = examples
        .iter()
        .map(|(_, l)| l.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let idx = examples
        .iter()
        .map(|(_, l)| labels.binary_search(l).unwrap())
        .collect();
    Ok((labels, idx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argmax_ties_pick_first() {
        assert_eq!(argmax_first(&[0.6, 0.3, 0.1]), 0);
        assert_eq!(argmax_first(&[0.1, 0.6, 0.3]), 1);
        assert_eq!(argmax_first(&[0.5, 0.5]), 0);
        assert_eq!(argmax_first(&[0.2f32, 0.4, 0.4]), 1);
    }

    #[test]
    fn kind_names() {
        for k in ClassifierKind::ALL {
            assert_eq!(k.short_name().parse::<ClassifierKind>().unwrap(), k);
        }
        assert!("knn".parse::<ClassifierKind>().is_err());
    }
}
