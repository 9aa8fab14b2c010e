use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{kfold_split, stratified_kfold_split, ConfusionMatrix, Fold};
use crate::classifiers::{ClassifierConfig, ClassifierKind, Example};
use crate::corpus::LabeledDataset;
use crate::error::{Error, Result};
use crate::features::{
    build_vocabulary, extract_features, FeatureMode, FeatureSchema, Vocabulary,
    DEFAULT_VOCABULARY_SIZE,
};
use crate::scalar::Scalar;

/// Cross-validation settings shared by every classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvOptions {
    pub k: usize,
    pub seed: u64,
    pub stratified: bool,
    /// Vocabulary size when the vocabulary is rebuilt per fold.
    pub vocab_size: usize,
    /// Fixed vocabulary used for every fold instead of rebuilding one from
    /// each training split.
    pub external_vocabulary: Option<Vocabulary>,
}

impl Default for CvOptions {
    fn default() -> Self {
        CvOptions {
            k: 4,
            seed: 0,
            stratified: false,
            vocab_size: DEFAULT_VOCABULARY_SIZE,
            external_vocabulary: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldReport<F: Scalar> {
    pub index: usize,
    pub train_size: usize,
    pub test_size: usize,
    /// Vocabulary the fold was trained with (full mode only).
    pub vocabulary: Option<Vec<String>>,
    pub confusion: ConfusionMatrix<F>,
    pub accuracy: F,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvReport<F: Scalar> {
    pub classifier: ClassifierKind,
    pub config: ClassifierConfig<F>,
    pub feature_mode: FeatureMode,
    pub k: usize,
    pub seed: u64,
    pub stratified: bool,
    pub folds: Vec<FoldReport<F>>,
    /// Most accurate fold, lowest index on ties.
    pub best_fold: usize,
    pub average_accuracy: F,
}

impl<F: Scalar> CvReport<F> {
    pub fn best(&self) -> &FoldReport<F> {
        &self.folds[self.best_fold]
    }
}

/// Trains on one fold's training split and scores its test split. The
/// vocabulary and schema value sets only ever see training profiles.
pub fn run_fold<F: Scalar>(
    dataset: &LabeledDataset,
    fold: &Fold,
    index: usize,
    config: &ClassifierConfig<F>,
    mode: FeatureMode,
    opts: &CvOptions,
) -> Result<FoldReport<F>> {
    let labels = dataset.labels()?;
    let train = dataset.subset(&fold.train);
    for l in dataset.label_set() {
        if !train.label_set().contains(l) {
            return Err(Error::FoldMissingLabel {
                fold: index,
                label: l.clone(),
            });
        }
    }
    let vocabulary = match (mode, &opts.external_vocabulary) {
        (FeatureMode::Full, Some(v)) => Some(v.clone()),
        (FeatureMode::Full, None) => Some(build_vocabulary(&train, opts.vocab_size)?),
        _ => None,
    };
    let (schema, fvs) = FeatureSchema::fit(mode, vocabulary.clone(), train.profiles())?;
    let examples: Vec<Example> = fvs
        .into_iter()
        .zip(fold.train.iter().map(|&i| labels[i].to_string()))
        .collect();
    let model = config.train(&schema, &examples)?;

    let mut predicted = Vec::with_capacity(fold.test.len());
    for &i in &fold.test {
        let fv = extract_features(&dataset.profiles()[i], &schema);
        predicted.push(model.predict(&fv)?.to_string());
    }
    let gold: Vec<&str> = fold.test.iter().map(|&i| labels[i]).collect();
    let confusion = ConfusionMatrix::from_predictions(&gold, &predicted, dataset.label_set())?;
    Ok(FoldReport {
        index,
        train_size: fold.train.len(),
        test_size: fold.test.len(),
        vocabulary: vocabulary.map(|v| v.words().to_vec()),
        accuracy: confusion.accuracy(),
        confusion,
    })
}

/// k-fold cross-validation of one classifier in one feature mode. Folds run
/// in parallel; the report does not depend on scheduling.
pub fn cross_validate<F: Scalar>(
    dataset: &LabeledDataset,
    config: &ClassifierConfig<F>,
    mode: FeatureMode,
    opts: &CvOptions,
) -> Result<CvReport<F>> {
    dataset.labels()?;
    let folds = if opts.stratified {
        stratified_kfold_split(dataset, opts.k, opts.seed)?
    } else {
        kfold_split(dataset, opts.k, opts.seed)?
    };
    let results: Vec<Result<FoldReport<F>>> = folds
        .par_iter()
        .enumerate()
        .map(|(i, fold)| run_fold(dataset, fold, i, config, mode, opts))
        .collect();
    let folds = results.into_iter().collect::<Result<Vec<_>>>()?;

    let best_fold = folds.iter().enumerate().fold(0, |best, (i, f)| {
        if f.accuracy > folds[best].accuracy {
            i
        } else {
            best
        }
    });
    let average_accuracy = folds.iter().map(|f| f.accuracy).sum::<F>() / F::from_count(folds.len());
    Ok(CvReport {
        classifier: config.kind(),
        config: config.clone(),
        feature_mode: mode,
        k: opts.k,
        seed: opts.seed,
        stratified: opts.stratified,
        folds,
        best_fold,
        average_accuracy,
    })
}

impl<F: Scalar> fmt::Display for CvReport<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "classifier: {}  features: {}  folds: {}  seed: {}{}",
            self.classifier,
            self.feature_mode,
            self.k,
            self.seed,
            if self.stratified {
                "  (stratified)"
            } else {
                ""
            }
        )?;
        let sizes: Vec<String> = self.folds.iter().map(|r| r.test_size.to_string()).collect();
        writeln!(f, "fold test sizes: {}", sizes.join(", "))?;
        let accs: Vec<String> = self
            .folds
            .iter()
            .map(|r| format!("{:.1}%", r.accuracy))
            .collect();
        writeln!(f, "fold accuracies: {}", accs.join(", "))?;
        writeln!(f)?;
        writeln!(f, "most accurate fold: {}", self.best_fold + 1)?;
        writeln!(f, "{}", self.best().confusion)?;
        writeln!(f)?;
        write!(f, "Average accuracy: {:.1}%", self.average_accuracy)
    }
}
