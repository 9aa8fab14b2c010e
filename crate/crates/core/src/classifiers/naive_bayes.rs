//! Categorical Naive Bayes with add-α smoothing.
//!
//! Each feature's value set is the one observed in training plus an UNK
//! bucket, so `P(v | f, ℓ) = (count(f = v, ℓ) + α) / (count(ℓ) + α·(|values(f)| + 1))`
//! is a proper distribution and unseen values at prediction time fall into UNK.

use serde::{Deserialize, Serialize};

use super::{argmax_first, index_labels, Example};
use crate::error::{Error, Result};
use crate::features::{FeatureSchema, FeatureValue, FeatureVector};
use crate::scalar::Scalar;

/// Expected-likelihood smoothing.
pub const DEFAULT_ALPHA: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NbFeatureTable<F: Scalar> {
    /// `[label][value]` training counts.
    pub counts: Vec<Vec<u64>>,
    /// `[label][value]` smoothed probabilities; the last column is UNK.
    pub probs: Vec<Vec<F>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NaiveBayesModel<F: Scalar> {
    labels: Vec<String>,
    label_counts: Vec<u64>,
    priors: Vec<F>,
    alpha: F,
    tables: Vec<NbFeatureTable<F>>,
    schema: FeatureSchema,
}

pub fn train_naive_bayes<F: Scalar>(
    schema: &FeatureSchema,
    examples: &[Example],
    alpha: F,
) -> Result<NaiveBayesModel<F>> {
    if !(alpha > F::zero() && alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "smoothing alpha must be positive, got {alpha}"
        )));
    }
    let (labels, label_idx) = index_labels(schema, examples)?;
    let n_labels = labels.len();

    let mut label_counts = vec![0u64; n_labels];
    for &l in &label_idx {
        label_counts[l] += 1;
    }
    let total = F::from_count(examples.len());
    let priors = label_counts
        .iter()
        .map(|&c| F::from_count(c as usize) / total)
        .collect();

    let mut tables = Vec::with_capacity(schema.len());
    for (fi, feature) in schema.features().iter().enumerate() {
        let n_values = feature.values.len();
        let mut counts = vec![vec![0u64; n_values]; n_labels];
        for ((fv, _), &l) in examples.iter().zip(&label_idx) {
            let v = fv.value_at(fi, &feature.name)?;
            // index_labels guarantees the value is in the schema
            counts[l][schema.value_index(fi, v).unwrap()] += 1;
        }
        let slots = F::from_count(n_values + 1);
        let probs = counts
            .iter()
            .zip(&label_counts)
            .map(|(row, &lc)| {
                let den = F::from_count(lc as usize) + alpha * slots;
                row.iter()
                    .map(|&c| (F::from_count(c as usize) + alpha) / den)
                    .chain(std::iter::once(alpha / den))
                    .collect()
            })
            .collect();
        tables.push(NbFeatureTable { counts, probs });
    }

    Ok(NaiveBayesModel {
        labels,
        label_counts,
        priors,
        alpha,
        tables,
        schema: schema.clone(),
    })
}

impl<F: Scalar> NaiveBayesModel<F> {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_counts(&self) -> &[u64] {
        &self.label_counts
    }

    pub fn priors(&self) -> &[F] {
        &self.priors
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn schema(&self) -> &FeatureSchema {
        &self.schema
    }

    pub fn tables(&self) -> &[NbFeatureTable<F>] {
        &self.tables
    }

    /// Smoothed `P(value | feature, label)`; values outside the training set
    /// get the UNK probability.
    pub fn cond_prob(&self, feature: usize, value: FeatureValue, label: usize) -> F {
        let row = &self.tables[feature].probs[label];
        match self.schema.value_index(feature, value) {
            Some(i) => row[i],
            None => row[row.len() - 1],
        }
    }

    /// Posterior over [`labels`](Self::labels), computed in log space.
    pub fn posterior(&self, fv: &FeatureVector) -> Result<Vec<F>> {
        let mut logp: Vec<F> = self.priors.iter().map(|p| p.ln()).collect();
        for (fi, feature) in self.schema.features().iter().enumerate() {
            let v = fv.value_at(fi, &feature.name)?;
            for (l, lp) in logp.iter_mut().enumerate() {
                *lp = *lp + self.cond_prob(fi, v, l).ln();
            }
        }
        let max = logp.iter().copied().fold(F::neg_infinity(), F::max);
        let unnorm: Vec<F> = logp.iter().map(|&lp| (lp - max).exp()).collect();
        let z: F = unnorm.iter().copied().sum();
        Ok(unnorm.into_iter().map(|u| u / z).collect())
    }

    pub fn predict(&self, fv: &FeatureVector) -> Result<&str> {
        let post = self.posterior(fv)?;
        Ok(&self.labels[argmax_first(&post)])
    }
}
