//! One-vs-rest linear SVM trained by stochastic subgradient descent on the
//! L2-regularized hinge loss (Pegasos step size `1 / (λ t)`).
//!
//! The bias is an extra weight on a constant input of 1 and is regularized
//! with the rest. After each epoch the objective is evaluated and the best
//! epoch-end iterate (starting from the zero vector) is kept.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{argmax_first, index_labels, Example};
use crate::error::{Error, Result};
use crate::features::{encode_onehot, FeatureSchema, FeatureVector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmParams<F: Scalar> {
    pub lambda: F,
    pub epochs: usize,
    pub seed: u64,
}

impl<F: Scalar> Default for SvmParams<F> {
    fn default() -> Self {
        SvmParams {
            lambda: F::lit(1e-4),
            epochs: 100,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearSvmModel<F: Scalar> {
    labels: Vec<String>,
    weights: Vec<Vec<F>>,
    biases: Vec<F>,
    params: SvmParams<F>,
    schema: FeatureSchema,
}

fn dot<F: Scalar>(w: &[F], x: &[F]) -> F {
    w.iter().zip(x).fold(F::zero(), |acc, (&a, &b)| acc + a * b)
}

/// `λ/2 (‖w‖² + b²) + mean(max(0, 1 − y (w·x + b)))` for targets `y ∈ {−1, +1}`.
pub fn svm_objective<F: Scalar>(w: &[F], b: F, xs: &[Vec<F>], ys: &[F], lambda: F) -> F {
    let reg = lambda * (dot(w, w) + b * b) / F::lit(2.0);
    let hinge: F = xs
        .iter()
        .zip(ys)
        .map(|(x, &y)| (F::one() - y * (dot(w, x) + b)).max(F::zero()))
        .sum();
    reg + hinge / F::from_count(xs.len())
}

fn epoch_rng(seed: u64, label: usize, epoch: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(label as u64).to_le_bytes());
    key[16..24].copy_from_slice(&(epoch as u64).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

fn train_binary<F: Scalar>(
    xs: &[Vec<F>],
    ys: &[F],
    params: &SvmParams<F>,
    label: usize,
) -> (Vec<F>, F) {
    let dim = xs.first().map_or(0, Vec::len);
    let lambda = params.lambda;
    let radius = F::one() / lambda.sqrt();
    let mut w = vec![F::zero(); dim];
    let mut b = F::zero();
    let mut best = (w.clone(), b);
    let mut best_obj = svm_objective(&w, b, xs, ys, lambda);
    let mut order: Vec<usize> = (0..xs.len()).collect();
    let mut t = 0usize;

    for epoch in 0..params.epochs {
        order.sort_unstable();
        order.shuffle(&mut epoch_rng(params.seed, label, epoch));
        for &i in &order {
            t += 1;
            let eta = F::one() / (lambda * F::from_count(t));
            let (x, y) = (&xs[i], ys[i]);
            let margin = y * (dot(&w, x) + b);
            let shrink = F::one() - eta * lambda;
            for wj in w.iter_mut() {
                *wj = *wj * shrink;
            }
            b = b * shrink;
            if margin < F::one() {
                let step = eta * y;
                for (wj, &xj) in w.iter_mut().zip(x) {
                    *wj = *wj + step * xj;
                }
                b = b + step;
            }
            let norm = (dot(&w, &w) + b * b).sqrt();
            if norm > radius {
                let s = radius / norm;
                for wj in w.iter_mut() {
                    *wj = *wj * s;
                }
                b = b * s;
            }
        }
        let obj = svm_objective(&w, b, xs, ys, lambda);
        if obj < best_obj {
            best_obj = obj;
            best = (w.clone(), b);
        }
    }
    best
}

fn check_params<F: Scalar>(params: &SvmParams<F>) -> Result<()> {
    if !(params.lambda > F::zero() && params.lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "lambda must be positive, got {}",
            params.lambda
        )));
    }
    Ok(())
}

/// Trains one binary classifier per label on dense inputs. `labels[i]` indexes
/// into a label list of size `n_labels`. Returns `(weights, biases)`.
pub fn train_svm_dense<F: Scalar>(
    xs: &[Vec<F>],
    labels: &[usize],
    n_labels: usize,
    params: &SvmParams<F>,
) -> Result<(Vec<Vec<F>>, Vec<F>)> {
    check_params(params)?;
    if xs.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    if n_labels < 2 {
        return Err(Error::TooFewLabels(n_labels));
    }
    let dim = xs[0].len();
    if xs.iter().any(|x| x.len() != dim) {
        return Err(Error::InconsistentSchema(
            "input vectors differ in dimension".into(),
        ));
    }
    let mut weights = Vec::with_capacity(n_labels);
    let mut biases = Vec::with_capacity(n_labels);
    for l in 0..n_labels {
        let ys: Vec<F> = labels
            .iter()
            .map(|&y| if y == l { F::one() } else { -F::one() })
            .collect();
        let (w, b) = train_binary(xs, &ys, params, l);
        weights.push(w);
        biases.push(b);
    }
    Ok((weights, biases))
}

pub fn train_svm<F: Scalar>(
    schema: &FeatureSchema,
    examples: &[Example],
    params: &SvmParams<F>,
) -> Result<LinearSvmModel<F>> {
    let (labels, label_idx) = index_labels(schema, examples)?;
    let xs = examples
        .iter()
        .map(|(fv, _)| encode_onehot(fv, schema))
        .collect::<Result<Vec<_>>>()?;
    let (weights, biases) = train_svm_dense(&xs, &label_idx, labels.len(), params)?;
    Ok(LinearSvmModel {
        labels,
        weights,
        biases,
        params: params.clone(),
        schema: schema.clone(),
    })
}

impl<F: Scalar> LinearSvmModel<F> {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[Vec<F>] {
        &self.weights
    }

    pub fn biases(&self) -> &[F] {
        &self.biases
    }

    pub fn params(&self) -> &SvmParams<F> {
        &self.params
    }

    pub fn schema(&self) -> &FeatureSchema {
        &self.schema
    }

    /// Per-label decision values `w·x + b`.
    pub fn scores(&self, fv: &FeatureVector) -> Result<Vec<F>> {
        let x = encode_onehot(fv, &self.schema)?;
        Ok(self
            .weights
            .iter()
            .zip(&self.biases)
            .map(|(w, &b)| dot(w, &x) + b)
            .collect())
    }

    pub fn predict(&self, fv: &FeatureVector) -> Result<&str> {
        let scores = self.scores(fv)?;
        Ok(&self.labels[argmax_first(&scores)])
    }
}
