use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::LabeledDataset;
use crate::error::{Error, Result};

/// Train/test indices of one fold; both lists are ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fold {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k < 2 || k > n {
        return Err(Error::InvalidFolds { k, n });
    }
    Ok(())
}

fn folds_from_assignment(assignment: &[usize], k: usize) -> Vec<Fold> {
    (0..k)
        .map(|f| {
            let (test, train): (Vec<usize>, Vec<usize>) =
                (0..assignment.len()).partition(|&i| assignment[i] == f);
            Fold { train, test }
        })
        .collect()
}

/// Shuffles `0..n` with a seeded generator and cuts it into `k` contiguous
/// folds; the first `n % k` folds get one extra element.
pub fn kfold_indices(n: usize, k: usize, seed: u64) -> Result<Vec<Fold>> {
    check_k(n, k)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let (base, extra) = (n / k, n % k);
    let mut assignment = vec![0; n];
    let mut pos = 0;
    for f in 0..k {
        let size = base + usize::from(f < extra);
        for &i in &order[pos..pos + size] {
            assignment[i] = f;
        }
        pos += size;
    }
    Ok(folds_from_assignment(&assignment, k))
}

pub fn kfold_split(dataset: &LabeledDataset, k: usize, seed: u64) -> Result<Vec<Fold>> {
    kfold_indices(dataset.len(), k, seed)
}

/// Label-stratified variant: shuffled indices are grouped by label and dealt
/// round-robin, so every fold gets each label's share within one example.
pub fn stratified_kfold_split(dataset: &LabeledDataset, k: usize, seed: u64) -> Result<Vec<Fold>> {
    check_k(dataset.len(), k)?;
    let labels = dataset.labels()?;
    let mut order: Vec<usize> = (0..dataset.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order.sort_by_key(|&i| labels[i]);
    let mut assignment = vec![0; dataset.len()];
    for (pos, &i) in order.iter().enumerate() {
        assignment[i] = pos % k;
    }
    Ok(folds_from_assignment(&assignment, k))
}
