//! ID3 decision tree over nominal features.
//!
//! Greedy top-down induction: each node splits on the unused feature with the
//! highest information gain (base-2 entropy) among features that take at
//! least two distinct values at that node, with one child per observed value.
//! Gain ties go to the lexicographically smaller feature name; majority ties
//! to the lexicographically smaller label.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{index_labels, Example};
use crate::error::Result;
use crate::features::{FeatureSchema, FeatureValue, FeatureVector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTreeParams<F: Scalar> {
    pub max_depth: usize,
    pub min_support: usize,
    pub entropy_cutoff: F,
}

impl<F: Scalar> Default for DecisionTreeParams<F> {
    fn default() -> Self {
        DecisionTreeParams {
            max_depth: 10,
            min_support: 10,
            entropy_cutoff: F::lit(0.05),
        }
    }
}

impl<F: Scalar> DecisionTreeParams<F> {
    /// No depth, support or entropy limit: grows until nodes are pure or
    /// indistinguishable.
    pub fn unlimited() -> Self {
        DecisionTreeParams {
            max_depth: usize::MAX,
            min_support: 0,
            entropy_cutoff: F::zero(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeNode {
    Leaf {
        label: String,
    },
    Split {
        feature: String,
        /// Position of `feature` in the schema.
        index: usize,
        children: BTreeMap<FeatureValue, TreeNode>,
        /// Majority label at this node, used for values without a child.
        fallback: String,
    },
}

impl TreeNode {
    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { children, .. } => {
                1 + children.values().map(TreeNode::depth).max().unwrap_or(0)
            }
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 1,
            TreeNode::Split { children, .. } => children.values().map(TreeNode::leaves).sum(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTreeModel<F: Scalar> {
    labels: Vec<String>,
    root: TreeNode,
    params: DecisionTreeParams<F>,
    schema: FeatureSchema,
}

fn entropy<F: Scalar>(counts: &[usize], total: usize) -> F {
    if total == 0 {
        return F::zero();
    }
    let n = F::from_count(total);
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = F::from_count(c) / n;
            -p * p.log2()
        })
        .sum()
}

struct Builder<'a, F: Scalar> {
    schema: &'a FeatureSchema,
    values: Vec<Vec<FeatureValue>>,
    label_idx: Vec<usize>,
    labels: &'a [String],
    params: &'a DecisionTreeParams<F>,
}

impl<F: Scalar> Builder<'_, F> {
    fn label_counts(&self, rows: &[usize]) -> Vec<usize> {
        let mut counts = vec![0; self.labels.len()];
        for &r in rows {
            counts[self.label_idx[r]] += 1;
        }
        counts
    }

    fn partition(&self, rows: &[usize], feature: usize) -> BTreeMap<FeatureValue, Vec<usize>> {
        let mut parts: BTreeMap<FeatureValue, Vec<usize>> = BTreeMap::new();
        for &r in rows {
            parts.entry(self.values[r][feature]).or_default().push(r);
        }
        parts
    }

    fn build(&self, rows: &[usize], used: &mut Vec<bool>, depth: usize) -> TreeNode {
        let counts = self.label_counts(rows);
        // first maximum = lexicographically smallest tied label
        let majority = counts
            .iter()
            .enumerate()
            .fold(0, |best, (i, &c)| if c > counts[best] { i } else { best });
        let leaf = || TreeNode::Leaf {
            label: self.labels[majority].clone(),
        };

        let node_entropy: F = entropy(&counts, rows.len());
        if depth >= self.params.max_depth
            || rows.len() < self.params.min_support
            || node_entropy <= self.params.entropy_cutoff
        {
            return leaf();
        }

        let tol = F::epsilon() * F::lit(64.0);
        let mut best: Option<(usize, F, BTreeMap<FeatureValue, Vec<usize>>)> = None;
        for (fi, feature) in self.schema.features().iter().enumerate() {
            if used[fi] {
                continue;
            }
            let parts = self.partition(rows, fi);
            if parts.len() < 2 {
                continue;
            }
            let n = F::from_count(rows.len());
            let remainder: F = parts
                .values()
                .map(|p| F::from_count(p.len()) / n * entropy(&self.label_counts(p), p.len()))
                .sum();
            let gain = node_entropy - remainder;
            let better = match &best {
                None => true,
                Some((bi, bg, _)) => {
                    gain > *bg + tol
                        || ((gain - *bg).abs() <= tol
                            && feature.name < self.schema.features()[*bi].name)
                }
            };
            if better {
                best = Some((fi, gain, parts));
            }
        }

        let Some((fi, _, parts)) = best else {
            return leaf();
        };
        used[fi] = true;
        let children = parts
            .into_iter()
            .map(|(v, sub)| (v, self.build(&sub, used, depth + 1)))
            .collect();
        used[fi] = false;
        TreeNode::Split {
            feature: self.schema.features()[fi].name.clone(),
            index: fi,
            children,
            fallback: self.labels[majority].clone(),
        }
    }
}

pub fn train_decision_tree<F: Scalar>(
    schema: &FeatureSchema,
    examples: &[Example],
    params: &DecisionTreeParams<F>,
) -> Result<DecisionTreeModel<F>> {
    let (labels, label_idx) = index_labels(schema, examples)?;
    let values = examples
        .iter()
        .map(|(fv, _)| {
            schema
                .features()
                .iter()
                .enumerate()
                .map(|(i, f)| fv.value_at(i, &f.name))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let builder = Builder {
        schema,
        values,
        label_idx,
        labels: &labels,
        params,
    };
    let rows: Vec<usize> = (0..examples.len()).collect();
    let root = builder.build(&rows, &mut vec![false; schema.len()], 0);
    Ok(DecisionTreeModel {
        labels,
        root,
        params: params.clone(),
        schema: schema.clone(),
    })
}

impl<F: Scalar> DecisionTreeModel<F> {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn root(&self) -> &TreeNode {
        &self.root
    }

    pub fn params(&self) -> &DecisionTreeParams<F> {
        &self.params
    }

    pub fn schema(&self) -> &FeatureSchema {
        &self.schema
    }

    pub fn predict(&self, fv: &FeatureVector) -> Result<&str> {
        self.schema.check(fv)?;
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Leaf { label } => return Ok(label),
                TreeNode::Split {
                    feature,
                    index,
                    children,
                    fallback,
                } => match children.get(&fv.value_at(*index, feature)?) {
                    Some(child) => node = child,
                    None => return Ok(fallback),
                },
            }
        }
    }
}
