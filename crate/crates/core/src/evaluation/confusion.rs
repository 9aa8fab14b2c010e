use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Gold (rows) versus predicted (columns) table whose cells are percentages
/// of all evaluated examples, so the trace is the accuracy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfusionMatrix<F: Scalar> {
    labels: Vec<String>,
    cells: Vec<Vec<F>>,
    /// Number of evaluated examples; 0 when built from published percentages.
    n_total: usize,
}

impl<F: Scalar> ConfusionMatrix<F> {
    pub fn from_predictions<G, P>(gold: &[G], predicted: &[P], labels: &[String]) -> Result<Self>
    where
        G: AsRef<str>,
        P: AsRef<str>,
    {
        if gold.len() != predicted.len() {
            return Err(Error::InvalidArgument(format!(
                "{} gold labels but {} predictions",
                gold.len(),
                predicted.len()
            )));
        }
        if gold.is_empty() {
            return Err(Error::InvalidArgument(
                "confusion matrix over zero examples".into(),
            ));
        }
        let index = |l: &str| {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let mut counts = vec![vec![0usize; labels.len()]; labels.len()];
        for (g, p) in gold.iter().zip(predicted) {
            counts[index(g.as_ref())?][index(p.as_ref())?] += 1;
        }
        let n = F::from_count(gold.len());
        let hundred = F::lit(100.0);
        let cells = counts
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|c| hundred * F::from_count(c) / n)
                    .collect()
            })
            .collect();
        Ok(ConfusionMatrix {
            labels: labels.to_vec(),
            cells,
            n_total: gold.len(),
        })
    }

    /// Matrix from already-computed percentages, e.g. a published table.
    pub fn from_percentages(labels: Vec<String>, cells: Vec<Vec<F>>) -> Result<Self> {
        if cells.len() != labels.len() || cells.iter().any(|r| r.len() != labels.len()) {
            return Err(Error::InvalidArgument(
                "confusion matrix must be square over its labels".into(),
            ));
        }
        if cells
            .iter()
            .flatten()
            .any(|c| !c.is_finite() || *c < F::zero())
        {
            return Err(Error::InvalidArgument(
                "cells must be finite and non-negative".into(),
            ));
        }
        Ok(ConfusionMatrix {
            labels,
            cells,
            n_total: 0,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn cells(&self) -> &[Vec<F>] {
        &self.cells
    }

    pub fn cell(&self, gold: usize, predicted: usize) -> F {
        self.cells[gold][predicted]
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    /// Trace of the matrix, in percent.
    pub fn accuracy(&self) -> F {
        (0..self.labels.len()).map(|i| self.cells[i][i]).sum()
    }

    pub fn total(&self) -> F {
        self.cells.iter().flatten().copied().sum()
    }
}

/// Percentage of correct predictions.
pub fn accuracy<F: Scalar>(cm: &ConfusionMatrix<F>) -> F {
    cm.accuracy()
}

impl<F: Scalar> fmt::Display for ConfusionMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = self.labels.iter().map(String::len).max().unwrap_or(0);
        let width = self
            .labels
            .iter()
            .map(|l| l.len())
            .max()
            .unwrap_or(0)
            .max(6)
            + 2;
        write!(f, "{:head$}", "")?;
        for l in &self.labels {
            write!(f, "{l:>width$}")?;
        }
        writeln!(f)?;
        for (l, row) in self.labels.iter().zip(&self.cells) {
            write!(f, "{l:<head$}")?;
            for c in row {
                write!(f, "{:>width$}", format!("{c:.1}%"))?;
            }
            writeln!(f)?;
        }
        write!(f, "Accuracy: {:.1}%", self.accuracy())
    }
}
