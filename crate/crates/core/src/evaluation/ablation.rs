use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{cross_validate, CvOptions, CvReport};
use crate::classifiers::{ClassifierConfig, ClassifierKind, Hyperparams};
use crate::corpus::LabeledDataset;
use crate::features::FeatureMode;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationCell<F: Scalar> {
    pub mode: FeatureMode,
    pub classifier: ClassifierKind,
    pub average_accuracy: Option<F>,
    pub error: Option<String>,
    pub report: Option<CvReport<F>>,
}

/// Average CV accuracy for every (feature mode, classifier) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationTable<F: Scalar> {
    pub rows: Vec<FeatureMode>,
    pub columns: Vec<ClassifierKind>,
    /// Row-major.
    pub cells: Vec<AblationCell<F>>,
}

impl<F: Scalar> AblationTable<F> {
    pub fn cell(&self, mode: FeatureMode, classifier: ClassifierKind) -> Option<&AblationCell<F>> {
        self.cells
            .iter()
            .find(|c| c.mode == mode && c.classifier == classifier)
    }

    /// Average accuracy of a completed cell; `None` for failed cells.
    pub fn get(&self, mode: FeatureMode, classifier: ClassifierKind) -> Option<F> {
        self.cell(mode, classifier).and_then(|c| c.average_accuracy)
    }
}

/// Cross-validates every classifier under every feature mode with one shared
/// seed. Failed cells carry their error and render as `*`.
pub fn run_ablation<F: Scalar>(
    dataset: &LabeledDataset,
    hp: &Hyperparams<F>,
    opts: &CvOptions,
) -> AblationTable<F> {
    let grid: Vec<(FeatureMode, ClassifierKind)> = FeatureMode::ALL
        .iter()
        .flat_map(|&m| ClassifierKind::ALL.iter().map(move |&k| (m, k)))
        .collect();
    let cells = grid
        .par_iter()
        .map(|&(mode, classifier)| {
            let config = ClassifierConfig::for_kind(classifier, hp);
            match cross_validate(dataset, &config, mode, opts) {
                Ok(report) => AblationCell {
                    mode,
                    classifier,
                    average_accuracy: Some(report.average_accuracy),
                    error: None,
                    report: Some(report),
                },
                Err(e) => {
                    log::warn!("ablation cell {mode}/{classifier} failed: {e}");
                    AblationCell {
                        mode,
                        classifier,
                        average_accuracy: None,
                        error: Some(e.to_string()),
                        report: None,
                    }
                }
            }
        })
        .collect();
    AblationTable {
        rows: FeatureMode::ALL.to_vec(),
        columns: ClassifierKind::ALL.to_vec(),
        cells,
    }
}

impl<F: Scalar> fmt::Display for AblationTable<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = self
            .rows
            .iter()
            .map(|m| m.table_label().len())
            .max()
            .unwrap_or(0)
            .max("Features".len());
        write!(f, "{:<head$}", "Features")?;
        for c in &self.columns {
            write!(f, "{:>9}", c.table_label())?;
        }
        for m in &self.rows {
            writeln!(f)?;
            write!(f, "{:<head$}", m.table_label())?;
            for c in &self.columns {
                let text = match self.get(*m, *c) {
                    Some(acc) => format!("{acc:.1}%"),
                    None => "*".to_string(),
                };
                write!(f, "{text:>9}")?;
            }
        }
        Ok(())
    }
}
