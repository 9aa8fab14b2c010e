//! k-fold cross-validation, percent-of-total confusion matrices and the
//! feature-ablation grid.

mod ablation;
mod confusion;
mod cv;
mod kfold;

pub use ablation::{run_ablation, AblationCell, AblationTable};
pub use confusion::{accuracy, ConfusionMatrix};
pub use cv::{cross_validate, run_fold, CvOptions, CvReport, FoldReport};
pub use kfold::{kfold_indices, kfold_split, stratified_kfold_split, Fold};
