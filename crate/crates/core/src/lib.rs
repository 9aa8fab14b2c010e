//! Classification of social-media accounts from ambient profile metadata.
//!
//! The pipeline turns follower/following/tweet counts and the free-text
//! profile description into nominal features ([`features`]), trains Naive
//! Bayes, ID3 decision-tree or linear SVM models ([`classifiers`]) and scores
//! them with k-fold cross-validation and feature ablation ([`evaluation`]).
//!
//! Numeric models are generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`, which is what the CLI uses.

pub mod classifiers;
pub mod corpus;
pub mod error;
pub mod evaluation;
pub mod features;
pub mod model_file;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Real = f64;

pub type NaiveBayes = classifiers::NaiveBayesModel<Real>;
pub type DecisionTree = classifiers::DecisionTreeModel<Real>;
pub type LinearSvm = classifiers::LinearSvmModel<Real>;
pub type Model = classifiers::Model<Real>;

pub type CorpusStats = corpus::CorpusStats<Real>;
pub type ConfusionMatrix = evaluation::ConfusionMatrix<Real>;
pub type CvReport = evaluation::CvReport<Real>;
pub type AblationTable = evaluation::AblationTable<Real>;
