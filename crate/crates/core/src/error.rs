use thiserror::Error;

/// Errors raised anywhere in the classification pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: negative count {value} for `{field}`")]
    NegativeCount {
        line: usize,
        field: &'static str,
        value: i64,
    },

    #[error("line {line}: description has {chars} characters (limit 160)")]
    DescriptionTooLong { line: usize, chars: usize },

    #[error("line {line}: label is present but empty")]
    EmptyLabel { line: usize },

    #[error("log bin requires a finite non-negative value, got {0}")]
    InvalidBinInput(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("missing feature `{0}`")]
    MissingFeature(String),

    #[error("inconsistent schema: {0}")]
    InconsistentSchema(String),

    #[error("empty training set")]
    EmptyTrainingSet,

    #[error("training requires at least two labels, found {0}")]
    TooFewLabels(usize),

    #[error("profile {index} has no label")]
    Unlabeled { index: usize },

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("fold {fold}: training split has no example of label `{label}`")]
    FoldMissingLabel { fold: usize, label: String },

    #[error("k-fold split needs 2 <= k <= {n}, got k = {k}")]
    InvalidFolds { k: usize, n: usize },

    #[error("unsupported model format version {found} (this build reads version {supported})")]
    UnsupportedVersion { found: u64, supported: u32 },

    #[error("corrupt model file: {0}")]
    CorruptModel(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
