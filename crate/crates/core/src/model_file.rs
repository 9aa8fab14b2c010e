//! Versioned JSON persistence of trained models.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::classifiers::{ClassifierKind, Model};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrainingMetadata {
    pub seed: u64,
    pub dataset_size: usize,
    pub label_set: Vec<String>,
}

/// On-disk model: format version, classifier kind, the model with its schema
/// and vocabulary, and training metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile<F: Scalar> {
    pub format_version: u32,
    pub classifier: ClassifierKind,
    pub model: Model<F>,
    pub training: TrainingMetadata,
}

impl<F: Scalar + Serialize + DeserializeOwned> ModelFile<F> {
    pub fn new(model: Model<F>, training: TrainingMetadata) -> Self {
        ModelFile {
            format_version: FORMAT_VERSION,
            classifier: model.kind(),
            model,
            training,
        }
    }

    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        out.write_all(b"\n")?;
        Ok(())
    }

    /// Parses a model file, rejecting unknown versions before looking at the
    /// rest of the document.
    pub fn read<R: Read>(mut input: R) -> Result<Self> {
        let mut text = String::new();
        input
            .read_to_string(&mut text)
            .map_err(|e| Error::CorruptModel(e.to_string()))?;
        let value: Value =
            serde_json::from_str(&text).map_err(|e| Error::CorruptModel(e.to_string()))?;
        let version = value
            .get("format_version")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::CorruptModel("missing `format_version`".into()))?;
        if version != u64::from(FORMAT_VERSION) {
            return Err(Error::UnsupportedVersion {
                found: version,
                supported: FORMAT_VERSION,
            });
        }
        let file: ModelFile<F> =
            serde_json::from_value(value).map_err(|e| Error::CorruptModel(e.to_string()))?;
        if file.classifier != file.model.kind() {
            return Err(Error::CorruptModel(format!(
                "header says `{}` but the model is `{}`",
                file.classifier,
                file.model.kind()
            )));
        }
        Ok(file)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut buf = Vec::new();
        self.write(&mut buf)?;
        fs::write(path, buf)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read(fs::File::open(path)?)
    }
}
