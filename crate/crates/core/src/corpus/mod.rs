//! Profile records, dataset ingestion and description tokenization.

mod stats;
mod synthetic;

pub use stats::{corpus_stats, CorpusStats};
pub use synthetic::{generate_synthetic, CountRange, LabelSpec, SignalWord, SyntheticSpec};

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Maximum description length in characters.
pub const MAX_DESCRIPTION_CHARS: usize = 160;

/// Ambient metadata of one account.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserProfile {
    pub followers: u64,
    pub following: u64,
    pub tweets: u64,
    #[serde(default)]
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl UserProfile {
    pub fn new(
        followers: u64,
        following: u64,
        tweets: u64,
        description: impl Into<String>,
    ) -> Self {
        UserProfile {
            followers,
            following,
            tweets,
            description: description.into(),
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

/// Ordered profiles plus the sorted set of labels they carry.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabeledDataset {
    profiles: Vec<UserProfile>,
    label_set: Vec<String>,
}

impl LabeledDataset {
    pub fn new(profiles: Vec<UserProfile>) -> Self {
        let label_set = profiles
            .iter()
            .filter_map(|p| p.label.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        LabeledDataset {
            profiles,
            label_set,
        }
    }

    pub fn profiles(&self) -> &[UserProfile] {
        &self.profiles
    }

    /// Distinct labels in lexicographic order.
    pub fn label_set(&self) -> &[String] {
        &self.label_set
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    /// Sub-dataset made of the given indices, in that order.
    pub fn subset(&self, indices: &[usize]) -> LabeledDataset {
        LabeledDataset::new(indices.iter().map(|&i| self.profiles[i].clone()).collect())
    }

    /// Labels of every profile, failing on the first unlabeled one.
    pub fn labels(&self) -> Result<Vec<&str>> {
        self.profiles
            .iter()
            .enumerate()
            .map(|(index, p)| p.label.as_deref().ok_or(Error::Unlabeled { index }))
            .collect()
    }
}

/// Which key names a dataset record uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FieldMapping {
    /// `followers`, `following`, `tweets`, `description`, `label`.
    #[default]
    Native,
    /// Raw API user objects: `followers_count`, `friends_count`, `statuses_count`, `description`.
    TwitterApi,
}

impl FieldMapping {
    fn keys(self) -> [&'static str; 3] {
        match self {
            FieldMapping::Native => ["followers", "following", "tweets"],
            FieldMapping::TwitterApi => ["followers_count", "friends_count", "statuses_count"],
        }
    }
}

/// Reads one JSON object per line. Blank lines are skipped but still counted.
pub fn parse_dataset<R: BufRead>(reader: R, mapping: FieldMapping) -> Result<LabeledDataset> {
    let mut profiles = Vec::new();
    for (idx, raw) in reader.split(b'\n').enumerate() {
        let line_no = idx + 1;
        let raw = raw?;
        let line = String::from_utf8(raw).map_err(|_| Error::Parse {
            line: line_no,
            message: "invalid UTF-8".into(),
        })?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        profiles.push(parse_record(line, line_no, mapping)?);
    }
    Ok(LabeledDataset::new(profiles))
}

fn parse_record(line: &str, line_no: usize, mapping: FieldMapping) -> Result<UserProfile> {
    let parse_err = |message: String| Error::Parse {
        line: line_no,
        message,
    };
    let value: Value = serde_json::from_str(line).map_err(|e| parse_err(e.to_string()))?;
    let Value::Object(obj) = value else {
        return Err(parse_err("record is not a JSON object".into()));
    };

    let [fk, gk, tk] = mapping.keys();
    let followers = read_count(&obj, fk, line_no)?;
    let following = read_count(&obj, gk, line_no)?;
    let tweets = read_count(&obj, tk, line_no)?;

    let description = match obj.get("description") {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(parse_err("`description` must be a string".into())),
    };
    let chars = description.chars().count();
    if chars > MAX_DESCRIPTION_CHARS {
        return Err(Error::DescriptionTooLong {
            line: line_no,
            chars,
        });
    }

    let label = match obj.get("label") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) if s.is_empty() => return Err(Error::EmptyLabel { line: line_no }),
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(parse_err("`label` must be a string".into())),
    };

    Ok(UserProfile {
        followers,
        following,
        tweets,
        description,
        label,
    })
}

fn read_count(obj: &Map<String, Value>, key: &'static str, line: usize) -> Result<u64> {
    match obj.get(key) {
        None | Some(Value::Null) => Err(Error::Parse {
            line,
            message: format!("missing field `{key}`"),
        }),
        Some(Value::Number(n)) => {
            if let Some(v) = n.as_u64() {
                Ok(v)
            } else if let Some(v) = n.as_i64() {
                Err(Error::NegativeCount {
                    line,
                    field: key,
                    value: v,
                })
            } else {
                Err(Error::Parse {
                    line,
                    message: format!("`{key}` must be a non-negative integer, got {n}"),
                })
            }
        }
        Some(other) => Err(Error::Parse {
            line,
            message: format!("`{key}` must be a non-negative integer, got {other}"),
        }),
    }
}

/// Writes the dataset in the native line format accepted by [`parse_dataset`].
pub fn serialize_dataset<W: Write>(dataset: &LabeledDataset, mut out: W) -> Result<()> {
    for profile in dataset.profiles() {
        serde_json::to_writer(&mut out, profile)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Lowercases, turns every non letter/digit character into a separator and
/// splits into non-empty tokens.
pub fn normalize_description(text: &str) -> Vec<String> {
    let mut cleaned = String::with_capacity(text.len());
    for c in text.chars() {
        if c.is_alphanumeric() {
            // lowercasing can emit combining marks (e.g. U+0130), which are separators
            for l in c.to_lowercase() {
                cleaned.push(if l.is_alphanumeric() { l } else { ' ' });
            }
        } else {
            cleaned.push(' ');
        }
    }
    cleaned.split_whitespace().map(str::to_owned).collect()
}
