use std::collections::{BTreeSet, HashMap};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::corpus::{normalize_description, LabeledDataset};
use crate::error::{Error, Result};

pub const DEFAULT_VOCABULARY_SIZE: usize = 50;

/// Ordered list of description words used as binary features.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Vocabulary {
    words: Vec<String>,
    /// Corpus occurrence counts, aligned with `words`; absent for vocabularies
    /// loaded from a word list.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frequencies: Option<Vec<u64>>,
}

impl Vocabulary {
    /// Vocabulary from an explicit word list, order preserved. Each entry must
    /// already be a single normalized token.
    pub fn from_words<I, S>(words: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for w in words {
            let w = w.as_ref();
            let tokens = normalize_description(w);
            if tokens.len() != 1 || tokens[0] != w {
                return Err(Error::InvalidArgument(format!(
                    "vocabulary entry `{w}` is not a normalized token"
                )));
            }
            if !seen.insert(w.to_string()) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate vocabulary entry `{w}`"
                )));
            }
            out.push(w.to_string());
        }
        Ok(Vocabulary {
            words: out,
            frequencies: None,
        })
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn frequencies(&self) -> Option<&[u64]> {
        self.frequencies.as_deref()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Reads one word per line; blank lines are ignored.
    pub fn read<R: BufRead>(reader: R) -> Result<Self> {
        let mut words = Vec::new();
        for line in reader.lines() {
            let line = line?;
            let w = line.trim();
            if !w.is_empty() {
                words.push(w.to_string());
            }
        }
        Self::from_words(words)
    }

    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        for w in &self.words {
            writeln!(out, "{w}")?;
        }
        Ok(())
    }
}

/// Top-`k` tokens by occurrence count over all descriptions, ties broken
/// lexicographically.
pub fn build_vocabulary(dataset: &LabeledDataset, k: usize) -> Result<Vocabulary> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "vocabulary size must be at least 1".into(),
        ));
    }
    let mut counts: HashMap<String, u64> = HashMap::new();
    for p in dataset.profiles() {
        for tok in normalize_description(&p.description) {
            *counts.entry(tok).or_insert(0) += 1;
        }
    }
    let mut ranked: Vec<(String, u64)> = counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(k);
    let (words, freqs) = ranked.into_iter().unzip();
    Ok(Vocabulary {
        words,
        frequencies: Some(freqs),
    })
}
