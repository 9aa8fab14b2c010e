use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{normalize_description, LabeledDataset};
use crate::features::{follower_ratio, log_bin_count, Bin};
use crate::scalar::Scalar;

/// Summary statistics of a profile corpus.
///
/// Fractions and means are `None` when there is nothing to average over.
/// Character counts are taken on the raw description, word counts on
/// normalized tokens.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats<F: Scalar> {
    pub total_profiles: usize,
    pub nonempty_descriptions: usize,
    pub frac_nonempty_description: Option<F>,
    pub mean_description_chars: Option<F>,
    pub mean_description_words: Option<F>,
    /// token count -> number of profiles with a non-empty description
    pub word_count_histogram: BTreeMap<usize, usize>,
    /// `followers`, `following`, `tweets`, `ratio` -> bin -> profiles
    pub binned_histograms: BTreeMap<String, BTreeMap<Bin, usize>>,
}

pub fn corpus_stats<F: Scalar>(dataset: &LabeledDataset) -> CorpusStats<F> {
    let total = dataset.len();
    let mut nonempty = 0usize;
    let mut chars = 0usize;
    let mut words = 0usize;
    let mut word_hist = BTreeMap::new();
    let mut binned: BTreeMap<String, BTreeMap<Bin, usize>> =
        ["followers", "following", "tweets", "ratio"]
            .into_iter()
            .map(|k| (k.to_string(), BTreeMap::new()))
            .collect();

    for p in dataset.profiles() {
        if !p.description.is_empty() {
            nonempty += 1;
            chars += p.description.chars().count();
            let n_words = normalize_description(&p.description).len();
            words += n_words;
            *word_hist.entry(n_words).or_insert(0) += 1;
        }
        let bins = [
            ("followers", log_bin_count(p.followers)),
            ("following", log_bin_count(p.following)),
            ("tweets", log_bin_count(p.tweets)),
            ("ratio", follower_ratio(p)),
        ];
        for (name, bin) in bins {
            *binned.get_mut(name).unwrap().entry(bin).or_insert(0) += 1;
        }
    }

    let ratio = |num: usize, den: usize| (den > 0).then(|| F::from_count(num) / F::from_count(den));
    CorpusStats {
        total_profiles: total,
        nonempty_descriptions: nonempty,
        frac_nonempty_description: ratio(nonempty, total),
        mean_description_chars: ratio(chars, nonempty),
        mean_description_words: ratio(words, nonempty),
        word_count_histogram: word_hist,
        binned_histograms: binned,
    }
}

fn fmt_opt<F: Scalar>(v: Option<F>, digits: usize) -> String {
    match v {
        Some(x) => format!("{x:.digits$}"),
        None => "undefined".to_string(),
    }
}

impl<F: Scalar> fmt::Display for CorpusStats<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.total_profiles == 0 {
            writeln!(f, "empty dataset: 0 profiles")?;
        }
        writeln!(f, "profiles: {}", self.total_profiles)?;
        writeln!(
            f,
            "non-empty descriptions: {} ({})",
            self.nonempty_descriptions,
            fmt_opt(self.frac_nonempty_description, 4)
        )?;
        writeln!(
            f,
            "mean description length (raw chars, non-empty only): {}",
            fmt_opt(self.mean_description_chars, 2)
        )?;
        writeln!(
            f,
            "mean description words (normalized tokens, non-empty only): {}",
            fmt_opt(self.mean_description_words, 2)
        )?;
        writeln!(f)?;
        writeln!(f, "users vs. number of words")?;
        for (w, n) in &self.word_count_histogram {
            writeln!(f, "  {w:>4}  {n}")?;
        }
        for (name, hist) in &self.binned_histograms {
            writeln!(f)?;
            writeln!(f, "users vs. {name} bin")?;
            for (bin, n) in hist {
                writeln!(f, "  {:>6}  {n}", bin.to_string())?;
            }
        }
        Ok(())
    }
}
