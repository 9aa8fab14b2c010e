//! Seeded generator of labeled corpora with planted signal.
//!
//! Each label draws its counts log-uniformly from its own ranges and its
//! description from a list of signal words, each included independently with
//! its own probability, plus filler words shared by every label.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{LabeledDataset, UserProfile, MAX_DESCRIPTION_CHARS};
use crate::error::{Error, Result};

/// Inclusive integer range sampled log-uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRange {
    pub min: u64,
    pub max: u64,
}

impl Default for CountRange {
    fn default() -> Self {
        CountRange {
            min: 1,
            max: 100_000,
        }
    }
}

impl CountRange {
    pub fn new(min: u64, max: u64) -> Self {
        CountRange { min, max }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> u64 {
        let lo = (self.min as f64 + 1.0).ln();
        let hi = (self.max as f64 + 1.0).ln();
        let u: f64 = rng.gen();
        let x = (lo + u * (hi - lo)).exp() - 1.0;
        (x.floor().max(0.0) as u64).clamp(self.min, self.max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignalWord {
    pub word: String,
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelSpec {
    pub label: String,
    #[serde(default)]
    pub followers: CountRange,
    #[serde(default)]
    pub following: CountRange,
    #[serde(default)]
    pub tweets: CountRange,
    #[serde(default)]
    pub signal_words: Vec<SignalWord>,
}

impl LabelSpec {
    pub fn new(label: impl Into<String>) -> Self {
        LabelSpec {
            label: label.into(),
            followers: CountRange::default(),
            following: CountRange::default(),
            tweets: CountRange::default(),
            signal_words: Vec::new(),
        }
    }

    pub fn signal(mut self, word: impl Into<String>, p: f64) -> Self {
        self.signal_words.push(SignalWord {
            word: word.into(),
            p,
        });
        self
    }

    pub fn counts(
        mut self,
        followers: CountRange,
        following: CountRange,
        tweets: CountRange,
    ) -> Self {
        self.followers = followers;
        self.following = following;
        self.tweets = tweets;
        self
    }
}

fn default_filler_range() -> CountRange {
    CountRange { min: 0, max: 3 }
}

/// Generation parameters, also the JSON document read by `ambient datagen`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub labels: Vec<LabelSpec>,
    #[serde(default)]
    pub filler_words: Vec<String>,
    #[serde(default = "default_filler_range")]
    pub filler_per_profile: CountRange,
}

impl SyntheticSpec {
    pub fn new(labels: Vec<LabelSpec>) -> Self {
        SyntheticSpec {
            labels,
            filler_words: Vec::new(),
            filler_per_profile: default_filler_range(),
        }
    }

    pub fn with_filler<I, S>(mut self, words: I, per_profile: CountRange) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.filler_words = words.into_iter().map(Into::into).collect();
        self.filler_per_profile = per_profile;
        self
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.labels.is_empty() {
            return bad("synthetic spec has no labels".into());
        }
        let mut seen = BTreeSet::new();
        for l in &self.labels {
            if l.label.is_empty() || !seen.insert(l.label.as_str()) {
                return bad(format!("label `{}` is empty or duplicated", l.label));
            }
            for r in [l.followers, l.following, l.tweets] {
                if r.min > r.max {
                    return bad(format!(
                        "label `{}`: range min {} > max {}",
                        l.label, r.min, r.max
                    ));
                }
            }
            for w in &l.signal_words {
                if !(0.0..=1.0).contains(&w.p) || w.word.is_empty() {
                    return bad(format!("label `{}`: bad signal word {:?}", l.label, w));
                }
            }
        }
        if self.filler_per_profile.min > self.filler_per_profile.max {
            return bad("filler_per_profile min > max".into());
        }
        Ok(())
    }
}

/// Generates `n` profiles; labels are assigned round-robin in lexicographic order.
pub fn generate_synthetic(spec: &SyntheticSpec, n: usize, seed: u64) -> Result<LabeledDataset> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut labels: Vec<&LabelSpec> = spec.labels.iter().collect();
    labels.sort_by(|a, b| a.label.cmp(&b.label));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut profiles = Vec::with_capacity(n);
    for i in 0..n {
        let ls = labels[i % labels.len()];
        let followers = ls.followers.sample(&mut rng);
        let following = ls.following.sample(&mut rng);
        let tweets = ls.tweets.sample(&mut rng);

        let mut words: Vec<&str> = ls
            .signal_words
            .iter()
            .filter(|w| rng.gen_bool(w.p))
            .map(|w| w.word.as_str())
            .collect();
        if !spec.filler_words.is_empty() {
            let k = rng.gen_range(spec.filler_per_profile.min..=spec.filler_per_profile.max);
            for _ in 0..k {
                words.push(spec.filler_words.choose(&mut rng).unwrap());
            }
        }
        words.shuffle(&mut rng);
        let mut description = words.join(" ");
        while description.chars().count() > MAX_DESCRIPTION_CHARS {
            words.pop();
            description = words.join(" ");
        }

        profiles.push(UserProfile {
            followers,
            following,
            tweets,
            description,
            label: Some(ls.label.clone()),
        });
    }
    Ok(LabeledDataset::new(profiles))
}
