//! Subcommands of the `ambient` binary.

use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ambient_core::classifiers::{
    informative_features, ClassifierConfig, ClassifierKind, DecisionTreeParams, Example,
    Hyperparams, Model, SvmParams,
};
use ambient_core::corpus::{
    corpus_stats, generate_synthetic, parse_dataset, serialize_dataset, FieldMapping,
    LabeledDataset, SyntheticSpec,
};
use ambient_core::evaluation::{cross_validate, run_ablation, CvOptions};
use ambient_core::features::{build_vocabulary, FeatureMode, FeatureSchema, Vocabulary};
use ambient_core::model_file::{ModelFile, TrainingMetadata};
use ambient_core::Real;

#[derive(Debug, Parser)]
#[command(
    name = "ambient",
    version,
    about = "Classify social-media accounts from profile metadata"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Corpus statistics and binned histograms
    Stats {
        dataset: PathBuf,
        #[arg(long, value_enum, default_value_t = Mapping::Native)]
        mapping: Mapping,
        /// Write full-precision statistics as JSON
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Top-k description words, one per line
    Vocab {
        dataset: PathBuf,
        #[arg(long, default_value_t = 50)]
        top_k: usize,
        #[arg(long, value_enum, default_value_t = Mapping::Native)]
        mapping: Mapping,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train on a whole labeled dataset and save the model
    Train {
        dataset: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// k-fold cross-validation, or the feature-ablation grid
    Evaluate {
        dataset: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 4)]
        folds: usize,
        /// Stratify folds by label
        #[arg(long)]
        stratified: bool,
        /// Cross-validate every classifier under every feature mode
        #[arg(long)]
        ablation: bool,
        /// Write the full-precision report as JSON
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print one predicted label per dataset record
    Predict {
        model: PathBuf,
        dataset: PathBuf,
        #[arg(long, value_enum, default_value_t = Mapping::Native)]
        mapping: Mapping,
    },
    /// Most informative features of a Naive Bayes model
    Features {
        model: PathBuf,
        #[arg(long, default_value_t = 10)]
        top: usize,
    },
    /// Generate a synthetic labeled dataset from a JSON spec
    Datagen {
        spec: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mapping {
    Native,
    TwitterApi,
}

impl From<Mapping> for FieldMapping {
    fn from(m: Mapping) -> Self {
        match m {
            Mapping::Native => FieldMapping::Native,
            Mapping::TwitterApi => FieldMapping::TwitterApi,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// nb | dt | svm
    #[arg(long, default_value = "nb")]
    pub model: ClassifierKind,
    /// numerical | numerical+ratio | full
    #[arg(long, default_value = "full")]
    pub features: FeatureMode,
    /// Vocabulary file (one word per line) used instead of the top-k words
    #[arg(long)]
    pub vocab: Option<PathBuf>,
    #[arg(long, default_value_t = 50)]
    pub top_k: usize,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: Real,
    #[arg(long, default_value_t = 10)]
    pub max_depth: usize,
    #[arg(long, default_value_t = 10)]
    pub min_support: usize,
    #[arg(long, default_value_t = 0.05)]
    pub entropy_cutoff: Real,
    #[arg(long, default_value_t = 1e-4)]
    pub lambda: Real,
    #[arg(long, default_value_t = 100)]
    pub epochs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Mapping::Native)]
    pub mapping: Mapping,
}

impl ModelArgs {
    fn hyperparams(&self) -> Hyperparams<Real> {
        Hyperparams {
            alpha: self.alpha,
            tree: DecisionTreeParams {
                max_depth: self.max_depth,
                min_support: self.min_support,
                entropy_cutoff: self.entropy_cutoff,
            },
            svm: SvmParams {
                lambda: self.lambda,
                epochs: self.epochs,
                seed: self.seed,
            },
        }
    }

    fn vocabulary_file(&self) -> Result<Option<Vocabulary>> {
        self.vocab
            .as_ref()
            .map(|p| {
                let f =
                    File::open(p).with_context(|| format!("opening vocabulary {}", p.display()))?;
                Vocabulary::read(BufReader::new(f))
                    .with_context(|| format!("reading vocabulary {}", p.display()))
            })
            .transpose()
    }
}

fn load_dataset(path: &Path, mapping: Mapping) -> Result<LabeledDataset> {
    let f = File::open(path).with_context(|| format!("opening dataset {}", path.display()))?;
    parse_dataset(BufReader::new(f), mapping.into())
        .with_context(|| format!("reading dataset {}", path.display()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Stats {
            dataset,
            mapping,
            report,
        } => cmd_stats(&dataset, mapping, report.as_deref(), out),
        Command::Vocab {
            dataset,
            top_k,
            mapping,
            out: path,
        } => cmd_vocab(&dataset, top_k, mapping, path.as_deref(), out),
        Command::Train {
            dataset,
            model,
            out: path,
        } => cmd_train(&dataset, &model, &path, out),
        Command::Evaluate {
            dataset,
            model,
            folds,
            stratified,
            ablation,
            report,
        } => cmd_evaluate(
            &dataset,
            &model,
            folds,
            stratified,
            ablation,
            report.as_deref(),
            out,
        ),
        Command::Predict {
            model,
            dataset,
            mapping,
        } => cmd_predict(&model, &dataset, mapping, out),
        Command::Features { model, top } => cmd_features(&model, top, out),
        Command::Datagen {
            spec,
            n,
            seed,
            out: path,
        } => cmd_datagen(&spec, n, seed, path.as_deref(), out),
    }
}

pub fn cmd_stats(
    dataset: &Path,
    mapping: Mapping,
    report: Option<&Path>,
    out: &mut dyn Write,
) -> Result<()> {
    let ds = load_dataset(dataset, mapping)?;
    let stats = corpus_stats::<Real>(&ds);
    writeln!(out, "{stats}")?;
    if let Some(path) = report {
        write_json(path, &stats)?;
    }
    Ok(())
}

pub fn cmd_vocab(
    dataset: &Path,
    top_k: usize,
    mapping: Mapping,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<()> {
    let ds = load_dataset(dataset, mapping)?;
    let vocab = build_vocabulary(&ds, top_k)?;
    match path {
        Some(p) => {
            let mut buf = Vec::new();
            vocab.write(&mut buf)?;
            fs::write(p, buf).with_context(|| format!("writing {}", p.display()))?;
        }
        None => vocab.write(out)?,
    }
    Ok(())
}

pub fn cmd_train(
    dataset: &Path,
    args: &ModelArgs,
    model_path: &Path,
    out: &mut dyn Write,
) -> Result<()> {
    let ds = load_dataset(dataset, args.mapping)?;
    let labels = ds.labels().context("training needs a labeled dataset")?;
    let vocabulary = match args.features {
        FeatureMode::Full => Some(match args.vocabulary_file()? {
            Some(v) => v,
            None => build_vocabulary(&ds, args.top_k)?,
        }),
        _ => None,
    };
    if vocabulary.as_ref().is_some_and(Vocabulary::is_empty) {
        log::warn!("vocabulary is empty: full mode reduces to numerical+ratio");
    }
    let (schema, fvs) = FeatureSchema::fit(args.features, vocabulary, ds.profiles())?;
    let examples: Vec<Example> = fvs
        .into_iter()
        .zip(labels.iter().map(|l| l.to_string()))
        .collect();
    let model =
        ClassifierConfig::for_kind(args.model, &args.hyperparams()).train(&schema, &examples)?;

    let correct = examples
        .iter()
        .map(|(fv, l)| model.predict(fv).map(|p| p == l))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|&ok| ok)
        .count();
    writeln!(
        out,
        "training accuracy: {:.1}% ({} of {})",
        100.0 * correct as f64 / examples.len() as f64,
        correct,
        examples.len()
    )?;

    let file = ModelFile::new(
        model,
        TrainingMetadata {
            seed: args.seed,
            dataset_size: ds.len(),
            label_set: ds.label_set().to_vec(),
        },
    );
    file.save(model_path)
        .with_context(|| format!("writing model {}", model_path.display()))?;
    Ok(())
}

pub fn cmd_evaluate(
    dataset: &Path,
    args: &ModelArgs,
    folds: usize,
    stratified: bool,
    ablation: bool,
    report: Option<&Path>,
    out: &mut dyn Write,
) -> Result<()> {
    let ds = load_dataset(dataset, args.mapping)?;
    let opts = CvOptions {
        k: folds,
        seed: args.seed,
        stratified,
        vocab_size: args.top_k,
        external_vocabulary: args.vocabulary_file()?,
    };
    let hp = args.hyperparams();
    if ablation {
        let table = run_ablation(&ds, &hp, &opts);
        writeln!(out, "{table}")?;
        if let Some(path) = report {
            write_json(path, &table)?;
        }
    } else {
        let config = ClassifierConfig::for_kind(args.model, &hp);
        let cv = cross_validate(&ds, &config, args.features, &opts)?;
        writeln!(out, "{cv}")?;
        if let Some(path) = report {
            write_json(path, &cv)?;
        }
    }
    Ok(())
}

fn load_model(path: &Path) -> Result<ModelFile<Real>> {
    ModelFile::load(path).with_context(|| format!("loading model {}", path.display()))
}

pub fn cmd_predict(
    model: &Path,
    dataset: &Path,
    mapping: Mapping,
    out: &mut dyn Write,
) -> Result<()> {
    let file = load_model(model)?;
    let ds = load_dataset(dataset, mapping)?;
    for (i, p) in ds.profiles().iter().enumerate() {
        let label = file
            .model
            .predict_profile(p)
            .with_context(|| format!("record {}", i + 1))?;
        writeln!(out, "{label}")?;
    }
    Ok(())
}

pub fn cmd_features(model: &Path, top: usize, out: &mut dyn Write) -> Result<()> {
    let file = load_model(model)?;
    let Model::NaiveBayes(nb) = &file.model else {
        bail!(
            "informative features require naive bayes (model is `{}`)",
            file.classifier
        );
    };
    for row in informative_features(nb, top)? {
        writeln!(out, "{row}")?;
    }
    Ok(())
}

pub fn cmd_datagen(
    spec: &Path,
    n: usize,
    seed: u64,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<()> {
    let text =
        fs::read_to_string(spec).with_context(|| format!("reading spec {}", spec.display()))?;
    let spec: SyntheticSpec =
        serde_json::from_str(&text).with_context(|| format!("parsing spec {}", spec.display()))?;
    let ds = generate_synthetic(&spec, n, seed)?;
    match path {
        Some(p) => {
            let mut buf = Vec::new();
            serialize_dataset(&ds, &mut buf)?;
            fs::write(p, buf).with_context(|| format!("writing {}", p.display()))?;
        }
        None => serialize_dataset(&ds, out)?,
    }
    Ok(())
}
