//! Runs the `ambient` binary end to end.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

use ambient_core::corpus::{parse_dataset, FieldMapping};
use ambient_core::model_file::ModelFile;
use ambient_core::Real;

const SPEC: &str = r#"{
  "labels": [
    {"label": "m", "signal_words": [{"word": "music", "p": 0.9}]},
    {"label": "p", "signal_words": [{"word": "news", "p": 0.9}]},
    {"label": "s", "signal_words": [{"word": "sports", "p": 0.9}]}
  ],
  "filler_words": ["love", "life", "fan", "dad", "world", "coffee"],
  "filler_per_profile": {"min": 0, "max": 3}
}"#;

fn ambient(args: &[&dyn AsRef<std::ffi::OsStr>]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ambient"));
    for a in args {
        cmd.arg(a);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    assert!(
        !out.status.success(),
        "expected failure, stdout: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

/// Generates a planted-signal dataset of `n` profiles.
fn planted(dir: &TempDir, n: usize, seed: u64) -> PathBuf {
    let spec = write(dir, "spec.json", SPEC);
    let data = dir.path().join(format!("planted-{n}-{seed}.jsonl"));
    stdout(&ambient(&[
        &"datagen",
        &spec,
        &"--n",
        &n.to_string(),
        &"--seed",
        &seed.to_string(),
        &"--out",
        &data,
    ]));
    data
}

fn profile_line(f: u64, g: u64, t: u64, desc: &str, label: &str) -> String {
    format!(
        r#"{{"followers": {f}, "following": {g}, "tweets": {t}, "description": "{desc}", "label": "{label}"}}"#
    )
}

#[test]
fn stats_reports_fraction_and_writes_json() {
    let dir = TempDir::new().unwrap();
    let lines = [
        profile_line(10, 0, 0, "hi there", "a"),
        profile_line(10, 0, 0, "", "a"),
        profile_line(10, 0, 0, "a b c", "b"),
        profile_line(10, 0, 0, "x", "b"),
    ];
    let data = write(&dir, "four.jsonl", &lines.join("\n"));
    let report = dir.path().join("stats.json");
    let text = stdout(&ambient(&[&"stats", &data, &"--report", &report]));
    assert!(text.contains("profiles: 4"), "{text}");
    assert!(
        text.contains("non-empty descriptions: 3 (0.7500)"),
        "{text}"
    );
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(json["frac_nonempty_description"], 0.75);
}

#[test]
fn stats_on_empty_file_succeeds() {
    let dir = TempDir::new().unwrap();
    let data = write(&dir, "empty.jsonl", "");
    let text = stdout(&ambient(&[&"stats", &data]));
    assert!(text.starts_with("empty dataset"), "{text}");
}

#[test]
fn malformed_line_is_named() {
    let dir = TempDir::new().unwrap();
    let text = format!(
        "{}\n{}\n{{not json\n",
        profile_line(1, 1, 1, "", "a"),
        profile_line(2, 2, 2, "", "b")
    );
    let data = write(&dir, "bad.jsonl", &text);
    let err = stderr(&ambient(&[&"stats", &data]));
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn twitter_api_mapping() {
    let dir = TempDir::new().unwrap();
    let line = r#"{"followers_count": 120, "friends_count": 12, "statuses_count": 3000, "description": "jazz"}"#;
    let data = write(&dir, "api.jsonl", line);
    let text = stdout(&ambient(&[&"stats", &data, &"--mapping", &"twitter-api"]));
    assert!(text.contains("profiles: 1"), "{text}");
    // the native mapping needs `followers`
    let err = stderr(&ambient(&[&"stats", &data]));
    assert!(err.contains("followers"), "{err}");
}

#[test]
fn datagen_is_deterministic_balanced_and_reparses() {
    let dir = TempDir::new().unwrap();
    let a = planted(&dir, 300, 5);
    let spec = dir.path().join("spec.json");
    let b = stdout(&ambient(&[
        &"datagen", &spec, &"--n", &"300", &"--seed", &"5",
    ]));
    assert_eq!(fs::read_to_string(&a).unwrap(), b);
    let ds = parse_dataset(b.as_bytes(), FieldMapping::Native).unwrap();
    assert_eq!(ds.len(), 300);
    for l in ["m", "p", "s"] {
        let n = ds
            .profiles()
            .iter()
            .filter(|p| p.label.as_deref() == Some(l))
            .count();
        assert!((99..=101).contains(&n), "{l}: {n}");
    }
}

#[test]
fn train_then_predict_recovers_planted_labels() {
    let dir = TempDir::new().unwrap();
    let data = planted(&dir, 300, 1);
    let model = dir.path().join("nb.json");
    let text = stdout(&ambient(&[
        &"train",
        &data,
        &"--model",
        &"nb",
        &"--features",
        &"full",
        &"--out",
        &model,
    ]));
    assert!(text.starts_with("training accuracy: "), "{text}");

    // training predictions survive the file round trip
    let file = ModelFile::<Real>::load(&model).unwrap();
    let ds = parse_dataset(fs::read(&data).unwrap().as_slice(), FieldMapping::Native).unwrap();
    let predicted = stdout(&ambient(&[&"predict", &model, &data]));
    let direct: Vec<&str> = ds
        .profiles()
        .iter()
        .map(|p| file.model.predict_profile(p).unwrap())
        .collect();
    assert_eq!(predicted.lines().collect::<Vec<_>>(), direct);

    let probes = [
        r#"{"followers": 50, "following": 50, "tweets": 50, "description": "I love music"}"#,
        r#"{"followers": 50, "following": 50, "tweets": 50, "description": "daily NEWS"}"#,
        r#"{"followers": 50, "following": 50, "tweets": 50, "description": "sports!"}"#,
    ];
    let probe = write(&dir, "probe.jsonl", &probes.join("\n"));
    assert_eq!(stdout(&ambient(&[&"predict", &model, &probe])), "m\np\ns\n");
}

#[test]
fn predict_on_empty_input_prints_nothing() {
    let dir = TempDir::new().unwrap();
    let data = planted(&dir, 60, 2);
    let model = dir.path().join("dt.json");
    stdout(&ambient(&[
        &"train", &data, &"--model", &"dt", &"--out", &model,
    ]));
    let empty = write(&dir, "empty.jsonl", "");
    assert_eq!(stdout(&ambient(&[&"predict", &model, &empty])), "");
}

#[test]
fn predict_names_missing_field() {
    let dir = TempDir::new().unwrap();
    let data = planted(&dir, 60, 2);
    let model = dir.path().join("nb.json");
    stdout(&ambient(&[&"train", &data, &"--out", &model]));
    let bad = write(&dir, "bad.jsonl", r#"{"followers": 1, "following": 2}"#);
    let err = stderr(&ambient(&[&"predict", &model, &bad]));
    assert!(err.contains("tweets"), "{err}");
}

#[test]
fn svm_training_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let data = planted(&dir, 90, 3);
    let run = |name: &str| {
        let out = dir.path().join(name);
        stdout(&ambient(&[
            &"train",
            &data,
            &"--model",
            &"svm",
            &"--seed",
            &"7",
            &"--epochs",
            &"20",
            &"--out",
            &out,
        ]));
        fs::read(out).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn empty_descriptions_give_empty_vocabulary_with_warning() {
    let dir = TempDir::new().unwrap();
    let lines: Vec<String> = (0..6)
        .map(|i| {
            profile_line(
                10u64.pow(i % 3),
                5,
                5,
                "",
                if i % 2 == 0 { "a" } else { "b" },
            )
        })
        .collect();
    let data = write(&dir, "nodesc.jsonl", &lines.join("\n"));
    let model = dir.path().join("m.json");
    let out = ambient(&[&"train", &data, &"--features", &"full", &"--out", &model]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("vocabulary is empty"));
    let file = ModelFile::<Real>::load(&model).unwrap();
    assert!(file.model.schema().vocabulary().unwrap().is_empty());
}

#[test]
fn unlabeled_dataset_cannot_train() {
    let dir = TempDir::new().unwrap();
    let data = write(
        &dir,
        "u.jsonl",
        r#"{"followers": 1, "following": 2, "tweets": 3}"#,
    );
    let err = stderr(&ambient(&[
        &"train",
        &data,
        &"--out",
        &dir.path().join("m.json"),
    ]));
    assert!(err.contains("labeled"), "{err}");
}

#[test]
fn unknown_flag_value_is_rejected() {
    let dir = TempDir::new().unwrap();
    let data = planted(&dir, 30, 1);
    let out = ambient(&[
        &"train",
        &data,
        &"--model",
        &"knn",
        &"--out",
        &dir.path().join("m.json"),
    ]);
    assert!(!out.status.success());
}

#[test]
fn evaluate_echoes_fold_sizes() {
    let dir = TempDir::new().unwrap();
    let lines: Vec<String> = (0..10)
        .map(|i| profile_line(10 + i, 5, 5, "", if i % 2 == 0 { "a" } else { "b" }))
        .collect();
    let data = write(&dir, "ten.jsonl", &lines.join("\n"));
    let report = dir.path().join("cv.json");
    let text = stdout(&ambient(&[
        &"evaluate",
        &data,
        &"--model",
        &"nb",
        &"--features",
        &"numerical",
        &"--folds",
        &"4",
        &"--report",
        &report,
    ]));
    assert!(text.contains("Accuracy: "), "{text}");
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    let sizes: Vec<u64> = json["folds"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["test_size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, [3, 3, 2, 2]);
}

#[test]
fn evaluate_ablation_prints_grid() {
    let dir = TempDir::new().unwrap();
    let data = planted(&dir, 120, 4);
    let text = stdout(&ambient(&[
        &"evaluate",
        &data,
        &"--ablation",
        &"--epochs",
        &"10",
    ]));
    for row in [
        "numerical",
        "numerical+ratio",
        "numerical+ratio+description",
    ] {
        assert!(
            text.lines().any(|l| l.starts_with(row)),
            "{row} missing in\n{text}"
        );
    }
    for col in ["DT", "SVM", "NB"] {
        assert!(text.contains(col), "{text}");
    }
}

#[test]
fn evaluate_is_byte_identical_per_seed() {
    let dir = TempDir::new().unwrap();
    let data = planted(&dir, 80, 6);
    let run = |seed: &str| {
        stdout(&ambient(&[
            &"evaluate",
            &data,
            &"--model",
            &"svm",
            &"--epochs",
            &"10",
            &"--seed",
            &seed,
        ]))
    };
    assert_eq!(run("3"), run("3"));
}

#[test]
fn features_lists_signal_words_and_caps_rows() {
    let dir = TempDir::new().unwrap();
    let data = planted(&dir, 300, 8);
    let model = dir.path().join("nb.json");
    stdout(&ambient(&[&"train", &data, &"--out", &model]));
    let text = stdout(&ambient(&[&"features", &model, &"--top", &"5"]));
    assert_eq!(text.lines().count(), 5);
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("contains("), "{first}");
    assert!(first.ends_with(" : 1.0"), "{first}");

    let all = stdout(&ambient(&[&"features", &model, &"--top", &"100000"]));
    let n = all.lines().count();
    assert!(n > 5 && n < 100000);
    assert!(all.lines().all(|l| !l.trim().is_empty()));
}

#[test]
fn features_require_naive_bayes() {
    let dir = TempDir::new().unwrap();
    let data = planted(&dir, 60, 8);
    let model = dir.path().join("dt.json");
    stdout(&ambient(&[
        &"train", &data, &"--model", &"dt", &"--out", &model,
    ]));
    let err = stderr(&ambient(&[&"features", &model]));
    assert!(
        err.contains("informative features require naive bayes"),
        "{err}"
    );
}

#[test]
fn vocab_file_feeds_training() {
    let dir = TempDir::new().unwrap();
    let data = planted(&dir, 120, 9);
    let vocab = dir.path().join("vocab.txt");
    stdout(&ambient(&[
        &"vocab", &data, &"--top-k", &"3", &"--out", &vocab,
    ]));
    let words = fs::read_to_string(&vocab).unwrap();
    assert_eq!(words.lines().count(), 3);
    let model = dir.path().join("nb.json");
    stdout(&ambient(&[
        &"train", &data, &"--vocab", &vocab, &"--out", &model,
    ]));
    let file = ModelFile::<Real>::load(&model).unwrap();
    let used: Vec<&str> = file
        .model
        .schema()
        .vocabulary()
        .unwrap()
        .words()
        .iter()
        .map(String::as_str)
        .collect();
    assert_eq!(used, words.lines().collect::<Vec<_>>());
}

#[test]
fn corrupt_and_future_models_are_rejected() {
    let dir = TempDir::new().unwrap();
    let data = planted(&dir, 60, 10);
    let model = dir.path().join("nb.json");
    stdout(&ambient(&[&"train", &data, &"--out", &model]));

    let text = fs::read_to_string(&model).unwrap();
    let truncated = write(&dir, "cut.json", &text[..text.len() / 2]);
    stderr(&ambient(&[&"predict", &truncated, &data]));

    let future = text.replacen("\"format_version\": 1", "\"format_version\": 99", 1);
    let future = write(&dir, "future.json", &future);
    let err = stderr(&ambient(&[&"predict", &future, &data]));
    assert!(err.contains("version 99"), "{err}");
}
