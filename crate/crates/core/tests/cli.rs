mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn finorient(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finorient"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Output lines without the `# ` configuration header.
fn body(o: &Output) -> Vec<String> {
    stdout(o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const EVAL_ARGS: &[&str] = &[
    "eval",
    "--lexicon",
    "data/demo_lexicon.tsv",
    "--general-list",
    "data/general_polarity.tsv",
    "--financial-list",
    "data/financial_polarity.tsv",
    "--corpus",
    "data/toy_corpus.txt",
    "--format",
    "tsv",
];

#[test]
fn eval_is_deterministic() {
    let a = finorient(EVAL_ARGS);
    let b = finorient(EVAL_ARGS);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert!(out.contains("# seed = 20140101\n"));
}

#[test]
fn eval_seed_changes_folds_only() {
    let mut args = EVAL_ARGS.to_vec();
    args.extend(["--seed", "1"]);
    let o = finorient(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(!body(&o).is_empty());
}

#[test]
fn gold_all_agree_threshold_on_disagreeing_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.tsv");
    fs::write(
        &m,
        "id\ta\tb\tc\ns1\tpositive\tneutral\tnegative\ns2\tpositive\tnegative\tneutral\n",
    )
    .unwrap();
    let o = finorient(&["gold", "--matrix", path(&m), "--threshold", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(body(&o).is_empty(), "{:?}", body(&o));
    assert!(!o.stderr.is_empty());
}

#[test]
fn gold_from_matrix_with_texts_is_a_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gold.txt");
    let o = finorient(&[
        "gold",
        "--matrix",
        "data/toy_annotations.tsv",
        "--texts",
        "data/toy_texts.tsv",
        "--threshold",
        "75",
        "--out",
        path(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let corpus = finorient::eval::load_corpus(&fs::read(&out).unwrap()).unwrap();
    assert!(!corpus.is_empty());
    assert!(!fs::read_to_string(&out).unwrap().starts_with('#'));
}

#[test]
fn financial_wordcount_without_general_entries_is_neutral() {
    let dir = tempfile::tempdir().unwrap();
    let lex = dir.path().join("fin.tsv");
    fs::write(&lex, "\tprofit\t-\tFinPositiveIfUp\n\tcosts\t-\tFinNegativeIfUp\n").unwrap();
    let o = finorient(&[
        "predict",
        "--baseline",
        "w-financial",
        "--lexicon",
        path(&lex),
        "--corpus",
        "data/toy_corpus.txt",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let lines = body(&o);
    assert_eq!(lines.len(), 60);
    assert!(lines.iter().all(|l| l.ends_with("\tneutral")), "{lines:?}");
}

#[test]
fn extract_then_predict_from_entities() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("model.txt");
    let raw = dir.path().join("raw.txt");
    let ents = dir.path().join("ents.tsv");
    let lex = ["--lexicon", "data/demo_lexicon.tsv"];
    let o = finorient(
        &[
            &["train"][..],
            &lex,
            &["--corpus", "data/toy_corpus.txt", "--out", path(&model)],
        ]
        .concat(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    fs::write(
        &raw,
        "Operating profit rose to EUR 5 mn\nNet sales fell sharply\nThe company is based in Espoo\n",
    )
    .unwrap();
    let o = finorient(&[&["extract"][..], &lex, &["--raw", path(&raw)]].concat());
    assert_eq!(o.status.code(), Some(0));
    fs::write(&ents, &o.stdout).unwrap();
    let via_entities = finorient(&["predict", "--model", path(&model), "--from-entities", path(&ents)]);
    let via_raw = finorient(&[&["predict"][..], &lex, &["--model", path(&model), "--raw", path(&raw)]].concat());
    assert_eq!(
        via_entities.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&via_entities.stderr)
    );
    assert_eq!(body(&via_entities), body(&via_raw));
    let lines = body(&via_raw);
    let labels: Vec<&str> = lines.iter().map(|l| l.rsplit('\t').next().unwrap()).collect();
    assert_eq!(labels, ["positive", "negative", "neutral"]);
}

#[test]
fn train_predict_round_trip_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("model.txt");
    let o = finorient(&[
        "train",
        "--lexicon",
        "data/demo_lexicon.tsv",
        "--corpus",
        "data/toy_corpus.txt",
        "--out",
        path(&model),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let p = finorient(&[
        "predict",
        "--lexicon",
        "data/demo_lexicon.tsv",
        "--model",
        path(&model),
        "--corpus",
        "data/toy_corpus.txt",
    ]);
    assert_eq!(p.status.code(), Some(0));
    let file = finorient::classifier::load(&fs::read_to_string(&model).unwrap()).unwrap();
    assert_eq!(file.meta("kind"), Some("lps"));
    assert_eq!(body(&p).len(), 60);
}

#[test]
fn usage_and_data_exit_codes() {
    assert_eq!(finorient(&[]).status.code(), Some(1));
    assert_eq!(finorient(&["eval"]).status.code(), Some(1));
    assert_eq!(
        finorient(&["gold", "--matrix", "data/toy_annotations.tsv", "--threshold", "80"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        finorient(&["lexicon", "validate", "no/such/file.tsv"]).status.code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tsv");
    fs::write(&bad, "\tprofit\t-\tNotAClass\n").unwrap();
    let o = finorient(&["lexicon", "validate", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    let model = dir.path().join("model.txt");
    fs::write(&model, "finorient-model 1\nc 1\n").unwrap();
    let o = finorient(&[
        "predict",
        "--lexicon",
        "data/demo_lexicon.tsv",
        "--model",
        path(&model),
        "--corpus",
        "data/toy_corpus.txt",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn inputs_are_not_modified() {
    let files = [
        "data/demo_lexicon.tsv",
        "data/toy_corpus.txt",
        "data/toy_annotations.tsv",
        "data/toy_texts.tsv",
    ];
    let before: Vec<Vec<u8>> = files
        .iter()
        .map(|f| fs::read(common::data_path(&f[5..])).unwrap())
        .collect();
    finorient(EVAL_ARGS);
    finorient(&[
        "eval",
        "--lexicon",
        "data/demo_lexicon.tsv",
        "--matrix",
        "data/toy_annotations.tsv",
        "--texts",
        "data/toy_texts.tsv",
    ]);
    finorient(&["agreement", "--matrix", "data/toy_annotations.tsv"]);
    let after: Vec<Vec<u8>> = files
        .iter()
        .map(|f| fs::read(common::data_path(&f[5..])).unwrap())
        .collect();
    assert_eq!(before, after);
}

#[test]
fn agreement_report_golden() {
    let o = finorient(&["agreement", "--matrix", "data/toy_annotations.tsv"]);
    assert_eq!(o.status.code(), Some(0));
    let expected = fs::read_to_string(common::test_data_path("agreement_report.txt")).unwrap();
    assert_eq!(stdout(&o), expected);
}

#[test]
fn lexicon_validate_prints_every_class() {
    let o = finorient(&["lexicon", "validate", "data/demo_lexicon.tsv", "--format", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for class in [
        "GeneralPositive",
        "DirectionUp",
        "InfluencerLitigious",
        "InfluencerUncertain",
    ] {
        assert!(out.contains(class), "{class}");
    }
}

#[test]
fn phrasebank_summary_reads_legacy_encoding() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("Sentences_AllAgree.txt");
    let mut bytes = b"Profit rose to EUR 5 mn@positive\r\nThe plant is in Lappeenranta@neutral\r\n".to_vec();
    bytes.extend(b"Sales in S\xf6dert\xe4lje fell@negative\r\nStaff @ HQ was unchanged@neutral\r\n");
    fs::write(&f, bytes).unwrap();
    let o = finorient(&["gold", "--phrasebank", path(&f)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = body(&o).join("\n");
    assert!(
        out.contains("25.0") && out.contains("50.0") && out.contains('4'),
        "{out}"
    );
}
