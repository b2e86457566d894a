//! The `finorient` command line.
//!
//! Exit status: 0 success, 1 usage error, 2 data error, 3 internal
//! invariant violation. Every command echoes its configuration as `# `
//! header lines before its output; readers of the TSV formats skip them.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classifier::{self, ModelFile, TrainParams};
use crate::eval::{
    self, agreement::CATEGORY_PAIRS, build_gold, cross_validate, gold, pairwise_agreement, report, AnnotationMatrix,
    IccVariant, Threshold,
};
use crate::extractor::{EntitySequence, ExtractOptions, Extractor};
use crate::ingest::{load_tagged, HeuristicTagger, Sentence};
use crate::label::Label;
use crate::lexicon::Lexicon;
use crate::pipeline::{ModelKind, Pipeline};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "finorient", version, about = "Semantic orientation of financial sentences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lexicon utilities.
    #[command(subcommand)]
    Lexicon(LexiconCommand),
    /// Print entity sequences, one TSV line per sentence.
    Extract(ExtractArgs),
    /// Train a sequence model on a `text@label` corpus.
    Train(TrainArgs),
    /// Label sentences with a trained model or a wordcount baseline.
    Predict(PredictArgs),
    /// Build a majority-vote gold standard, or summarize corpus files.
    Gold(GoldArgs),
    /// Annotator agreement and reliability statistics.
    Agreement(AgreementArgs),
    /// Cross-validated comparison of the models.
    Eval(EvalArgs),
}

#[derive(Debug, Subcommand)]
pub enum LexiconCommand {
    /// Parse lexicon files (later files override earlier ones) and print
    /// per-class statistics.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Args)]
#[group(id = "input", required = true, multiple = false)]
pub struct Input {
    /// Pre-tagged corpus (`surface<TAB>POS` lines).
    #[arg(long, group = "input")]
    pub pretagged: Option<PathBuf>,
    /// Raw text, one sentence per line.
    #[arg(long, group = "input")]
    pub raw: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// Lexicon files, merged in order.
    #[arg(long = "lexicon", required = true)]
    pub lexicons: Vec<PathBuf>,
    #[command(flatten)]
    pub input: Input,
    /// Keep detected entities and neutral fills only.
    #[arg(long)]
    pub no_prune: bool,
    /// Influencer search window.
    #[arg(long, default_value_t = 1)]
    pub window: usize,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long = "lexicon", required = true)]
    pub lexicons: Vec<PathBuf>,
    /// Training corpus, `text@label` per line.
    #[arg(long)]
    pub corpus: PathBuf,
    /// Sequence model to train: lps, rlps or pseq.
    #[arg(long, default_value = "lps")]
    pub kind: ModelKind,
    #[arg(long, default_value_t = 1)]
    pub window: usize,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long = "lexicon")]
    pub lexicons: Vec<PathBuf>,
    /// Trained model (required for pseq, rlps and lps).
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Model kind; defaults to the kind stored in the model file, or lps.
    #[arg(long)]
    pub baseline: Option<ModelKind>,
    #[arg(long, conflicts_with_all = ["raw", "from_entities", "corpus"])]
    pub pretagged: Option<PathBuf>,
    #[arg(long, conflicts_with_all = ["from_entities", "corpus"])]
    pub raw: Option<PathBuf>,
    /// Output of `finorient extract`.
    #[arg(long, conflicts_with = "corpus")]
    pub from_entities: Option<PathBuf>,
    /// A `text@label` corpus; gold labels are ignored.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GoldArgs {
    /// Annotation matrix TSV.
    #[arg(long, conflicts_with = "phrasebank", required_unless_present = "phrasebank")]
    pub matrix: Option<PathBuf>,
    /// Majority threshold: 100, 75, 66 or 50.
    #[arg(long, default_value = "50")]
    pub threshold: String,
    /// Optional `id<TAB>text` file; with it the gold set is written as a
    /// `text@label` corpus.
    #[arg(long, requires = "matrix")]
    pub texts: Option<PathBuf>,
    /// Summarize the label distribution of `text@label` corpus files.
    #[arg(long, num_args = 1..)]
    pub phrasebank: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AgreementArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Lexicon files for the sequence models, merged in order.
    #[arg(long = "lexicon", required = true)]
    pub lexicons: Vec<PathBuf>,
    /// Polarity list for w-general (default: general entries of the lexicon).
    #[arg(long)]
    pub general_list: Option<PathBuf>,
    /// Polarity list for w-financial (default: general entries of the lexicon).
    #[arg(long)]
    pub financial_list: Option<PathBuf>,
    /// Gold corpora (`text@label`), one comparison table each.
    #[arg(long)]
    pub corpus: Vec<PathBuf>,
    /// Annotation matrix; builds the four threshold gold sets (needs --texts).
    #[arg(long, requires = "texts")]
    pub matrix: Option<PathBuf>,
    #[arg(long)]
    pub texts: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "w-general,w-financial,pseq,rlps,lps")]
    pub models: Vec<ModelKind>,
    #[arg(long, default_value_t = 10)]
    pub folds: usize,
    #[arg(long, default_value_t = eval::cv::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub window: usize,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// Failure of a command, mapped to an exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(Error),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
            Failure::Invariant(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage: {m}"),
            Failure::Data(e) => write!(f, "error: {e}"),
            Failure::Invariant(m) => write!(f, "internal error: {m}"),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Process entry point: parses `std::env::args` and runs the command.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut stdout = std::io::stdout().lock();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(&cli, &mut stdout)));
    let result = outcome.unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(Failure::Invariant(msg))
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("finorient: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}

/// Runs a parsed command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut dyn std::io::Write) -> CmdResult {
    let mut buf = String::new();
    match &cli.command {
        Command::Lexicon(LexiconCommand::Validate { files, format }) => lexicon_validate(files, *format, &mut buf)?,
        Command::Extract(a) => extract(a, &mut buf)?,
        Command::Train(a) => train(a, &mut buf)?,
        Command::Predict(a) => predict(a, &mut buf)?,
        Command::Gold(a) => gold_cmd(a, &mut buf)?,
        Command::Agreement(a) => agreement(a, &mut buf)?,
        Command::Eval(a) => eval_cmd(a, &mut buf)?,
    }
    out.write_all(buf.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Data(Error::io("<stdout>", e)))
}

fn echo(buf: &mut String, command: &str, fields: &[(&str, String)]) {
    buf.push_str(&format!("# finorient {} {command}\n", env!("CARGO_PKG_VERSION")));
    for (k, v) in fields {
        buf.push_str(&format!("# {k} = {v}\n"));
    }
}

fn paths(p: &[PathBuf]) -> String {
    p.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(",")
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path.display().to_string(), e))
}

fn read_text(path: &Path) -> Result<String> {
    let bytes = read(path)?;
    String::from_utf8(bytes).map_err(|_| {
        Error::io(
            path.display().to_string(),
            std::io::Error::new(std::io::ErrorKind::InvalidData, "not valid UTF-8"),
        )
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path.display().to_string(), e))
}

fn with_path<T>(path: &Path, r: std::result::Result<T, impl Into<Error>>) -> Result<T> {
    r.map_err(|e| {
        let e: Error = e.into();
        Error::io(
            path.display().to_string(),
            std::io::Error::new(std::io::ErrorKind::InvalidData, e.to_string()),
        )
    })
}

fn lexicon_validate(files: &[PathBuf], format: Format, buf: &mut String) -> CmdResult {
    let lex = Lexicon::load_merged(files)?;
    let stats = lex.stats();
    echo(
        buf,
        "lexicon validate",
        &[("files", paths(files)), ("entries", lex.len().to_string())],
    );
    match format {
        Format::Human => buf.push_str(&stats.render()),
        Format::Tsv => buf.push_str(&stats.to_tsv()),
    }
    Ok(())
}

fn load_sentences(input: &Input, tagger: &HeuristicTagger) -> Result<Vec<Sentence>> {
    if let Some(p) = &input.pretagged {
        let text = read(p)?;
        with_path(p, load_tagged(text.as_slice()))
    } else {
        let p = input.raw.as_ref().expect("clap enforces one input");
        Ok(raw_sentences(&read_text(p)?, tagger))
    }
}

fn raw_sentences(text: &str, tagger: &HeuristicTagger) -> Vec<Sentence> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| Sentence::from_text(Some(format!("s{}", i + 1)), l.trim_end_matches('\r'), tagger))
        .collect()
}

fn corpus_sentences(path: &Path, tagger: &HeuristicTagger) -> Result<Vec<(Sentence, Label)>> {
    let items = with_path(path, gold::load_corpus(&read(path)?))?;
    Ok(items
        .into_iter()
        .enumerate()
        .map(|(i, (t, l))| (Sentence::from_text(Some(format!("s{}", i + 1)), &t, tagger), l))
        .collect())
}

fn check_cover(seq: &EntitySequence, s: &Sentence) -> CmdResult {
    if seq.covers(s.len()) {
        Ok(())
    } else {
        Err(Failure::Invariant(format!(
            "entity sequence for {:?} does not cover its tokens",
            s.id
        )))
    }
}

fn extract(a: &ExtractArgs, buf: &mut String) -> CmdResult {
    let lex = Lexicon::load_merged(&a.lexicons)?;
    let tagger = HeuristicTagger::with_lexicon(&lex);
    let sentences = load_sentences(&a.input, &tagger)?;
    let options = ExtractOptions {
        window: a.window,
        prune: !a.no_prune,
    };
    echo(
        buf,
        "extract",
        &[
            ("lexicon", paths(&a.lexicons)),
            ("window", a.window.to_string()),
            ("prune", options.prune.to_string()),
        ],
    );
    let ex = Extractor::with_options(&lex, options);
    for (i, s) in sentences.iter().enumerate() {
        let seq = ex.extract(s);
        check_cover(&seq, s)?;
        match a.format {
            Format::Tsv => {
                buf.push_str(&seq.to_tsv_line(&format!("s{}", i + 1)));
                buf.push('\n');
            }
            Format::Human => {
                buf.push_str(&format!("{}:", s.id.clone().unwrap_or_else(|| format!("s{}", i + 1))));
                for e in &seq.entities {
                    let words: Vec<&str> = s.tokens[e.start..e.end].iter().map(|t| t.surface.as_str()).collect();
                    buf.push_str(&format!(" [{} \"{}\"]", e.entity_type(), words.join(" ")));
                }
                buf.push('\n');
            }
        }
    }
    Ok(())
}

fn lexicon_digest(lex: &Lexicon) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(&Sha256::digest(lex.to_tsv().as_bytes())[..8])
}

fn train(a: &TrainArgs, buf: &mut String) -> CmdResult {
    if !a.kind.is_trained() {
        return Err(Failure::Usage(format!("{} needs no training", a.kind)));
    }
    let lex = Lexicon::load_merged(&a.lexicons)?;
    let tagger = HeuristicTagger::with_lexicon(&lex);
    let data = corpus_sentences(&a.corpus, &tagger)?;
    let pipeline = Pipeline::new(a.kind, &lex).window(a.window).params(TrainParams {
        c: a.c,
        ..TrainParams::default()
    });
    let refs: Vec<(&Sentence, Label)> = data.iter().map(|(s, l)| (s, *l)).collect();
    let fitted = pipeline.fit(&refs)?;
    let model = fitted.model().expect("trained kind").clone();
    let file = ModelFile {
        meta: vec![
            ("kind".into(), a.kind.to_string()),
            ("window".into(), a.window.to_string()),
            ("lexicon".into(), lexicon_digest(&lex)),
        ],
        model,
    };
    write_file(&a.out, &classifier::save(&file))?;
    echo(
        buf,
        "train",
        &[
            ("lexicon", paths(&a.lexicons)),
            ("corpus", a.corpus.display().to_string()),
            ("kind", a.kind.to_string()),
            ("window", a.window.to_string()),
            ("c", a.c.to_string()),
            ("out", a.out.display().to_string()),
        ],
    );
    let sv: Vec<String> = file
        .model
        .pairs()
        .iter()
        .map(|p| format!("{}/{}:{}", p.classes.0, p.classes.1, p.support.len()))
        .collect();
    buf.push_str(&format!(
        "trained {} on {} sentences; {} entity types; support vectors {}\n",
        a.kind,
        data.len(),
        file.model.coding().width(),
        sv.join(" ")
    ));
    Ok(())
}

fn load_model(path: &Path) -> Result<ModelFile> {
    with_path(path, classifier::load(&read_text(path)?))
}

fn predict(a: &PredictArgs, buf: &mut String) -> CmdResult {
    let file = a.model.as_deref().map(load_model).transpose()?;
    let stored_kind = file
        .as_ref()
        .and_then(|f| f.meta("kind"))
        .map(|k| k.parse::<ModelKind>())
        .transpose()
        .map_err(|e| {
            Failure::Data(Error::io(
                "model",
                std::io::Error::new(std::io::ErrorKind::InvalidData, e),
            ))
        })?;
    let kind = a.baseline.or(stored_kind).unwrap_or(ModelKind::Lps);
    if kind.is_trained() && file.is_none() {
        return Err(Failure::Usage(format!("--baseline {kind} needs --model")));
    }
    if let (Some(s), true) = (stored_kind, kind.is_trained()) {
        if s != kind {
            eprintln!("finorient: warning: model was trained as {s}, predicting as {kind}");
        }
    }
    let window = file
        .as_ref()
        .and_then(|f| f.meta("window"))
        .and_then(|w| w.parse().ok())
        .unwrap_or(1);

    let mut fields = vec![("kind", kind.to_string()), ("lexicon", paths(&a.lexicons))];
    if let Some(m) = &a.model {
        fields.push(("model", m.display().to_string()));
    }

    if let Some(p) = &a.from_entities {
        let file = file.ok_or_else(|| Failure::Usage("--from-entities needs --model".into()))?;
        let text = read_text(p)?;
        echo(buf, "predict", &fields);
        for (i, line) in text.lines().enumerate() {
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let seq = EntitySequence::parse_tsv_line(line).map_err(|e| {
                Failure::Data(Error::io(
                    p.display().to_string(),
                    std::io::Error::new(std::io::ErrorKind::InvalidData, format!("line {}: {e}", i + 1)),
                ))
            })?;
            let label = file.model.predict_sequence(&seq);
            emit_prediction(buf, a.format, seq.sentence_id.as_deref().unwrap_or(""), None, label);
        }
        report_unseen(file.model.unseen_type_count());
        return Ok(());
    }

    if a.lexicons.is_empty() {
        return Err(Failure::Usage(
            "--lexicon is required unless --from-entities is given".into(),
        ));
    }
    let lex = Lexicon::load_merged(&a.lexicons)?;
    if let Some(d) = file.as_ref().and_then(|f| f.meta("lexicon")) {
        if d != lexicon_digest(&lex) {
            eprintln!("finorient: warning: lexicon differs from the one used in training");
        }
    }
    let tagger = HeuristicTagger::with_lexicon(&lex);
    let sentences: Vec<Sentence> = if let Some(c) = &a.corpus {
        corpus_sentences(c, &tagger)?.into_iter().map(|(s, _)| s).collect()
    } else if a.pretagged.is_some() || a.raw.is_some() {
        let input = Input {
            pretagged: a.pretagged.clone(),
            raw: a.raw.clone(),
        };
        load_sentences(&input, &tagger)?
    } else {
        return Err(Failure::Usage(
            "one of --raw, --pretagged, --corpus or --from-entities is required".into(),
        ));
    };
    let pipeline = Pipeline::new(kind, &lex).window(window);
    let model = file.map(|f| f.model);
    let fitted = match model {
        Some(m) if kind.is_trained() => pipeline.with_model(m),
        _ => pipeline.fit(&[])?,
    };
    echo(buf, "predict", &fields);
    let refs: Vec<&Sentence> = sentences.iter().collect();
    let labels = fitted.predict_all(&refs);
    for (i, (s, l)) in sentences.iter().zip(labels).enumerate() {
        let id = s.id.clone().unwrap_or_else(|| format!("s{}", i + 1));
        emit_prediction(buf, a.format, &id, Some(&s.text), l);
    }
    if let Some(m) = fitted.model() {
        report_unseen(m.unseen_type_count());
    }
    Ok(())
}

fn emit_prediction(buf: &mut String, format: Format, id: &str, text: Option<&str>, label: Label) {
    match (format, text) {
        (Format::Human, Some(t)) => buf.push_str(&format!("{label:<9} {t}\n")),
        _ => buf.push_str(&format!("{id}\t{label}\n")),
    }
}

fn report_unseen(n: usize) {
    if n > 0 {
        eprintln!("finorient: warning: {n} entities had types unseen in training and were read as neutral fill");
    }
}

fn gold_cmd(a: &GoldArgs, buf: &mut String) -> CmdResult {
    if !a.phrasebank.is_empty() {
        echo(buf, "gold", &[("phrasebank", paths(&a.phrasebank))]);
        let mut rows = Vec::new();
        for p in &a.phrasebank {
            let items = with_path(p, gold::load_corpus(&read(p)?))?;
            let name = p
                .file_stem()
                .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            rows.push((
                name,
                gold::LabelDistribution::from_labels(items.iter().map(|(_, l)| *l)),
            ));
        }
        buf.push_str(&gold::render_distributions(&rows));
        return Ok(());
    }
    let threshold: Threshold = a
        .threshold
        .parse()
        .map_err(|e: eval::EvalError| Failure::Usage(e.to_string()))?;
    let path = a.matrix.as_ref().expect("clap enforces matrix or phrasebank");
    let m = with_path(path, AnnotationMatrix::parse(&read_text(path)?))?;
    let g = build_gold(&m, threshold);
    if g.rows.is_empty() {
        eprintln!("finorient: warning: no sentence reaches the {threshold}% threshold; gold set is empty");
    }
    let body = match &a.texts {
        Some(t) => {
            let texts = load_texts(t)?;
            let items: Vec<(String, Label)> = g
                .rows
                .iter()
                .map(|r| {
                    texts
                        .iter()
                        .find(|(id, _)| *id == r.id)
                        .map(|(_, text)| (text.clone(), r.label))
                        .ok_or_else(|| {
                            Failure::Data(Error::io(
                                t.display().to_string(),
                                std::io::Error::new(std::io::ErrorKind::NotFound, format!("no text for id {}", r.id)),
                            ))
                        })
                })
                .collect::<std::result::Result<_, _>>()?;
            gold::write_corpus(&items)
        }
        None => g.to_tsv(),
    };
    match &a.out {
        Some(o) => {
            write_file(o, &body)?;
            echo(
                buf,
                "gold",
                &[
                    ("matrix", path.display().to_string()),
                    ("threshold", threshold.to_string()),
                    ("out", o.display().to_string()),
                ],
            );
            buf.push_str(&gold::render_distributions(&[(threshold.caption(), g.distribution())]));
        }
        None => buf.push_str(&body),
    }
    Ok(())
}

fn load_texts(path: &Path) -> Result<Vec<(String, String)>> {
    let text = gold::decode_text(&read(path)?);
    Ok(text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .filter_map(|l| l.split_once('\t'))
        .map(|(id, t)| (id.trim().to_string(), t.trim_end_matches('\r').to_string()))
        .collect())
}

fn agreement(a: &AgreementArgs, buf: &mut String) -> CmdResult {
    let m = with_path(&a.matrix, AnnotationMatrix::parse(&read_text(&a.matrix)?))?;
    let pairwise = pairwise_agreement(&m).map_err(|e| Failure::Data(e.into()))?;
    let complete = m.complete_rows();
    let eval_err = |e: eval::EvalError| Failure::Data(e.into());
    let stats = [
        (
            "ICC consistency",
            eval::icc(&complete, IccVariant::Consistency).map_err(eval_err)?,
        ),
        (
            "ICC agreement",
            eval::icc(&complete, IccVariant::Agreement).map_err(eval_err)?,
        ),
        ("Finn coefficient", eval::finn_coefficient(&complete).map_err(eval_err)?),
        ("Robinson's A", eval::robinson_a(&complete).map_err(eval_err)?),
    ];
    echo(
        buf,
        "agreement",
        &[
            ("matrix", a.matrix.display().to_string()),
            ("scoring", "negative=-1 neutral=0 positive=+1".into()),
            ("sentences", m.rows.len().to_string()),
            ("complete rows", complete.rows.len().to_string()),
            ("annotators", m.annotators.len().to_string()),
        ],
    );
    let fmt = |v: Option<f64>| v.map_or("n/a".to_string(), |v| format!("{v:.3}"));
    let category = |a: Label, b: Label| format!("{a} vs {b}");
    match a.format {
        Format::Human => {
            buf.push_str("Average pairwise agreement\n");
            buf.push_str(&format!("  {:<28}{}\n", "Overall", fmt(Some(pairwise.overall))));
            for (x, y) in CATEGORY_PAIRS {
                buf.push_str(&format!("  {:<28}{}\n", category(x, y), fmt(pairwise.category(x, y))));
            }
            buf.push_str("Reliability (complete rows)\n");
            for (name, c) in stats {
                buf.push_str(&format!("  {name:<28}{c}\n"));
            }
        }
        Format::Tsv => {
            buf.push_str(&format!("overall\t{}\n", fmt(Some(pairwise.overall))));
            for (x, y) in CATEGORY_PAIRS {
                buf.push_str(&format!("{}\t{}\n", category(x, y), fmt(pairwise.category(x, y))));
            }
            for (name, c) in stats {
                buf.push_str(&format!("{name}\t{c}\n"));
            }
        }
    }
    Ok(())
}

fn eval_cmd(a: &EvalArgs, buf: &mut String) -> CmdResult {
    if a.corpus.is_empty() && a.matrix.is_none() {
        return Err(Failure::Usage("eval needs --corpus or --matrix".into()));
    }
    let lex = Lexicon::load_merged(&a.lexicons)?;
    let tagger = HeuristicTagger::with_lexicon(&lex);
    let general = a.general_list.as_deref().map(Lexicon::load).transpose()?;
    let financial = a.financial_list.as_deref().map(Lexicon::load).transpose()?;
    let params = TrainParams {
        c: a.c,
        ..TrainParams::default()
    };
    let pipelines: Vec<Pipeline> = a
        .models
        .iter()
        .map(|&k| {
            let source = match k {
                ModelKind::WordcountGeneral => general.as_ref().unwrap_or(&lex),
                ModelKind::WordcountFinancial => financial.as_ref().unwrap_or(&lex),
                _ => &lex,
            };
            Pipeline::new(k, source).window(a.window).params(params)
        })
        .collect();

    let mut sets: Vec<(String, Vec<(Sentence, Label)>)> = Vec::new();
    for p in &a.corpus {
        let name = p
            .file_stem()
            .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        sets.push((name, corpus_sentences(p, &tagger)?));
    }
    if let (Some(mp), Some(tp)) = (&a.matrix, &a.texts) {
        let m = with_path(mp, AnnotationMatrix::parse(&read_text(mp)?))?;
        let texts = load_texts(tp)?;
        for t in Threshold::ALL {
            let g = build_gold(&m, t);
            let data = g
                .rows
                .iter()
                .filter_map(|r| {
                    let text = texts.iter().find(|(id, _)| *id == r.id)?;
                    Some((Sentence::from_text(Some(r.id.clone()), &text.1, &tagger), r.label))
                })
                .collect();
            let name = format!("{} agreement", t.caption());
            sets.push((name, data));
        }
    }

    let mut fields = vec![
        ("lexicon", paths(&a.lexicons)),
        (
            "models",
            a.models.iter().map(ModelKind::to_string).collect::<Vec<_>>().join(","),
        ),
        ("folds", a.folds.to_string()),
        ("seed", a.seed.to_string()),
        ("window", a.window.to_string()),
        ("c", a.c.to_string()),
    ];
    if let Some(g) = &a.general_list {
        fields.push(("general-list", g.display().to_string()));
    }
    if let Some(f) = &a.financial_list {
        fields.push(("financial-list", f.display().to_string()));
    }
    echo(buf, "eval", &fields);

    for (name, data) in &sets {
        let dist = gold::LabelDistribution::from_labels(data.iter().map(|(_, l)| *l));
        let columns = match pipelines
            .iter()
            .map(|p| Ok((p.kind().to_string(), cross_validate(p, data, a.folds, a.seed)?)))
            .collect::<Result<Vec<_>>>()
        {
            Ok(c) => c,
            // one undersized gold set should not abort the other tables
            Err(Error::Eval(e @ eval::EvalError::ClassTooSmall { .. })) => {
                eprintln!("finorient: warning: skipping {name}: {e}");
                buf.push_str(&format!("\n# skipped {name}: {e}\n"));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let title = format!(
            "{name} (n = {}; negative {} / neutral {} / positive {})",
            dist.total(),
            dist.counts[Label::Negative.index()],
            dist.counts[Label::Neutral.index()],
            dist.counts[Label::Positive.index()]
        );
        match a.format {
            Format::Human => {
                buf.push('\n');
                buf.push_str(&report::render_comparison(&title, &columns));
            }
            Format::Tsv => buf.push_str(&report::comparison_tsv(name, &columns)),
        }
    }
    Ok(())
}
