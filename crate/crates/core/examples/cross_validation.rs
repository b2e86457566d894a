//! Ten-fold cross-validated comparison of every model on the toy corpus.

use finorient::eval::{cross_validate, cv::DEFAULT_SEED, load_corpus, report::render_comparison};
use finorient::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = env!("CARGO_MANIFEST_DIR");
    let lexicon = Lexicon::load(format!("{dir}/data/demo_lexicon.tsv"))?;
    let general = Lexicon::load(format!("{dir}/data/general_polarity.tsv"))?;
    let financial = Lexicon::load(format!("{dir}/data/financial_polarity.tsv"))?;
    let tagger = HeuristicTagger::with_lexicon(&lexicon);
    let corpus = load_corpus(&std::fs::read(format!("{dir}/data/toy_corpus.txt"))?)?;
    let data: Vec<(Sentence, Label)> = corpus
        .iter()
        .map(|(t, l)| (Sentence::from_text(None, t, &tagger), *l))
        .collect();

    let pipelines = [
        Pipeline::new(ModelKind::WordcountGeneral, &general),
        Pipeline::new(ModelKind::WordcountFinancial, &financial),
        Pipeline::new(ModelKind::PolaritySequence, &lexicon),
        Pipeline::new(ModelKind::RestrictedLps, &lexicon),
        Pipeline::new(ModelKind::Lps, &lexicon),
    ];
    let mut columns = Vec::new();
    for p in &pipelines {
        columns.push((p.kind().to_string(), cross_validate(p, &data, 10, DEFAULT_SEED)?));
    }
    print!("{}", render_comparison("toy corpus, 10 folds", &columns));
    Ok(())
}
