//! Train the LPS model on the toy corpus, save it, reload it and classify
//! new sentences.

use finorient::classifier::{self, ModelFile};
use finorient::eval::load_corpus;
use finorient::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = env!("CARGO_MANIFEST_DIR");
    let lexicon = Lexicon::load(format!("{dir}/data/demo_lexicon.tsv"))?;
    let tagger = HeuristicTagger::with_lexicon(&lexicon);
    let corpus = load_corpus(&std::fs::read(format!("{dir}/data/toy_corpus.txt"))?)?;
    let sentences: Vec<Sentence> = corpus
        .iter()
        .map(|(t, _)| Sentence::from_text(None, t, &tagger))
        .collect();
    let data: Vec<(&Sentence, Label)> = sentences.iter().zip(corpus.iter().map(|(_, l)| *l)).collect();

    let pipeline = Pipeline::new(ModelKind::Lps, &lexicon);
    let fitted = pipeline.fit(&data)?;
    let model = fitted.model().expect("lps is trained").clone();
    println!(
        "trained on {} sentences, {} entity types",
        data.len(),
        model.coding().width()
    );
    for pair in model.pairs() {
        println!(
            "  {:?} vs {:?}: {} support vectors",
            pair.classes.0,
            pair.classes.1,
            pair.support.len()
        );
    }

    let text = classifier::save(&ModelFile {
        meta: vec![("kind".into(), "lps".into())],
        model,
    });
    let reloaded = pipeline.with_model(classifier::load(&text)?.model);

    for text in [
        "Operating profit rose to EUR 12 mn",
        "Net sales decreased by 8 %",
        "The annual general meeting will be held in Helsinki",
    ] {
        let s = Sentence::from_text(None, text, &tagger);
        println!("{:>8}  {text}", reloaded.predict(&s).to_string());
    }
    Ok(())
}
