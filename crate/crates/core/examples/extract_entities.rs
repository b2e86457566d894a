//! Entity sequences before and after pruning, for a few sentences.

use finorient::extractor::ExtractOptions;
use finorient::prelude::*;

const SENTENCES: &[&str] = &[
    "Profit fell by 33% from the third quarter",
    "The number of collection errors fell considerably, and operations speeded up",
    "Operating profit did not improve",
    "The company may face a lawsuit",
];

fn show(s: &Sentence, seq: &EntitySequence) {
    for e in &seq.entities {
        let words: Vec<&str> = s.tokens[e.start..e.end].iter().map(|t| t.surface.as_str()).collect();
        println!("    [{}] {}", e.entity_type(), words.join(" "));
    }
}

fn main() -> Result<()> {
    let lexicon = Lexicon::load(concat!(env!("CARGO_MANIFEST_DIR"), "/data/demo_lexicon.tsv"))?;
    let tagger = HeuristicTagger::with_lexicon(&lexicon);
    let raw = Extractor::with_options(
        &lexicon,
        ExtractOptions {
            window: 1,
            prune: false,
        },
    );
    let pruned = Extractor::new(&lexicon);

    for text in SENTENCES {
        let s = Sentence::from_text(None, text, &tagger);
        println!("{text}");
        println!("  detected:");
        show(&s, &raw.extract(&s));
        println!("  pruned:");
        show(&s, &pruned.extract(&s));
    }
    Ok(())
}
