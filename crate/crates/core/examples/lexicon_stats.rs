//! Per-class statistics of the shipped demo lexicon.

use finorient::prelude::*;

fn main() -> Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/demo_lexicon.tsv");
    let lexicon = Lexicon::load(path)?;
    print!("{}", lexicon.stats().render());

    for word in ["profit", "fell", "not"] {
        let classes: Vec<&str> = lexicon
            .candidate_entries(word)
            .iter()
            .map(|e| e.class.as_str())
            .collect();
        println!("entries anchored at {word:?}: {}", classes.join(", "));
    }
    Ok(())
}
