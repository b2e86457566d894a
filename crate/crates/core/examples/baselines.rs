//! The comparison systems side by side on a handful of sentences.

use finorient::baselines::{polarity_sequence_extract, restricted_lps_extract, wordcount_hits};
use finorient::prelude::*;

fn main() -> Result<()> {
    let dir = env!("CARGO_MANIFEST_DIR");
    let lexicon = Lexicon::load(format!("{dir}/data/demo_lexicon.tsv"))?;
    let general = Lexicon::load(format!("{dir}/data/general_polarity.tsv"))?;
    let tagger = HeuristicTagger::with_lexicon(&lexicon);

    for text in [
        "Profit fell by 33% from the third quarter",
        "Losses narrowed and the outlook is good",
        "The strong growth did not continue",
    ] {
        let s = Sentence::from_text(None, text, &tagger);
        let (p, g) = wordcount_hits(&general, &s);
        println!("{text}");
        println!(
            "  wordcount: {p} positive, {g} negative -> {}",
            wordcount_vote(&general, &s)
        );
        let pseq = polarity_sequence_extract(&finorient::baselines::general_only(&lexicon), &s);
        println!("  polarity sequence: {}", types(&pseq));
        println!("  restricted lps:    {}", types(&restricted_lps_extract(&lexicon, &s)));
        println!("  lps:               {}", types(&Extractor::new(&lexicon).extract(&s)));
    }
    Ok(())
}

fn types(seq: &EntitySequence) -> String {
    seq.types().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
}
