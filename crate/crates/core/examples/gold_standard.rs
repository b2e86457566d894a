//! Majority-vote gold sets at the four agreement thresholds.

use finorient::eval::{build_gold, gold::render_distributions, AnnotationMatrix, Threshold};
use finorient::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/toy_annotations.tsv"))?;
    let matrix = AnnotationMatrix::parse(&text)?;
    let rows: Vec<_> = Threshold::ALL
        .iter()
        .map(|&t| (t.caption(), build_gold(&matrix, t).distribution()))
        .collect();
    print!("{}", render_distributions(&rows));

    let strict = build_gold(&matrix, Threshold::All);
    for row in strict.rows.iter().take(5) {
        println!("{}\t{}\t{}/{}", row.id, row.label, row.count, row.n);
    }
    Ok(())
}
