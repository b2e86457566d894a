//! Annotator agreement and reliability on the toy annotation matrix.

use finorient::eval::{finn_coefficient, icc, pairwise_agreement, robinson_a, AnnotationMatrix, IccVariant};
use finorient::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/toy_annotations.tsv"))?;
    let matrix = AnnotationMatrix::parse(&text)?;
    let agreement = pairwise_agreement(&matrix)?;
    println!("{} label pairs, {:.3} agree", agreement.pairs, agreement.overall);
    for ((a, b), v) in &agreement.by_category {
        match v {
            Some(v) => println!("  {a} vs {b}: {v:.3}"),
            None => println!("  {a} vs {b}: no pairs"),
        }
    }

    // the variance-based coefficients need every annotator on every row
    let complete = matrix.complete_rows();
    println!("{} of {} rows are complete", complete.rows.len(), matrix.rows.len());
    println!("  ICC consistency  {}", icc(&complete, IccVariant::Consistency)?);
    println!("  ICC agreement    {}", icc(&complete, IccVariant::Agreement)?);
    println!("  Finn             {}", finn_coefficient(&complete)?);
    println!("  Robinson's A     {}", robinson_a(&complete)?);
    Ok(())
}
