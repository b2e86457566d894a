//! Average pairwise annotator agreement.

use crate::label::Label;

use super::{AnnotationMatrix, EvalError};

/// Agreement over all (sentence, annotator pair) label pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct Agreement {
    pub overall: f64,
    pub pairs: usize,
    /// Per category pair `(a, b)`, `a < b`: among label pairs whose two
    /// labels both lie in `{a, b}`, the fraction that are equal. `None` when
    /// no such pair exists.
    pub by_category: Vec<((Label, Label), Option<f64>)>,
}

impl Agreement {
    pub fn category(&self, a: Label, b: Label) -> Option<f64> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.by_category.iter().find(|(k, _)| *k == key).and_then(|(_, v)| *v)
    }
}

pub const CATEGORY_PAIRS: [(Label, Label); 3] = [
    (Label::Positive, Label::Neutral),
    (Label::Positive, Label::Negative),
    (Label::Neutral, Label::Negative),
];

pub fn pairwise_agreement(m: &AnnotationMatrix) -> Result<Agreement, EvalError> {
    if m.annotators.len() < 2 {
        return Err(EvalError::TooFewAnnotators(m.annotators.len()));
    }
    // counts[a][b] over unordered label pairs, a <= b
    let mut counts = [[0usize; 3]; 3];
    for (_, labels) in &m.rows {
        let present: Vec<Label> = labels.iter().flatten().copied().collect();
        for i in 0..present.len() {
            for j in i + 1..present.len() {
                let (a, b) = (present[i].index(), present[j].index());
                counts[a.min(b)][a.max(b)] += 1;
            }
        }
    }
    let total: usize = counts.iter().flatten().sum();
    if total == 0 {
        return Err(EvalError::NoCompletePairs);
    }
    let agree: usize = (0..3).map(|i| counts[i][i]).sum();
    let by_category = CATEGORY_PAIRS
        .iter()
        .map(|&(a, b)| {
            let (a_i, b_i) = (a.index(), b.index());
            let same = counts[a_i][a_i] + counts[b_i][b_i];
            let all = same + counts[a_i.min(b_i)][a_i.max(b_i)];
            ((a, b), (all > 0).then(|| same as f64 / all as f64))
        })
        .collect();
    Ok(Agreement {
        overall: agree as f64 / total as f64,
        pairs: total,
        by_category,
    })
}
