//! Annotator agreement, gold-standard construction, cross-validation and
//! report rendering.

pub mod agreement;
pub mod cv;
pub mod gold;
pub mod matrix;
pub mod reliability;
pub mod report;

use thiserror::Error;

use crate::label::Label;

pub use agreement::{pairwise_agreement, Agreement};
pub use cv::{cross_validate, stratified_folds, ClassMetrics, Confusion};
pub use gold::{build_gold, load_corpus, GoldRow, GoldStandard, LabelDistribution, Threshold};
pub use matrix::AnnotationMatrix;
pub use reliability::{finn_coefficient, icc, robinson_a, Coefficient, IccVariant};

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("annotation matrix line {line}: {reason}")]
    Matrix { line: usize, reason: String },
    #[error("corpus line {line}: {reason}")]
    Corpus { line: usize, reason: String },
    #[error("need at least 2 annotators, found {0}")]
    TooFewAnnotators(usize),
    #[error("no pair of annotators labeled a common sentence")]
    NoCompletePairs,
    #[error("row {row} has a missing label; restrict to complete rows first")]
    MissingCell { row: String },
    #[error("class {label} has {count} examples, fewer than {folds} folds")]
    ClassTooSmall { label: Label, count: usize, folds: usize },
    #[error("fold count must be at least 2, got {0}")]
    BadFoldCount(usize),
    #[error("unsupported threshold {0} (expected 100, 75, 66 or 50)")]
    BadThreshold(String),
}
