//! Semantic orientation detection for short financial and economic text.
//!
//! The pipeline linearizes a sentence into a sequence of typed lexicon
//! entities, projects that sequence onto one-hot blocks, and classifies the
//! projection with a one-against-one soft-margin SVM:
//!
//! ```text
//! text ──tokenize/tag──▶ Sentence ──extract──▶ EntitySequence
//!      ──encode──▶ ProjectedSequence ──OrientationModel::predict──▶ Label
//! ```
//!
//! * [`lexicon`] loads the typed domain lexicon (TSV).
//! * [`ingest`] tokenizes and POS-tags raw text, or loads pre-tagged corpora.
//! * [`extractor`] detects entities and applies the neutral-merge and
//!   polarity-influence pruning rules.
//! * [`projection`] maps entity sequences to bit-sequence projections and
//!   defines the sequence kernel.
//! * [`classifier`] trains and applies the pairwise SMO models.
//! * [`baselines`] holds the wordcount and restricted comparison systems.
//! * [`eval`] covers annotator agreement, gold-standard construction,
//!   stratified cross-validation and report rendering.
//! * [`cli`] is the `finorient` command-line front end.
//!
//! ```
//! use finorient::prelude::*;
//!
//! let lexicon = Lexicon::parse_str(
//!     "Profit\tprofit\t-\tFinPositiveIfUp\n\tfell\t-\tDirectionDown\n",
//! )?;
//! let tagger = HeuristicTagger::with_lexicon(&lexicon);
//! let sentence = Sentence::from_text(None, "Profit fell by 33% from the third quarter", &tagger);
//! let seq = Extractor::new(&lexicon).extract(&sentence);
//! assert_eq!(seq.entities[0].polarity.to_string(), "Negative/Down");
//! # Ok::<(), finorient::Error>(())
//! ```

pub mod baselines;
pub mod classifier;
pub mod cli;
pub mod error;
pub mod eval;
pub mod extractor;
pub mod ingest;
pub mod label;
pub mod lexicon;
pub mod pipeline;
pub mod projection;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::baselines::{wordcount_vote, BaselineKind};
    pub use crate::classifier::{OrientationModel, TrainParams};
    pub use crate::error::{Error, Result};
    pub use crate::extractor::{Entity, EntityKind, EntitySequence, Extractor, PolarityTag};
    pub use crate::ingest::{HeuristicTagger, Pos, Sentence, Tagger};
    pub use crate::label::Label;
    pub use crate::lexicon::{EntityClass, Lexicon, LexiconEntry};
    pub use crate::pipeline::{ModelKind, Pipeline};
    pub use crate::projection::{ProjectedSequence, TypeCoding};
}
