//! The five comparable sentence classifiers behind one fit/predict interface.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::baselines::{general_only, polarity_sequence_extract, restricted_lps_extract, wordcount_vote, BaselineKind};
use crate::classifier::{OrientationModel, TrainParams};
use crate::extractor::{EntitySequence, ExtractOptions, Extractor};
use crate::ingest::Sentence;
use crate::label::Label;
use crate::lexicon::Lexicon;
use crate::projection::TypeCoding;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    WordcountGeneral,
    WordcountFinancial,
    PolaritySequence,
    RestrictedLps,
    Lps,
}

impl ModelKind {
    pub const ALL: [ModelKind; 5] = [
        ModelKind::WordcountGeneral,
        ModelKind::WordcountFinancial,
        ModelKind::PolaritySequence,
        ModelKind::RestrictedLps,
        ModelKind::Lps,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::WordcountGeneral => "w-general",
            ModelKind::WordcountFinancial => "w-financial",
            ModelKind::PolaritySequence => "pseq",
            ModelKind::RestrictedLps => "rlps",
            ModelKind::Lps => "lps",
        }
    }

    /// Whether the kind needs training (the wordcount rules do not).
    pub fn is_trained(self) -> bool {
        !matches!(self, ModelKind::WordcountGeneral | ModelKind::WordcountFinancial)
    }
}

impl From<BaselineKind> for ModelKind {
    fn from(b: BaselineKind) -> Self {
        match b {
            BaselineKind::WordcountGeneral => ModelKind::WordcountGeneral,
            BaselineKind::WordcountFinancial => ModelKind::WordcountFinancial,
            BaselineKind::PolaritySequenceGeneral => ModelKind::PolaritySequence,
            BaselineKind::RestrictedLPS => ModelKind::RestrictedLps,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown model {s:?} (expected w-general, w-financial, pseq, rlps or lps)"))
    }
}

/// An untrained classifier: model kind, the lexicon it reads, and settings.
///
/// For the wordcount kinds the lexicon is the polarity list to count with;
/// for `pseq` it is reduced to its general-polarity entries on construction.
#[derive(Clone, Debug)]
pub struct Pipeline {
    kind: ModelKind,
    lexicon: Lexicon,
    window: usize,
    params: TrainParams,
}

impl Pipeline {
    pub fn new(kind: ModelKind, lexicon: &Lexicon) -> Self {
        let lexicon = match kind {
            ModelKind::PolaritySequence => general_only(lexicon),
            _ => lexicon.clone(),
        };
        Pipeline {
            kind,
            lexicon,
            window: ExtractOptions::default().window,
            params: TrainParams::default(),
        }
    }

    pub fn window(mut self, window: usize) -> Self {
        self.window = window;
        self
    }

    pub fn params(mut self, params: TrainParams) -> Self {
        self.params = params;
        self
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn window_size(&self) -> usize {
        self.window
    }

    pub fn train_params(&self) -> TrainParams {
        self.params
    }

    /// Entity sequence fed to the classifier. `None` for wordcount kinds.
    pub fn sequence(&self, s: &Sentence) -> Option<EntitySequence> {
        match self.kind {
            ModelKind::WordcountGeneral | ModelKind::WordcountFinancial => None,
            ModelKind::PolaritySequence => Some(polarity_sequence_extract(&self.lexicon, s)),
            ModelKind::RestrictedLps => Some(restricted_lps_extract(&self.lexicon, s)),
            ModelKind::Lps => Some(Extractor::new(&self.lexicon).window(self.window).extract(s)),
        }
    }

    pub fn fit(&self, data: &[(&Sentence, Label)]) -> Result<Fitted<'_>> {
        if !self.kind.is_trained() {
            return Ok(Fitted {
                pipeline: self,
                model: None,
            });
        }
        let seqs: Vec<(EntitySequence, Label)> = data
            .par_iter()
            .map(|(s, l)| (self.sequence(s).expect("trained kind"), *l))
            .collect();
        let model = train_on_sequences(&seqs, self.params)?;
        Ok(Fitted {
            pipeline: self,
            model: Some(model),
        })
    }

    /// Attaches an already trained model (e.g. loaded from disk).
    pub fn with_model(&self, model: OrientationModel) -> Fitted<'_> {
        Fitted {
            pipeline: self,
            model: Some(model),
        }
    }
}

/// Builds the coding from the training sequences and trains the SVM.
pub fn train_on_sequences(data: &[(EntitySequence, Label)], params: TrainParams) -> Result<OrientationModel> {
    let coding = TypeCoding::from_sequences(data.iter().map(|(s, _)| s));
    let projected = data
        .iter()
        .map(|(s, l)| Ok((coding.encode(s)?, *l)))
        .collect::<Result<Vec<_>>>()?;
    Ok(OrientationModel::train(coding, &projected, params)?)
}

/// A pipeline ready to predict.
#[derive(Clone, Debug)]
pub struct Fitted<'a> {
    pipeline: &'a Pipeline,
    model: Option<OrientationModel>,
}

impl Fitted<'_> {
    pub fn model(&self) -> Option<&OrientationModel> {
        self.model.as_ref()
    }

    pub fn predict(&self, s: &Sentence) -> Label {
        match (&self.model, self.pipeline.sequence(s)) {
            (Some(m), Some(seq)) => m.predict_sequence(&seq),
            _ => wordcount_vote(&self.pipeline.lexicon, s),
        }
    }

    pub fn predict_all(&self, sentences: &[&Sentence]) -> Vec<Label> {
        sentences.par_iter().map(|s| self.predict(s)).collect()
    }
}
