//! The three orientation labels.

use std::fmt;
use std::str::FromStr;

/// Semantic orientation of a sentence.
///
/// The declaration order is the class order used everywhere a class index is
/// needed: pairwise models, confusion matrices, and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Positive,
    Neutral,
    Negative,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::Positive, Label::Neutral, Label::Negative];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(idx: usize) -> Option<Label> {
        Self::ALL.get(idx).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Positive => "positive",
            Label::Neutral => "neutral",
            Label::Negative => "negative",
        }
    }

    /// Ordinal score used by the variance-based agreement statistics.
    pub fn score(self) -> f64 {
        match self {
            Label::Positive => 1.0,
            Label::Neutral => 0.0,
            Label::Negative => -1.0,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown label {0:?} (expected positive, neutral or negative)")]
pub struct ParseLabelError(pub String);

impl FromStr for Label {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "positive" | "pos" => Ok(Label::Positive),
            "neutral" | "neu" => Ok(Label::Neutral),
            "negative" | "neg" => Ok(Label::Negative),
            _ => Err(ParseLabelError(s.to_string())),
        }
    }
}
