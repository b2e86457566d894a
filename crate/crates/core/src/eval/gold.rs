//! Majority-vote gold standards and the `text@label` corpus format.

use std::fmt;
use std::str::FromStr;

use crate::label::Label;

use super::{AnnotationMatrix, EvalError};

/// Minimum majority strength for a sentence to enter a gold set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Threshold {
    /// Unanimous.
    All,
    /// More than 75%.
    Above75,
    /// More than 66%.
    Above66,
    /// More than 50%.
    Above50,
}

impl Threshold {
    pub const ALL: [Threshold; 4] = [
        Threshold::All,
        Threshold::Above75,
        Threshold::Above66,
        Threshold::Above50,
    ];

    pub fn percent(self) -> usize {
        match self {
            Threshold::All => 100,
            Threshold::Above75 => 75,
            Threshold::Above66 => 66,
            Threshold::Above50 => 50,
        }
    }

    /// Row caption: `100%` or `>75%` style.
    pub fn caption(self) -> String {
        match self {
            Threshold::All => "100%".to_string(),
            t => format!(">{}%", t.percent()),
        }
    }

    /// Whether `count` of `n` labels is a strong enough majority. Exact
    /// integer arithmetic.
    pub fn admits(self, count: usize, n: usize) -> bool {
        match self {
            Threshold::All => n > 0 && count == n,
            t => count * 100 > t.percent() * n,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.percent())
    }
}

impl FromStr for Threshold {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_end_matches('%');
        Self::ALL
            .into_iter()
            .find(|t| t.percent().to_string() == s)
            .ok_or_else(|| EvalError::BadThreshold(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoldRow {
    pub id: String,
    pub label: Label,
    /// Labels agreeing with the majority.
    pub count: usize,
    /// Labels present for this sentence.
    pub n: usize,
}

impl GoldRow {
    pub fn fraction(&self) -> f64 {
        self.count as f64 / self.n as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoldStandard {
    pub threshold: Threshold,
    pub rows: Vec<GoldRow>,
}

impl GoldStandard {
    pub fn distribution(&self) -> LabelDistribution {
        LabelDistribution::from_labels(self.rows.iter().map(|r| r.label))
    }

    /// `id<TAB>label<TAB>fraction` lines.
    pub fn to_tsv(&self) -> String {
        self.rows
            .iter()
            .map(|r| format!("{}\t{}\t{:.4}\n", r.id, r.label, r.fraction()))
            .collect()
    }
}

/// Plurality label of a row with its count; `None` on a plurality tie.
pub fn majority(labels: &[Option<Label>]) -> Option<(Label, usize, usize)> {
    let mut counts = [0usize; 3];
    for l in labels.iter().flatten() {
        counts[l.index()] += 1;
    }
    let n: usize = counts.iter().sum();
    let best = *counts.iter().max()?;
    if best == 0 || counts.iter().filter(|&&c| c == best).count() > 1 {
        return None;
    }
    let idx = counts.iter().position(|&c| c == best)?;
    Some((Label::from_index(idx)?, best, n))
}

/// Sentences whose plurality label reaches `threshold`. Rows with fewer
/// than two labels or a plurality tie are skipped.
pub fn build_gold(m: &AnnotationMatrix, threshold: Threshold) -> GoldStandard {
    let rows = m
        .rows
        .iter()
        .filter_map(|(id, labels)| {
            let (label, count, n) = majority(labels)?;
            (n >= 2 && threshold.admits(count, n)).then(|| GoldRow {
                id: id.clone(),
                label,
                count,
                n,
            })
        })
        .collect();
    GoldStandard { threshold, rows }
}

/// Label counts with percentage shares.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LabelDistribution {
    pub counts: [usize; 3],
}

impl LabelDistribution {
    pub fn from_labels(labels: impl IntoIterator<Item = Label>) -> Self {
        let mut counts = [0; 3];
        for l in labels {
            counts[l.index()] += 1;
        }
        LabelDistribution { counts }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn percent(&self, label: Label) -> f64 {
        match self.total() {
            0 => 0.0,
            t => 100.0 * self.counts[label.index()] as f64 / t as f64,
        }
    }
}

/// Renders one row per gold set in negative / neutral / positive order.
pub fn render_distributions(rows: &[(String, LabelDistribution)]) -> String {
    let mut out = format!(
        "{:<14}{:>10}{:>10}{:>10}{:>8}\n",
        "Agreement", "Negative", "Neutral", "Positive", "Count"
    );
    for (name, d) in rows {
        out.push_str(&format!(
            "{:<14}{:>9.1}%{:>9.1}%{:>9.1}%{:>8}\n",
            name,
            d.percent(Label::Negative),
            d.percent(Label::Neutral),
            d.percent(Label::Positive),
            d.total()
        ));
    }
    out
}

/// Decodes corpus bytes as UTF-8, falling back to ISO-8859-1 (each byte is
/// one code point) when the input is not valid UTF-8. The published
/// phrase-bank files use the single-byte encoding.
pub fn decode_text(bytes: &[u8]) -> String {
    match std::str::from_utf8(bytes) {
        Ok(s) => s.to_string(),
        Err(_) => bytes.iter().map(|&b| b as char).collect(),
    }
}

/// Parses `sentence text@label` lines; the separator is the last `@`.
/// Blank lines and `# ` comment lines are skipped.
pub fn load_corpus(bytes: &[u8]) -> Result<Vec<(String, Label)>, EvalError> {
    let text = decode_text(bytes);
    let text = text.strip_prefix('\u{feff}').unwrap_or(&text);
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with("# ") {
            continue;
        }
        let err = |reason: String| EvalError::Corpus { line: i + 1, reason };
        let (sentence, label) = line
            .rsplit_once('@')
            .ok_or_else(|| err("missing `@label` separator".into()))?;
        let label: Label = label
            .parse()
            .map_err(|e: crate::label::ParseLabelError| err(e.to_string()))?;
        out.push((sentence.trim().to_string(), label));
    }
    Ok(out)
}

pub fn write_corpus(items: &[(String, Label)]) -> String {
    items.iter().map(|(s, l)| format!("{s}@{l}\n")).collect()
}
