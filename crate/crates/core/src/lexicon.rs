//! Typed domain lexicon: entity classes, entries, and the TSV file format.
//!
//! One entry per line, four tab-separated fields:
//!
//! ```text
//! concept             anchor       pos-pattern  class
//! Earnings per share  eps          -            FinPositiveIfUp
//!                     speeded up   VERB PART    DirectionUp
//! ```
//!
//! Anchors are whitespace-separated token sequences of one to
//! [`MAX_ANCHOR_LEN`] tokens and are stored lowercased. Blank lines and lines
//! starting with `#` are skipped.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::io::BufRead;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::ingest::Pos;

pub const MAX_ANCHOR_LEN: usize = 5;

/// The closed set of lexicon entity classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntityClass {
    GeneralPositive,
    GeneralNegative,
    GeneralNeutral,
    FinPositiveIfUp,
    FinNegativeIfUp,
    DirectionUp,
    DirectionDown,
    InfluencerReversal,
    InfluencerModal,
    InfluencerLitigious,
    InfluencerUncertain,
}

/// Role groups of the entity classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassRole {
    GeneralPolarity,
    FinancialEntity,
    Influencer,
}

impl EntityClass {
    pub const ALL: [EntityClass; 11] = [
        EntityClass::GeneralPositive,
        EntityClass::GeneralNegative,
        EntityClass::GeneralNeutral,
        EntityClass::FinPositiveIfUp,
        EntityClass::FinNegativeIfUp,
        EntityClass::DirectionDown,
        EntityClass::DirectionUp,
        EntityClass::InfluencerReversal,
        EntityClass::InfluencerModal,
        EntityClass::InfluencerLitigious,
        EntityClass::InfluencerUncertain,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EntityClass::GeneralPositive => "GeneralPositive",
            EntityClass::GeneralNegative => "GeneralNegative",
            EntityClass::GeneralNeutral => "GeneralNeutral",
            EntityClass::FinPositiveIfUp => "FinPositiveIfUp",
            EntityClass::FinNegativeIfUp => "FinNegativeIfUp",
            EntityClass::DirectionUp => "DirectionUp",
            EntityClass::DirectionDown => "DirectionDown",
            EntityClass::InfluencerReversal => "InfluencerReversal",
            EntityClass::InfluencerModal => "InfluencerModal",
            EntityClass::InfluencerLitigious => "InfluencerLitigious",
            EntityClass::InfluencerUncertain => "InfluencerUncertain",
        }
    }

    pub fn role(self) -> ClassRole {
        use EntityClass::*;
        match self {
            GeneralPositive | GeneralNegative | GeneralNeutral => ClassRole::GeneralPolarity,
            FinPositiveIfUp | FinNegativeIfUp => ClassRole::FinancialEntity,
            DirectionUp | DirectionDown | InfluencerReversal | InfluencerModal | InfluencerLitigious
            | InfluencerUncertain => ClassRole::Influencer,
        }
    }

    pub fn is_direction(self) -> bool {
        matches!(self, EntityClass::DirectionUp | EntityClass::DirectionDown)
    }

    pub fn is_financial(self) -> bool {
        self.role() == ClassRole::FinancialEntity
    }

    pub fn is_general(self) -> bool {
        self.role() == ClassRole::GeneralPolarity
    }

    /// Tie-break rank when two equally long matches start at the same token:
    /// financial > direction > other influencers > general. Lower wins.
    pub fn precedence(self) -> u8 {
        match self.role() {
            ClassRole::FinancialEntity => 0,
            ClassRole::Influencer if self.is_direction() => 1,
            ClassRole::Influencer => 2,
            ClassRole::GeneralPolarity => 3,
        }
    }

    /// Category label used in the statistics table.
    fn category(self) -> (&'static str, &'static str) {
        use EntityClass::*;
        match self {
            GeneralPositive => ("General entity", "Positive"),
            GeneralNegative => ("General entity", "Negative"),
            GeneralNeutral => ("General entity", "Neutral"),
            FinPositiveIfUp => ("Financial entity", "Positive-if-up"),
            FinNegativeIfUp => ("Financial entity", "Negative-if-up"),
            DirectionDown => ("Direction", "Down"),
            DirectionUp => ("Direction", "Up"),
            InfluencerReversal => ("Polarity influencer", "Reversal"),
            InfluencerModal => ("Polarity influencer", "Modal"),
            InfluencerLitigious => ("Polarity influencer", "Litigious"),
            InfluencerUncertain => ("Polarity influencer", "Uncertain"),
        }
    }
}

impl fmt::Display for EntityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EntityClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EntityClass::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LexiconEntry {
    pub concept: String,
    pub anchor: Vec<String>,
    pub pos_pattern: Option<Vec<Pos>>,
    pub class: EntityClass,
}

impl LexiconEntry {
    pub fn new(concept: &str, anchor: &str, class: EntityClass) -> Self {
        LexiconEntry {
            concept: concept.to_string(),
            anchor: anchor.split_whitespace().map(str::to_lowercase).collect(),
            pos_pattern: None,
            class,
        }
    }

    pub fn with_pos(mut self, pattern: Vec<Pos>) -> Self {
        self.pos_pattern = Some(pattern);
        self
    }

    pub fn len(&self) -> usize {
        self.anchor.len()
    }

    pub fn is_empty(&self) -> bool {
        self.anchor.is_empty()
    }

    fn key(&self) -> (&[String], Option<&[Pos]>, EntityClass) {
        (&self.anchor, self.pos_pattern.as_deref(), self.class)
    }

    fn to_tsv_line(&self) -> String {
        let pos = match &self.pos_pattern {
            None => "-".to_string(),
            Some(p) => p.iter().map(|t| t.as_str()).collect::<Vec<_>>().join(" "),
        };
        format!("{}\t{}\t{}\t{}", self.concept, self.anchor.join(" "), pos, self.class)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LexiconError {
    #[error("line {line}: malformed {field}: {reason}")]
    Malformed {
        line: usize,
        field: &'static str,
        reason: String,
    },
    #[error("line {line}: unknown entity class {tag:?}")]
    UnknownClass { line: usize, tag: String },
    #[error("line {line}: duplicate entry (same anchor, POS pattern and class as line {first})")]
    Duplicate { line: usize, first: usize },
    #[error("line {line}: input is not valid UTF-8")]
    Encoding { line: usize },
    #[error("invalid entry: {0}")]
    InvalidEntry(String),
}

/// Anchor, POS pattern and class: the identity of an entry for duplicate detection.
type EntryKey = (Vec<String>, Option<Vec<Pos>>, EntityClass);

/// An immutable, indexed collection of lexicon entries.
///
/// Entries are addressed by their position ([`EntryId`]); the first-token
/// index maps each anchor head to the entries starting with it.
#[derive(Clone, Debug, Default)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    index: HashMap<String, Vec<usize>>,
}

pub type EntryId = usize;

impl Lexicon {
    pub fn from_entries(entries: Vec<LexiconEntry>) -> Result<Self, LexiconError> {
        let mut seen = HashSet::new();
        for e in &entries {
            validate_entry(e).map_err(LexiconError::InvalidEntry)?;
            if !seen.insert(e.key()) {
                return Err(LexiconError::InvalidEntry(format!(
                    "duplicate entry {:?}",
                    e.to_tsv_line()
                )));
            }
        }
        Ok(Self::build(entries))
    }

    fn build(entries: Vec<LexiconEntry>) -> Self {
        let mut index: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, e) in entries.iter().enumerate() {
            index.entry(e.anchor[0].clone()).or_default().push(i);
        }
        Lexicon { entries, index }
    }

    /// Parses the TSV lexicon format from a reader.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self, LexiconError> {
        let mut entries = Vec::new();
        let mut first_seen: HashMap<EntryKey, usize> = HashMap::new();
        for (i, line) in reader.split(b'\n').enumerate() {
            let lineno = i + 1;
            let raw = line.map_err(|_| LexiconError::Encoding { line: lineno })?;
            let text = String::from_utf8(raw).map_err(|_| LexiconError::Encoding { line: lineno })?;
            let text = text.strip_suffix('\r').unwrap_or(&text);
            if text.trim().is_empty() || text.starts_with('#') {
                continue;
            }
            let entry = parse_line(text, lineno)?;
            let key = (entry.anchor.clone(), entry.pos_pattern.clone(), entry.class);
            if let Some(&first) = first_seen.get(&key) {
                return Err(LexiconError::Duplicate { line: lineno, first });
            }
            first_seen.insert(key, lineno);
            entries.push(entry);
        }
        Ok(Self::build(entries))
    }

    pub fn parse_str(text: &str) -> Result<Self, LexiconError> {
        Self::parse(text.as_bytes())
    }

    pub fn load(path: impl AsRef<Path>) -> crate::Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| crate::Error::io(path.display().to_string(), e))?;
        Ok(Self::parse(std::io::BufReader::new(file))?)
    }

    /// Loads several lexicon files; entries of later files replace entries of
    /// earlier files that share the same anchor.
    pub fn load_merged<P: AsRef<Path>>(paths: &[P]) -> crate::Result<Self> {
        let mut merged = Lexicon::default();
        for p in paths {
            merged = merged.merge_override(Self::load(p)?);
        }
        Ok(merged)
    }

    /// Returns a lexicon holding `other`'s entries plus every entry of `self`
    /// whose anchor does not occur in `other`.
    pub fn merge_override(self, other: Lexicon) -> Lexicon {
        let overridden: HashSet<&[String]> = other.entries.iter().map(|e| e.anchor.as_slice()).collect();
        let mut entries: Vec<LexiconEntry> = self
            .entries
            .iter()
            .filter(|e| !overridden.contains(e.anchor.as_slice()))
            .cloned()
            .collect();
        entries.extend(other.entries);
        Self::build(entries)
    }

    /// Keeps only the entries accepted by `keep`.
    pub fn filtered(&self, keep: impl Fn(&LexiconEntry) -> bool) -> Lexicon {
        Self::build(self.entries.iter().filter(|e| keep(e)).cloned().collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn entry(&self, id: EntryId) -> &LexiconEntry {
        &self.entries[id]
    }

    /// Entries whose anchor begins with `token` (lowercased).
    pub fn candidate_entries(&self, token: &str) -> Vec<&LexiconEntry> {
        self.candidate_ids(token).iter().map(|&i| &self.entries[i]).collect()
    }

    pub fn candidate_ids(&self, token: &str) -> &[EntryId] {
        self.index.get(token).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&e.to_tsv_line());
            out.push('\n');
        }
        out
    }

    pub fn stats(&self) -> LexiconStats {
        let mut counts = [0usize; 11];
        for e in &self.entries {
            counts[class_slot(e.class)] += 1;
        }
        LexiconStats { counts }
    }
}

fn class_slot(class: EntityClass) -> usize {
    EntityClass::ALL.iter().position(|&c| c == class).unwrap()
}

fn validate_entry(e: &LexiconEntry) -> Result<(), String> {
    if e.anchor.is_empty() {
        return Err("empty anchor".into());
    }
    if e.anchor.len() > MAX_ANCHOR_LEN {
        return Err(format!("anchor longer than {MAX_ANCHOR_LEN} tokens"));
    }
    if e.anchor
        .iter()
        .any(|t| t.is_empty() || t.chars().any(char::is_whitespace))
    {
        return Err("anchor token contains whitespace".into());
    }
    if e.anchor.iter().any(|t| *t != t.to_lowercase()) {
        return Err("anchor must be lowercased".into());
    }
    if let Some(p) = &e.pos_pattern {
        if p.len() != e.anchor.len() {
            return Err("POS pattern length differs from anchor length".into());
        }
    }
    Ok(())
}

fn parse_line(text: &str, line: usize) -> Result<LexiconEntry, LexiconError> {
    let fields: Vec<&str> = text.split('\t').collect();
    if fields.len() != 4 {
        return Err(LexiconError::Malformed {
            line,
            field: "line",
            reason: format!("expected 4 tab-separated fields, found {}", fields.len()),
        });
    }
    let anchor: Vec<String> = fields[1].split_whitespace().map(str::to_lowercase).collect();
    if anchor.is_empty() {
        return Err(LexiconError::Malformed {
            line,
            field: "anchor",
            reason: "empty".into(),
        });
    }
    if anchor.len() > MAX_ANCHOR_LEN {
        return Err(LexiconError::Malformed {
            line,
            field: "anchor",
            reason: format!("{} tokens exceeds the cap of {MAX_ANCHOR_LEN}", anchor.len()),
        });
    }
    let pos_field = fields[2].trim();
    let pos_pattern = if pos_field == "-" {
        None
    } else {
        let tags = pos_field
            .split_whitespace()
            .map(|t| {
                t.parse::<Pos>().map_err(|_| LexiconError::Malformed {
                    line,
                    field: "pos_pattern",
                    reason: format!("unknown POS tag {t:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if tags.len() != anchor.len() {
            return Err(LexiconError::Malformed {
                line,
                field: "pos_pattern",
                reason: format!("{} tags for {} anchor tokens", tags.len(), anchor.len()),
            });
        }
        Some(tags)
    };
    let tag = fields[3].trim();
    let class = tag
        .parse::<EntityClass>()
        .map_err(|tag| LexiconError::UnknownClass { line, tag })?;
    Ok(LexiconEntry {
        concept: fields[0].trim().to_string(),
        anchor,
        pos_pattern,
        class,
    })
}

/// Per-class entry counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexiconStats {
    counts: [usize; 11],
}

impl LexiconStats {
    pub fn count(&self, class: EntityClass) -> usize {
        self.counts[class_slot(class)]
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Share of `class` in percent; 0.0 for an empty lexicon.
    pub fn percent(&self, class: EntityClass) -> f64 {
        let total = self.total();
        if total == 0 {
            0.0
        } else {
            100.0 * self.count(class) as f64 / total as f64
        }
    }

    /// Share rounded half-up to one decimal, as printed in the report.
    pub fn rounded_percent(&self, class: EntityClass) -> f64 {
        let total = self.total() as u64;
        if total == 0 {
            return 0.0;
        }
        // integer half-up rounding of 1000 * count / total
        let tenths = (2000 * self.count(class) as u64 + total) / (2 * total);
        tenths as f64 / 10.0
    }

    /// Table-style block: entity class, category, count and share.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<20} {:<15} {:>7} {:>6}\n",
            "Entity class", "Category", "Number", "%"
        ));
        let mut last_group = "";
        for class in EntityClass::ALL {
            let (group, category) = class.category();
            let shown = if group == last_group { "" } else { group };
            last_group = group;
            out.push_str(&format!(
                "{:<20} {:<15} {:>7} {:>6.1}\n",
                shown,
                category,
                self.count(class),
                self.rounded_percent(class)
            ));
        }
        out.push_str(&format!("{:<20} {:<15} {:>7}\n", "Total", "", self.total()));
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("class\tcount\tpercent\n");
        for class in EntityClass::ALL {
            out.push_str(&format!(
                "{}\t{}\t{:.1}\n",
                class,
                self.count(class),
                self.rounded_percent(class)
            ));
        }
        out
    }
}
