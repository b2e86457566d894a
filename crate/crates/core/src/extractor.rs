//! Entity extraction: lexicon matching, neutral gap filling, and pruning.
//!
//! [`extract`] runs detect → fill → merge neutrals → apply influencers →
//! merge neutrals. With pruning disabled it stops after the fill step.

use std::fmt;
use std::str::FromStr;

use crate::ingest::Sentence;
use crate::lexicon::{ClassRole, EntityClass, EntryId, Lexicon};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Negative,
    Neutral,
}

impl Polarity {
    fn flipped(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
            Polarity::Neutral => Polarity::Neutral,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Polarity::Positive => "Positive",
            Polarity::Negative => "Negative",
            Polarity::Neutral => "Neutral",
        }
    }
}

/// Marks which pruning rule changed an entity's polarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Postfix {
    Up,
    Down,
    Reversed,
    Uncertain,
    Modal,
    Litigious,
}

impl Postfix {
    const ALL: [Postfix; 6] = [
        Postfix::Up,
        Postfix::Down,
        Postfix::Reversed,
        Postfix::Uncertain,
        Postfix::Modal,
        Postfix::Litigious,
    ];

    fn as_str(self) -> &'static str {
        match self {
            Postfix::Up => "Up",
            Postfix::Down => "Down",
            Postfix::Reversed => "Reversed",
            Postfix::Uncertain => "Uncertain",
            Postfix::Modal => "Modal",
            Postfix::Litigious => "Litigious",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolarityTag {
    pub base: Polarity,
    pub postfix: Option<Postfix>,
}

impl PolarityTag {
    pub const NEUTRAL: PolarityTag = PolarityTag {
        base: Polarity::Neutral,
        postfix: None,
    };

    pub fn new(base: Polarity, postfix: Option<Postfix>) -> Self {
        PolarityTag { base, postfix }
    }

    /// Prior polarity of a freshly matched lexicon entry.
    pub fn prior(class: EntityClass) -> Self {
        let base = match class {
            EntityClass::GeneralPositive => Polarity::Positive,
            EntityClass::GeneralNegative => Polarity::Negative,
            _ => Polarity::Neutral,
        };
        PolarityTag::new(base, None)
    }
}

impl fmt::Display for PolarityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.postfix {
            None => f.write_str(self.base.as_str()),
            Some(p) => write!(f, "{}/{}", self.base.as_str(), p.as_str()),
        }
    }
}

impl FromStr for PolarityTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (base, postfix) = match s.split_once('/') {
            Some((b, p)) => (b, Some(p)),
            None => (s, None),
        };
        let base = [Polarity::Positive, Polarity::Negative, Polarity::Neutral]
            .into_iter()
            .find(|b| b.as_str() == base)
            .ok_or_else(|| format!("unknown polarity {s:?}"))?;
        let postfix = match postfix {
            None => None,
            Some(p) => Some(
                Postfix::ALL
                    .into_iter()
                    .find(|x| x.as_str() == p)
                    .ok_or_else(|| format!("unknown postfix {p:?}"))?,
            ),
        };
        Ok(PolarityTag { base, postfix })
    }
}

/// A lexicon class, or the synthetic class of gap-filling neutral spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntityKind {
    NeutralFill,
    Class(EntityClass),
}

impl EntityKind {
    pub fn class(self) -> Option<EntityClass> {
        match self {
            EntityKind::Class(c) => Some(c),
            EntityKind::NeutralFill => None,
        }
    }

    fn is_influencer(self) -> bool {
        self.class().is_some_and(|c| c.role() == ClassRole::Influencer)
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntityKind::NeutralFill => f.write_str("NeutralFill"),
            EntityKind::Class(c) => f.write_str(c.as_str()),
        }
    }
}

impl FromStr for EntityKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "NeutralFill" {
            Ok(EntityKind::NeutralFill)
        } else {
            s.parse::<EntityClass>()
                .map(EntityKind::Class)
                .map_err(|t| format!("unknown entity kind {t:?}"))
        }
    }
}

/// The type of an entity: what equivalence of sequences compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EntityType {
    pub kind: EntityKind,
    pub polarity: PolarityTag,
}

impl EntityType {
    pub const NEUTRAL_FILL: EntityType = EntityType {
        kind: EntityKind::NeutralFill,
        polarity: PolarityTag::NEUTRAL,
    };
}

impl fmt::Display for EntityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind, self.polarity)
    }
}

impl FromStr for EntityType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, pol) = s
            .split_once(':')
            .ok_or_else(|| format!("malformed entity type {s:?}"))?;
        Ok(EntityType {
            kind: kind.parse()?,
            polarity: pol.parse()?,
        })
    }
}

/// A matched span `[start, end)` of token indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entity {
    pub start: usize,
    pub end: usize,
    pub kind: EntityKind,
    pub polarity: PolarityTag,
    pub source: Option<EntryId>,
}

impl Entity {
    pub fn fill(start: usize, end: usize) -> Self {
        Entity {
            start,
            end,
            kind: EntityKind::NeutralFill,
            polarity: PolarityTag::NEUTRAL,
            source: None,
        }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    pub fn entity_type(&self) -> EntityType {
        EntityType {
            kind: self.kind,
            polarity: self.polarity,
        }
    }

    fn is_plain_neutral(&self) -> bool {
        matches!(
            self.kind,
            EntityKind::NeutralFill | EntityKind::Class(EntityClass::GeneralNeutral)
        ) && self.polarity == PolarityTag::NEUTRAL
    }

    fn overlaps(&self, other: &Entity) -> bool {
        self.start < other.end && other.start < self.end
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EntitySequence {
    pub sentence_id: Option<String>,
    pub entities: Vec<Entity>,
}

impl EntitySequence {
    pub fn len(&self) -> usize {
        self.entities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entities.is_empty()
    }

    pub fn types(&self) -> impl Iterator<Item = EntityType> + '_ {
        self.entities.iter().map(Entity::entity_type)
    }

    /// True when the spans partition `[0, n_tokens)` in order.
    pub fn covers(&self, n_tokens: usize) -> bool {
        let mut cursor = 0;
        for e in &self.entities {
            if e.start != cursor || e.end <= e.start {
                return false;
            }
            cursor = e.end;
        }
        cursor == n_tokens
    }

    /// One TSV line: the sentence id (or `fallback_id`) followed by one
    /// `start:end:Kind:Polarity` field per entity.
    pub fn to_tsv_line(&self, fallback_id: &str) -> String {
        let mut line = self.sentence_id.clone().unwrap_or_else(|| fallback_id.to_string());
        for e in &self.entities {
            line.push_str(&format!("\t{}:{}:{}:{}", e.start, e.end, e.kind, e.polarity));
        }
        line
    }

    pub fn parse_tsv_line(line: &str) -> Result<EntitySequence, String> {
        let mut fields = line.split('\t');
        let id = fields.next().unwrap_or_default().to_string();
        let mut entities = Vec::new();
        for f in fields {
            let parts: Vec<&str> = f.splitn(4, ':').collect();
            if parts.len() != 4 {
                return Err(format!("malformed entity field {f:?}"));
            }
            let start = parts[0].parse().map_err(|_| format!("bad start in {f:?}"))?;
            let end = parts[1].parse().map_err(|_| format!("bad end in {f:?}"))?;
            entities.push(Entity {
                start,
                end,
                kind: parts[2].parse()?,
                polarity: parts[3].parse()?,
                source: None,
            });
        }
        Ok(EntitySequence {
            sentence_id: Some(id),
            entities,
        })
    }
}

/// Every lexicon match in the sentence, before overlap resolution.
pub fn all_matches(lex: &Lexicon, s: &Sentence) -> Vec<Entity> {
    let mut found = Vec::new();
    for (i, tok) in s.tokens.iter().enumerate() {
        for &id in lex.candidate_ids(&tok.lower) {
            let entry = lex.entry(id);
            let end = i + entry.anchor.len();
            if end > s.tokens.len() {
                continue;
            }
            let window = &s.tokens[i..end];
            let words_match = window.iter().zip(&entry.anchor).all(|(t, a)| t.lower == *a);
            let pos_match = entry
                .pos_pattern
                .as_ref()
                .is_none_or(|pat| window.iter().zip(pat).all(|(t, p)| t.pos_or_other() == *p));
            if words_match && pos_match {
                found.push(Entity {
                    start: i,
                    end,
                    kind: EntityKind::Class(entry.class),
                    polarity: PolarityTag::prior(entry.class),
                    source: Some(id),
                });
            }
        }
    }
    found
}

/// Matches the lexicon against the sentence and resolves overlaps.
///
/// Matches strictly inside a longer match are discarded; the remaining ones
/// are accepted greedily by length (longest first), then leftmost start, then
/// class precedence. The result is sorted by position and non-overlapping.
pub fn detect(lex: &Lexicon, s: &Sentence) -> Vec<Entity> {
    let raw = all_matches(lex, s);
    let mut maximal: Vec<&Entity> = raw
        .iter()
        .filter(|m| {
            !raw.iter()
                .any(|o| o.len() > m.len() && o.start <= m.start && m.end <= o.end)
        })
        .collect();
    maximal.sort_by_key(|m| {
        (
            std::cmp::Reverse(m.len()),
            m.start,
            m.kind.class().map(EntityClass::precedence),
            m.source,
        )
    });
    let mut chosen: Vec<Entity> = Vec::new();
    for m in maximal {
        if !chosen.iter().any(|c| c.overlaps(m)) {
            chosen.push(m.clone());
        }
    }
    chosen.sort_by_key(|e| e.start);
    chosen
}

/// Covers the token ranges not claimed by `candidates` with neutral fills.
pub fn fill_neutral(s: &Sentence, candidates: Vec<Entity>) -> EntitySequence {
    let mut entities = Vec::with_capacity(candidates.len() * 2 + 1);
    let mut cursor = 0;
    for c in candidates {
        debug_assert!(c.start >= cursor, "candidates must be sorted and disjoint");
        if c.start > cursor {
            entities.push(Entity::fill(cursor, c.start));
        }
        cursor = c.end;
        entities.push(c);
    }
    if cursor < s.tokens.len() {
        entities.push(Entity::fill(cursor, s.tokens.len()));
    }
    EntitySequence {
        sentence_id: s.id.clone(),
        entities,
    }
}

/// Collapses each run of adjacent plain-neutral entities (fills and
/// unmodified general-neutral matches) into one fill.
pub fn merge_neutrals(seq: EntitySequence) -> EntitySequence {
    let mut out: Vec<Entity> = Vec::with_capacity(seq.entities.len());
    for e in seq.entities {
        if e.is_plain_neutral() {
            if let Some(last) = out.last_mut() {
                if last.kind == EntityKind::NeutralFill && last.end == e.start {
                    last.end = e.end;
                    continue;
                }
            }
            out.push(Entity::fill(e.start, e.end));
        } else {
            out.push(e);
        }
    }
    EntitySequence {
        sentence_id: seq.sentence_id,
        entities: out,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Backward,
    Forward,
}

fn is_eligible(influencer: EntityClass, target: &Entity) -> bool {
    let class = match target.kind {
        EntityKind::Class(c) if c.role() != ClassRole::Influencer => c,
        _ => return false,
    };
    if influencer.is_direction() {
        target.polarity.postfix.is_none()
            && matches!(
                class,
                EntityClass::FinPositiveIfUp
                    | EntityClass::FinNegativeIfUp
                    | EntityClass::GeneralPositive
                    | EntityClass::GeneralNegative
            )
    } else {
        target.polarity.base != Polarity::Neutral
    }
}

fn influenced(influencer: EntityClass, target: &Entity) -> PolarityTag {
    use EntityClass::*;
    let current = target.polarity;
    match influencer {
        DirectionUp | DirectionDown => {
            let up = influencer == DirectionUp;
            let postfix = Some(if up { Postfix::Up } else { Postfix::Down });
            let base = match target.kind.class() {
                Some(FinPositiveIfUp) if up => Polarity::Positive,
                Some(FinPositiveIfUp) => Polarity::Negative,
                Some(FinNegativeIfUp) if up => Polarity::Negative,
                Some(FinNegativeIfUp) => Polarity::Positive,
                _ => current.base,
            };
            PolarityTag::new(base, postfix)
        }
        InfluencerReversal => PolarityTag::new(current.base.flipped(), Some(Postfix::Reversed)),
        InfluencerUncertain => PolarityTag::new(current.base, Some(Postfix::Uncertain)),
        InfluencerModal => PolarityTag::new(current.base, Some(Postfix::Modal)),
        InfluencerLitigious => PolarityTag::new(current.base, Some(Postfix::Litigious)),
        GeneralPositive | GeneralNegative | GeneralNeutral | FinPositiveIfUp | FinNegativeIfUp => current,
    }
}

/// Finds the nearest eligible target for the influencer at `at`, looking at
/// most `window` candidate entities away in each direction. Fills and other
/// influencers are skipped without counting.
fn find_target(entities: &[Entity], at: usize, class: EntityClass, window: usize) -> Option<usize> {
    let order = if class.is_direction() {
        [Direction::Backward, Direction::Forward]
    } else {
        [Direction::Forward, Direction::Backward]
    };
    for dir in order {
        let mut seen = 0;
        let mut idx = at;
        loop {
            idx = match dir {
                Direction::Backward if idx == 0 => break,
                Direction::Backward => idx - 1,
                Direction::Forward if idx + 1 >= entities.len() => break,
                Direction::Forward => idx + 1,
            };
            let e = &entities[idx];
            if e.kind == EntityKind::NeutralFill || e.kind.is_influencer() {
                continue;
            }
            if is_eligible(class, e) {
                return Some(idx);
            }
            seen += 1;
            if seen >= window {
                break;
            }
        }
    }
    None
}

/// Applies directionalities and polarity influencers to their nearest
/// eligible targets.
///
/// Directions are resolved first, then reversal, modal, litigious and
/// uncertainty influencers, each pass left to right. A consumed influencer
/// is absorbed into its target when only fills separate them; otherwise its
/// tokens become a neutral fill. Influencers without a target stay as they
/// are.
pub fn apply_influencers(seq: EntitySequence, window: usize) -> EntitySequence {
    let window = window.max(1);
    let mut entities = seq.entities;
    for directions_pass in [true, false] {
        let mut i = 0;
        while i < entities.len() {
            let class = match entities[i].kind.class() {
                Some(c) if c.role() == ClassRole::Influencer && c.is_direction() == directions_pass => c,
                _ => {
                    i += 1;
                    continue;
                }
            };
            let Some(t) = find_target(&entities, i, class, window) else {
                i += 1;
                continue;
            };
            entities[t].polarity = influenced(class, &entities[t]);
            let (lo, hi) = (t.min(i), t.max(i));
            let only_fills_between = entities[lo + 1..hi].iter().all(|e| e.kind == EntityKind::NeutralFill);
            if only_fills_between {
                let mut target = entities[t].clone();
                target.start = entities[lo].start;
                target.end = entities[hi].end;
                entities.splice(lo..=hi, std::iter::once(target));
                i = lo + 1;
            } else {
                let (start, end) = (entities[i].start, entities[i].end);
                entities[i] = Entity::fill(start, end);
                i += 1;
            }
        }
    }
    EntitySequence {
        sentence_id: seq.sentence_id,
        entities,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtractOptions {
    /// Influencer search window, in candidate entities.
    pub window: usize,
    /// When false the output is the detected entities plus neutral fills.
    pub prune: bool,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions { window: 1, prune: true }
    }
}

/// Full extraction pipeline for one sentence.
pub fn extract(lex: &Lexicon, s: &Sentence, options: ExtractOptions) -> EntitySequence {
    let seq = fill_neutral(s, detect(lex, s));
    if !options.prune {
        return seq;
    }
    merge_neutrals(apply_influencers(merge_neutrals(seq), options.window))
}

/// A lexicon bound to extraction options.
#[derive(Clone, Copy, Debug)]
pub struct Extractor<'a> {
    lexicon: &'a Lexicon,
    options: ExtractOptions,
}

impl<'a> Extractor<'a> {
    pub fn new(lexicon: &'a Lexicon) -> Self {
        Extractor {
            lexicon,
            options: ExtractOptions::default(),
        }
    }

    pub fn with_options(lexicon: &'a Lexicon, options: ExtractOptions) -> Self {
        Extractor { lexicon, options }
    }

    pub fn window(mut self, window: usize) -> Self {
        self.options.window = window;
        self
    }

    pub fn pruning(mut self, prune: bool) -> Self {
        self.options.prune = prune;
        self
    }

    pub fn extract(&self, s: &Sentence) -> EntitySequence {
        extract(self.lexicon, s, self.options)
    }
}
