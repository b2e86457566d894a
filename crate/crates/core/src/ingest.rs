//! Tokenization, coarse POS tagging, and the pre-tagged corpus format.

use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use thiserror::Error;

use crate::lexicon::{EntityClass, Lexicon};

/// Coarse part-of-speech tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pos {
    Noun,
    Verb,
    Adj,
    Adv,
    Num,
    Part,
    Other,
}

impl Pos {
    pub const ALL: [Pos; 7] = [
        Pos::Noun,
        Pos::Verb,
        Pos::Adj,
        Pos::Adv,
        Pos::Num,
        Pos::Part,
        Pos::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Pos::Noun => "NOUN",
            Pos::Verb => "VERB",
            Pos::Adj => "ADJ",
            Pos::Adv => "ADV",
            Pos::Num => "NUM",
            Pos::Part => "PART",
            Pos::Other => "OTHER",
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pos {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Pos::ALL.iter().copied().find(|p| p.as_str() == s).ok_or(())
    }
}

/// A token of a sentence. `span` holds byte offsets into the sentence text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub lower: String,
    pub pos: Option<Pos>,
    pub span: (usize, usize),
}

impl Token {
    fn new(text: &str, start: usize, end: usize) -> Self {
        let surface = &text[start..end];
        Token {
            surface: surface.to_string(),
            lower: surface.to_lowercase(),
            pos: None,
            span: (start, end),
        }
    }

    pub fn pos_or_other(&self) -> Pos {
        self.pos.unwrap_or(Pos::Other)
    }
}

/// Splits one sentence into tokens.
///
/// Words are maximal alphanumeric runs (an apostrophe between letters stays
/// inside the word). Numbers keep their decimal or thousands separators and a
/// trailing `%`. A hyphen between two alphanumerics splits the word and is
/// dropped; every other non-space character is a one-character token.
pub fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let byte_at = |i: usize| chars.get(i).map(|c| c.0).unwrap_or(text.len());
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i].1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '-'
            && i > 0
            && chars[i - 1].1.is_alphanumeric()
            && chars.get(i + 1).is_some_and(|n| n.1.is_alphanumeric())
        {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_alphanumeric() {
            i += 1;
            loop {
                match chars.get(i).map(|c| c.1) {
                    Some(n) if n.is_alphanumeric() => i += 1,
                    Some('.') | Some(',')
                        if chars[i - 1].1.is_ascii_digit()
                            && chars.get(i + 1).is_some_and(|n| n.1.is_ascii_digit()) =>
                    {
                        i += 2
                    }
                    Some('\'') | Some('’')
                        if chars[i - 1].1.is_alphabetic() && chars.get(i + 1).is_some_and(|n| n.1.is_alphabetic()) =>
                    {
                        i += 2
                    }
                    _ => break,
                }
            }
            if chars[i - 1].1.is_ascii_digit() && chars.get(i).is_some_and(|n| n.1 == '%') {
                i += 1;
            }
        } else {
            i += 1;
        }
        tokens.push(Token::new(text, byte_at(start), byte_at(i)));
    }
    tokens
}

/// Rebuilds the sentence text from token spans and the original gaps.
pub fn detokenize(text: &str, tokens: &[Token]) -> String {
    let mut out = String::with_capacity(text.len());
    let mut cursor = 0;
    for t in tokens {
        out.push_str(&text[cursor..t.span.0]);
        out.push_str(&t.surface);
        cursor = t.span.1;
    }
    out.push_str(&text[cursor..]);
    out
}

/// Assigns a coarse POS tag to every token.
pub trait Tagger: Send + Sync {
    fn tag(&self, tokens: &mut [Token]);
}

/// Keeps whatever tags the tokens already carry; untagged tokens get `OTHER`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PassThroughTagger;

impl Tagger for PassThroughTagger {
    fn tag(&self, tokens: &mut [Token]) {
        for t in tokens {
            t.pos.get_or_insert(Pos::Other);
        }
    }
}

/// Deterministic tagger built from closed-class word lists, suffix rules and
/// optional lexicon hints.
#[derive(Clone, Debug, Default)]
pub struct HeuristicTagger {
    hints: HashMap<String, Pos>,
}

const OTHER_WORDS: &[&str] = &[
    "a",
    "an",
    "the",
    "this",
    "that",
    "these",
    "those",
    "of",
    "in",
    "on",
    "at",
    "by",
    "for",
    "from",
    "with",
    "without",
    "into",
    "onto",
    "over",
    "under",
    "about",
    "against",
    "between",
    "through",
    "during",
    "before",
    "after",
    "above",
    "below",
    "since",
    "until",
    "within",
    "per",
    "via",
    "and",
    "or",
    "but",
    "nor",
    "yet",
    "so",
    "as",
    "than",
    "if",
    "while",
    "whereas",
    "because",
    "although",
    "though",
    "when",
    "where",
    "which",
    "who",
    "whom",
    "whose",
    "what",
    "it",
    "its",
    "he",
    "she",
    "they",
    "them",
    "their",
    "his",
    "her",
    "we",
    "our",
    "us",
    "you",
    "your",
    "i",
    "me",
    "my",
    "some",
    "any",
    "each",
    "every",
    "all",
    "both",
    "such",
    "other",
    "another",
    "no",
    "there",
    "here",
    "also",
    "among",
    "across",
    "toward",
    "towards",
    "upon",
    "including",
];
const PART_WORDS: &[&str] = &["not", "n't", "to", "up", "down", "off", "out", "never"];
const VERB_WORDS: &[&str] = &[
    "is",
    "are",
    "was",
    "were",
    "be",
    "been",
    "being",
    "am",
    "has",
    "have",
    "had",
    "do",
    "does",
    "did",
    "will",
    "would",
    "shall",
    "should",
    "can",
    "could",
    "may",
    "might",
    "must",
    "fell",
    "fall",
    "falls",
    "rose",
    "rise",
    "rises",
    "grew",
    "grow",
    "grows",
    "increase",
    "increases",
    "decrease",
    "decreases",
    "drop",
    "drops",
    "jump",
    "jumps",
    "soar",
    "soars",
    "plunge",
    "plunges",
    "climb",
    "climbs",
    "decline",
    "declines",
    "sank",
    "sink",
    "said",
    "says",
    "say",
    "expects",
    "expect",
    "make",
    "made",
    "makes",
    "get",
    "got",
    "gets",
    "take",
    "took",
    "takes",
    "went",
    "go",
    "goes",
    "came",
    "come",
    "comes",
    "saw",
    "see",
    "sees",
    "won",
    "win",
    "wins",
    "lost",
    "lose",
    "loses",
    "cut",
    "cuts",
    "hit",
    "hits",
    "remain",
    "remains",
    "became",
    "become",
    "becomes",
    "totaled",
    "totalled",
    "reached",
    "reach",
    "reaches",
    "include",
    "includes",
    "signed",
    "sign",
    "signs",
    "plans",
    "plan",
    "slumped",
    "surged",
    "doubled",
    "halved",
    "improve",
    "improves",
    "weaken",
    "weakens",
    "strengthen",
    "strengthens",
];
const ADJ_WORDS: &[&str] = &[
    "good",
    "bad",
    "strong",
    "weak",
    "new",
    "old",
    "high",
    "low",
    "higher",
    "lower",
    "highest",
    "lowest",
    "large",
    "small",
    "larger",
    "smaller",
    "big",
    "bigger",
    "great",
    "greater",
    "best",
    "worse",
    "worst",
    "better",
    "net",
    "gross",
    "total",
    "annual",
    "first",
    "second",
    "third",
    "fourth",
    "last",
    "next",
    "previous",
    "corresponding",
    "same",
    "major",
    "minor",
    "poor",
    "solid",
    "positive",
    "negative",
    "neutral",
    "financial",
    "operational",
    "full",
    "early",
    "late",
    "recent",
    "current",
    "international",
    "global",
    "local",
    "difficult",
    "hard",
    "easy",
    "stable",
    "uncertain",
    "robust",
    "healthy",
    "sluggish",
    "flat",
    "record",
];
const ADV_WORDS: &[&str] = &[
    "very",
    "considerably",
    "significantly",
    "slightly",
    "sharply",
    "strongly",
    "only",
    "still",
    "already",
    "again",
    "further",
    "however",
    "well",
    "almost",
    "nearly",
    "approximately",
    "respectively",
    "currently",
    "now",
    "then",
    "even",
    "too",
    "quite",
    "rather",
    "much",
    "substantially",
    "markedly",
    "somewhat",
    "clearly",
];
const NOUN_WORDS: &[&str] = &[
    "profit",
    "profits",
    "sales",
    "revenue",
    "revenues",
    "loss",
    "losses",
    "company",
    "group",
    "quarter",
    "year",
    "period",
    "operations",
    "operation",
    "number",
    "errors",
    "error",
    "eur",
    "usd",
    "mn",
    "bn",
    "million",
    "billion",
    "share",
    "shares",
    "market",
    "order",
    "orders",
    "costs",
    "cost",
    "price",
    "prices",
    "demand",
    "result",
    "results",
    "margin",
    "margins",
    "debt",
    "earnings",
    "eps",
    "ebit",
    "ebitda",
    "turnover",
    "dividend",
    "production",
    "unit",
    "business",
    "contract",
    "deal",
    "agreement",
    "customer",
    "customers",
    "employees",
    "staff",
    "plant",
    "factory",
    "capacity",
    "growth",
    "decline",
    "increase",
    "decrease",
    "rise",
    "fall",
];
const ADV_LY_EXCEPTIONS: &[&str] = &[
    "july",
    "italy",
    "supply",
    "family",
    "assembly",
    "rally",
    "monopoly",
    "reply",
    "ally",
    "anomaly",
    "early",
    "daily",
    "quarterly",
    "monthly",
    "yearly",
    "likely",
    "only",
];
const NUMBER_WORDS: &[&str] = &[
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "eleven", "twelve", "twenty",
    "thirty", "forty", "fifty", "hundred", "thousand", "dozen",
];

impl HeuristicTagger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds lexicon-backed hints: unigram entries with a POS pattern use that
    /// tag, direction unigrams are verbs and financial-entity unigrams nouns.
    pub fn with_lexicon(lex: &Lexicon) -> Self {
        let mut hints = HashMap::new();
        for e in lex.entries() {
            if e.anchor.len() != 1 {
                continue;
            }
            let hint = match (&e.pos_pattern, e.class) {
                (Some(p), _) => p[0],
                (None, c) if c.is_direction() => Pos::Verb,
                (None, c) if c.is_financial() => Pos::Noun,
                (None, EntityClass::InfluencerReversal) => Pos::Part,
                _ => continue,
            };
            hints.entry(e.anchor[0].clone()).or_insert(hint);
        }
        HeuristicTagger { hints }
    }

    pub fn tag_word(&self, lower: &str) -> Pos {
        let first = match lower.chars().next() {
            Some(c) => c,
            None => return Pos::Other,
        };
        if first.is_ascii_digit() {
            return Pos::Num;
        }
        if OTHER_WORDS.contains(&lower) {
            return Pos::Other;
        }
        if PART_WORDS.contains(&lower) {
            return Pos::Part;
        }
        if NUMBER_WORDS.contains(&lower) {
            return Pos::Num;
        }
        if let Some(&p) = self.hints.get(lower) {
            return p;
        }
        if VERB_WORDS.contains(&lower) {
            return Pos::Verb;
        }
        if ADJ_WORDS.contains(&lower) {
            return Pos::Adj;
        }
        if ADV_WORDS.contains(&lower) {
            return Pos::Adv;
        }
        if NOUN_WORDS.contains(&lower) {
            return Pos::Noun;
        }
        if !lower.chars().any(char::is_alphabetic) {
            return Pos::Other;
        }
        let n = lower.chars().count();
        if n > 4 && lower.ends_with("ly") && !ADV_LY_EXCEPTIONS.contains(&lower) {
            return Pos::Adv;
        }
        if n > 4 && (lower.ends_with("ed") || lower.ends_with("ing")) {
            return Pos::Verb;
        }
        const ADJ_SUFFIXES: &[&str] = &["ous", "ful", "ive", "able", "ible", "ical", "less"];
        if n > 5 && ADJ_SUFFIXES.iter().any(|s| lower.ends_with(s)) {
            return Pos::Adj;
        }
        Pos::Noun
    }
}

impl Tagger for HeuristicTagger {
    fn tag(&self, tokens: &mut [Token]) {
        for t in tokens {
            t.pos = Some(self.tag_word(&t.lower));
        }
    }
}

/// A tokenized, tagged sentence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sentence {
    pub id: Option<String>,
    pub text: String,
    pub tokens: Vec<Token>,
}

impl Sentence {
    pub fn from_text(id: Option<String>, text: &str, tagger: &dyn Tagger) -> Self {
        let mut tokens = tokenize(text);
        tagger.tag(&mut tokens);
        Sentence {
            id,
            text: text.to_string(),
            tokens,
        }
    }

    /// Builds a sentence from pre-tagged `(surface, tag)` pairs; the text is
    /// the surfaces joined by single spaces.
    pub fn from_tagged<S: AsRef<str>>(id: Option<String>, tagged: &[(S, Pos)]) -> Self {
        let mut text = String::new();
        let mut tokens = Vec::with_capacity(tagged.len());
        for (i, (surface, pos)) in tagged.iter().enumerate() {
            if i > 0 {
                text.push(' ');
            }
            let start = text.len();
            text.push_str(surface.as_ref());
            let mut tok = Token::new(&text, start, text.len());
            tok.pos = Some(*pos);
            tokens.push(tok);
        }
        Sentence { id, text, tokens }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TaggedFormatError {
    #[error("line {line}: expected \"surface<TAB>POS\", found {fields} field(s)")]
    Fields { line: usize, fields: usize },
    #[error("line {line}: unknown POS tag {tag:?}")]
    BadTag { line: usize, tag: String },
    #[error("line {line}: empty token surface")]
    EmptySurface { line: usize },
    #[error("line {line}: input is not valid UTF-8")]
    Encoding { line: usize },
}

/// Reads the CoNLL-like pre-tagged format: one `surface<TAB>POS` per line,
/// blank lines between sentences, optional `# id = <id>` before a sentence.
pub fn load_tagged<R: BufRead>(reader: R) -> Result<Vec<Sentence>, TaggedFormatError> {
    let mut sentences = Vec::new();
    let mut id: Option<String> = None;
    let mut current: Vec<(String, Pos)> = Vec::new();
    for (i, line) in reader.split(b'\n').enumerate() {
        let lineno = i + 1;
        let raw = line.map_err(|_| TaggedFormatError::Encoding { line: lineno })?;
        let line = String::from_utf8(raw).map_err(|_| TaggedFormatError::Encoding { line: lineno })?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.is_empty() {
            if !current.is_empty() || id.is_some() {
                sentences.push(Sentence::from_tagged(id.take(), &current));
                current.clear();
            }
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("id = ") {
                id = Some(v.to_string());
            }
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 {
            return Err(TaggedFormatError::Fields {
                line: lineno,
                fields: fields.len(),
            });
        }
        if fields[0].is_empty() {
            return Err(TaggedFormatError::EmptySurface { line: lineno });
        }
        let pos = fields[1].parse::<Pos>().map_err(|_| TaggedFormatError::BadTag {
            line: lineno,
            tag: fields[1].to_string(),
        })?;
        current.push((fields[0].to_string(), pos));
    }
    if !current.is_empty() || id.is_some() {
        sentences.push(Sentence::from_tagged(id, &current));
    }
    Ok(sentences)
}

/// Writes sentences in the pre-tagged format, each followed by a blank line.
pub fn write_tagged(sentences: &[Sentence]) -> String {
    let mut out = String::new();
    for s in sentences {
        if let Some(id) = &s.id {
            out.push_str("# id = ");
            out.push_str(id);
            out.push('\n');
        }
        for t in &s.tokens {
            out.push_str(&t.surface);
            out.push('\t');
            out.push_str(t.pos_or_other().as_str());
            out.push('\n');
        }
        out.push('\n');
    }
    out
}
