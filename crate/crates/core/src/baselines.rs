//! Comparison systems: wordcount voting, the general-polarity sequence
//! model, and LPS without pruning.

use std::fmt;
use std::str::FromStr;

use crate::extractor::{detect, fill_neutral, merge_neutrals, EntitySequence};
use crate::ingest::Sentence;
use crate::label::Label;
use crate::lexicon::{EntityClass, Lexicon};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaselineKind {
    /// Wordcount over a general-purpose polarity list.
    WordcountGeneral,
    /// Wordcount over a finance-specific polarity list.
    WordcountFinancial,
    /// SVM over general-polarity entity sequences.
    PolaritySequenceGeneral,
    /// SVM over full-lexicon sequences without pruning.
    RestrictedLPS,
}

impl BaselineKind {
    pub const ALL: [BaselineKind; 4] = [
        BaselineKind::WordcountGeneral,
        BaselineKind::WordcountFinancial,
        BaselineKind::PolaritySequenceGeneral,
        BaselineKind::RestrictedLPS,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BaselineKind::WordcountGeneral => "w-general",
            BaselineKind::WordcountFinancial => "w-financial",
            BaselineKind::PolaritySequenceGeneral => "pseq",
            BaselineKind::RestrictedLPS => "rlps",
        }
    }
}

impl fmt::Display for BaselineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BaselineKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown baseline {s:?}"))
    }
}

/// Positive and negative hit counts `(p, g)` of the general-polarity
/// unigram entries. Each matching token counts once per polarity it
/// matches.
pub fn wordcount_hits(lex: &Lexicon, s: &Sentence) -> (usize, usize) {
    let (mut p, mut g) = (0, 0);
    for tok in &s.tokens {
        let (mut is_pos, mut is_neg) = (false, false);
        for e in lex.candidate_entries(&tok.lower) {
            if e.anchor.len() != 1 {
                continue;
            }
            if let Some(pat) = &e.pos_pattern {
                if pat[0] != tok.pos_or_other() {
                    continue;
                }
            }
            match e.class {
                EntityClass::GeneralPositive => is_pos = true,
                EntityClass::GeneralNegative => is_neg = true,
                _ => {}
            }
        }
        p += usize::from(is_pos);
        g += usize::from(is_neg);
    }
    (p, g)
}

/// The wordcount decision rule on hit counts.
///
/// No hits is neutral; a negative share of at least 2/3 is negative; a
/// positive share of at least 2/3 is positive; anything else is neutral.
pub fn wordcount_rule(p: usize, g: usize) -> Label {
    let n = p + g;
    if n == 0 {
        Label::Neutral
    } else if 3 * g >= 2 * n {
        Label::Negative
    } else if 3 * p >= 2 * n {
        Label::Positive
    } else {
        Label::Neutral
    }
}

pub fn wordcount_vote(lex: &Lexicon, s: &Sentence) -> Label {
    let (p, g) = wordcount_hits(lex, s);
    wordcount_rule(p, g)
}

/// The lexicon restricted to the three general-polarity classes.
pub fn general_only(lex: &Lexicon) -> Lexicon {
    lex.filtered(|e| e.class.is_general())
}

/// Entity sequence over general-polarity entries only, with neutral runs
/// merged and no influencer rules.
///
/// `lex` should already be restricted with [`general_only`]; other entries
/// would otherwise take part in overlap resolution.
pub fn polarity_sequence_extract(lex: &Lexicon, s: &Sentence) -> EntitySequence {
    let mut found = detect(lex, s);
    found.retain(|e| e.kind.class().is_some_and(EntityClass::is_general));
    merge_neutrals(fill_neutral(s, found))
}

/// Full-lexicon detection plus neutral fill, without pruning.
pub fn restricted_lps_extract(lex: &Lexicon, s: &Sentence) -> EntitySequence {
    fill_neutral(s, detect(lex, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{HeuristicTagger, Pos};

    fn lex() -> Lexicon {
        Lexicon::parse_str(
            "good\tgood\t-\tGeneralPositive\n\
             bad\tbad\t-\tGeneralNegative\n\
             mixed\tmixed\t-\tGeneralPositive\n\
             mixed\tmixed\t-\tGeneralNegative\n\
             loss\tloss\t-\tFinNegativeIfUp\n\
             fell\tfell\t-\tDirectionDown\n\
             very good\tvery good\t-\tGeneralPositive\n\
             fine\tfine\tADJ\tGeneralPositive\n",
        )
        .unwrap()
    }

    fn sent(text: &str) -> Sentence {
        Sentence::from_text(None, text, &HeuristicTagger::new())
    }

    #[test]
    fn rule_examples() {
        assert_eq!(wordcount_rule(0, 0), Label::Neutral);
        assert_eq!(wordcount_rule(1, 2), Label::Negative);
        assert_eq!(wordcount_rule(1, 1), Label::Neutral);
        assert_eq!(wordcount_rule(2, 1), Label::Positive);
        assert_eq!(wordcount_rule(0, 1), Label::Negative);
        assert_eq!(wordcount_rule(3, 2), Label::Neutral);
    }

    #[test]
    fn counts_occurrences_and_unigrams_only() {
        let l = lex();
        assert_eq!(wordcount_hits(&l, &sent("good good bad")), (2, 1));
        assert_eq!(wordcount_hits(&l, &sent("very good")), (1, 0));
        assert_eq!(wordcount_hits(&l, &sent("a mixed result")), (1, 1));
        assert_eq!(wordcount_hits(&l, &sent("loss fell")), (0, 0));
    }

    #[test]
    fn pos_pattern_is_respected() {
        let l = lex();
        let adj = Sentence::from_tagged(None, &[("fine", Pos::Adj)]);
        let noun = Sentence::from_tagged(None, &[("fine", Pos::Noun)]);
        assert_eq!(wordcount_hits(&l, &adj), (1, 0));
        assert_eq!(wordcount_hits(&l, &noun), (0, 0));
    }

    #[test]
    fn no_general_entries_is_always_neutral() {
        let l = lex().filtered(|e| !e.class.is_general());
        assert_eq!(wordcount_vote(&l, &sent("good bad good loss fell")), Label::Neutral);
    }

    #[test]
    fn polarity_sequence_hides_financial_classes() {
        let l = general_only(&lex());
        let seq = polarity_sequence_extract(&l, &sent("loss fell sharply"));
        let types: Vec<String> = seq.types().map(|t| t.to_string()).collect();
        assert_eq!(types, ["NeutralFill:Neutral"]);
        let seq = polarity_sequence_extract(&l, &sent("loss was bad"));
        let types: Vec<String> = seq.types().map(|t| t.to_string()).collect();
        assert_eq!(types, ["NeutralFill:Neutral", "GeneralNegative:Negative"]);
    }

    #[test]
    fn restricted_is_never_shorter_than_pruned() {
        let l = lex();
        for text in ["loss fell", "good loss fell bad", "the the the", "not good"] {
            let s = sent(text);
            let full = crate::extractor::Extractor::new(&l).extract(&s);
            assert!(restricted_lps_extract(&l, &s).len() >= full.len(), "{text}");
        }
    }
}
