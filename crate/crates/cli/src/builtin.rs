//! Lexicons shipped with the binary.
//!
//! The cue lists are reconstructions of the usual negation, amplifier,
//! and downtoner inventories; the emotion word list is a small sample in
//! the standard association format, enough for experiments and tests.
//! All four can be overridden per run with explicit paths.

use std::path::Path;

use emoscope_core::lexicon::{CueLexicon, EmotionLexicon, ModifierKind};

use crate::error::{CliError, CliResult};
use crate::formats::lexicons::{parse_emotion_lexicon, parse_terms};

pub const NEGATIONS: &str = include_str!("../data/negations.txt");
pub const AMPLIFIERS: &str = include_str!("../data/amplifiers.txt");
pub const DOWNTONERS: &str = include_str!("../data/downtoners.txt");
pub const EMOTION_WORDS: &str = include_str!("../data/emotion_words.tsv");

fn embedded<T>(result: CliResult<T>, what: &str) -> CliResult<T> {
    // A parse failure here means the shipped data is broken, not the input.
    result.map_err(|e| CliError::Internal(format!("embedded {what} is invalid: {e}")))
}

pub fn builtin_terms(kind: ModifierKind) -> CliResult<Vec<String>> {
    let text = match kind {
        ModifierKind::Negation => NEGATIONS,
        ModifierKind::Amplifier => AMPLIFIERS,
        ModifierKind::Downtoner => DOWNTONERS,
    };
    embedded(
        parse_terms(text, Path::new("<builtin>")),
        kind.name(),
    )
}

pub fn builtin_cues() -> CliResult<CueLexicon> {
    let mut cues = CueLexicon::new();
    for kind in ModifierKind::ALL {
        for term in builtin_terms(kind)? {
            cues.insert(term, kind);
        }
    }
    Ok(cues)
}

pub fn builtin_emotions() -> CliResult<EmotionLexicon> {
    embedded(
        parse_emotion_lexicon(EMOTION_WORDS, Path::new("<builtin>")),
        "emotion lexicon",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use emoscope_core::emotion::Emotion;

    #[test]
    fn shipped_lists_have_the_documented_sizes() {
        assert_eq!(builtin_terms(ModifierKind::Negation).unwrap().len(), 39);
        assert_eq!(builtin_terms(ModifierKind::Amplifier).unwrap().len(), 69);
        assert_eq!(builtin_terms(ModifierKind::Downtoner).unwrap().len(), 36);
    }

    #[test]
    fn merged_lexicon_keeps_every_term() {
        // The three lists are disjoint, so nothing is lost to the
        // cross-kind priority rule.
        let cues = builtin_cues().unwrap();
        assert_eq!(cues.len(), 39 + 69 + 36);
        assert_eq!(cues.kind_of("not"), Some(ModifierKind::Negation));
        assert_eq!(cues.kind_of("very"), Some(ModifierKind::Amplifier));
        assert_eq!(cues.kind_of("slightly"), Some(ModifierKind::Downtoner));
    }

    #[test]
    fn emotion_sample_covers_all_six_classes() {
        let lex = builtin_emotions().unwrap();
        for emotion in Emotion::ALL {
            assert!(
                lex.iter().any(|(_, set)| set.contains(&emotion)),
                "no word for {emotion}"
            );
        }
        let hate = lex.emotions_of("hate").unwrap();
        assert_eq!(hate.len(), 2);
    }
}
