//! Cue and emotion lexicons, plus corpus-ratio filtering for mined cues.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::emotion::Emotion;
use crate::{Error, Result};

/// Kinds of scope-bearing modifiers. Declaration order is resolution
/// priority: negation beats amplifier beats downtoner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModifierKind {
    Negation,
    Amplifier,
    Downtoner,
}

pub const MODIFIER_KIND_COUNT: usize = 3;

impl ModifierKind {
    pub const ALL: [ModifierKind; MODIFIER_KIND_COUNT] =
        [ModifierKind::Negation, ModifierKind::Amplifier, ModifierKind::Downtoner];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            ModifierKind::Negation => "negation",
            ModifierKind::Amplifier => "amplifier",
            ModifierKind::Downtoner => "downtoner",
        }
    }

    /// Short form used in feature names and scope files.
    pub fn prefix(self) -> &'static str {
        match self {
            ModifierKind::Negation => "neg",
            ModifierKind::Amplifier => "amp",
            ModifierKind::Downtoner => "down",
        }
    }

    pub fn parse(name: &str) -> Option<ModifierKind> {
        ModifierKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == name || k.prefix() == name)
    }
}

impl fmt::Display for ModifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Cue terms with their modifier kind. A term appears at most once; on
/// conflicting inserts the higher-priority kind wins.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CueLexicon {
    terms: BTreeMap<String, ModifierKind>,
}

impl CueLexicon {
    pub fn new() -> CueLexicon {
        CueLexicon::default()
    }

    pub fn from_entries<I, S>(entries: I) -> CueLexicon
    where
        I: IntoIterator<Item = (S, ModifierKind)>,
        S: Into<String>,
    {
        let mut lex = CueLexicon::new();
        for (term, kind) in entries {
            lex.insert(term.into(), kind);
        }
        lex
    }

    pub fn insert(&mut self, term: String, kind: ModifierKind) {
        let slot = self.terms.entry(term).or_insert(kind);
        *slot = kind.min(*slot);
    }

    pub fn kind_of(&self, term: &str) -> Option<ModifierKind> {
        self.terms.get(term).copied()
    }

    pub fn contains(&self, term: &str) -> bool {
        self.terms.contains_key(term)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn count_of(&self, kind: ModifierKind) -> usize {
        self.terms.values().filter(|k| **k == kind).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, ModifierKind)> {
        self.terms.iter().map(|(t, k)| (t.as_str(), *k))
    }
}

/// Emotion-word lexicon; a word can carry several emotions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmotionLexicon {
    terms: BTreeMap<String, BTreeSet<Emotion>>,
}

impl EmotionLexicon {
    pub fn new() -> EmotionLexicon {
        EmotionLexicon::default()
    }

    pub fn insert(&mut self, term: &str, emotion: Emotion) {
        self.terms.entry(term.to_string()).or_default().insert(emotion);
    }

    pub fn emotions_of(&self, term: &str) -> Option<&BTreeSet<Emotion>> {
        self.terms.get(term)
    }

    pub fn contains(&self, term: &str) -> bool {
        self.terms.contains_key(term)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BTreeSet<Emotion>)> {
        self.terms.iter().map(|(t, e)| (t.as_str(), e))
    }
}

/// Annotated occurrences of one candidate term: `(context, used as
/// modifier)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageSample {
    pub term: String,
    pub occurrences: Vec<(String, bool)>,
}

impl UsageSample {
    /// Fraction of occurrences where the term acts as a modifier.
    pub fn modifier_ratio(&self) -> Result<f64> {
        if self.occurrences.is_empty() {
            return Err(Error::EmptyUsageSample { term: self.term.clone() });
        }
        let hits = self.occurrences.iter().filter(|(_, m)| *m).count();
        Ok(hits as f64 / self.occurrences.len() as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CueCandidate {
    pub term: String,
    pub kind: ModifierKind,
    /// Trusted candidates skip the usage-ratio test.
    pub trusted: bool,
}

/// Keeps the candidates whose modifier ratio is strictly above
/// `threshold`; trusted candidates pass unconditionally. Untrusted
/// candidates without a sample are an error.
pub fn filter_cues(
    candidates: &[CueCandidate],
    samples: &BTreeMap<String, UsageSample>,
    threshold: f64,
) -> Result<CueLexicon> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::InvalidHyper(alloc::format!(
            "cue ratio threshold {threshold} outside [0, 1]"
        )));
    }
    let mut lex = CueLexicon::new();
    for candidate in candidates {
        let accept = if candidate.trusted {
            true
        } else {
            let sample = samples
                .get(&candidate.term)
                .ok_or_else(|| Error::MissingUsageSample { term: candidate.term.clone() })?;
            sample.modifier_ratio()? > threshold
        };
        if accept {
            lex.insert(candidate.term.clone(), candidate.kind);
        }
    }
    Ok(lex)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(term: &str, flags: &[bool]) -> (String, UsageSample) {
        let occurrences = flags.iter().map(|&m| (String::from("ctx"), m)).collect();
        (term.to_string(), UsageSample { term: term.to_string(), occurrences })
    }

    fn candidate(term: &str, kind: ModifierKind) -> CueCandidate {
        CueCandidate { term: term.to_string(), kind, trusted: false }
    }

    #[test]
    fn ratio_is_modifier_share() {
        let (_, s) = sample("so", &[true, true, false, true]);
        assert_eq!(s.modifier_ratio().unwrap(), 0.75);
        let (_, empty) = sample("so", &[]);
        assert!(matches!(empty.modifier_ratio(), Err(Error::EmptyUsageSample { .. })));
    }

    #[test]
    fn filtering_is_strictly_above_threshold() {
        let samples: BTreeMap<_, _> = [
            sample("so", &[true, true, false]),      // 2/3
            sample("like", &[true, false]),          // exactly 1/2
            sample("too", &[false, false, true]),    // 1/3
        ]
        .into_iter()
        .collect();
        let candidates = [
            candidate("so", ModifierKind::Amplifier),
            candidate("like", ModifierKind::Amplifier),
            candidate("too", ModifierKind::Amplifier),
        ];
        let lex = filter_cues(&candidates, &samples, 0.5).unwrap();
        assert!(lex.contains("so"));
        assert!(!lex.contains("like"), "ratio equal to the threshold is rejected");
        assert!(!lex.contains("too"));
    }

    #[test]
    fn trusted_candidates_skip_the_sample() {
        let candidates = [CueCandidate {
            term: "not".to_string(),
            kind: ModifierKind::Negation,
            trusted: true,
        }];
        let lex = filter_cues(&candidates, &BTreeMap::new(), 0.5).unwrap();
        assert_eq!(lex.kind_of("not"), Some(ModifierKind::Negation));
    }

    #[test]
    fn untrusted_candidates_need_a_sample() {
        let candidates = [candidate("kinda", ModifierKind::Downtoner)];
        assert!(matches!(
            filter_cues(&candidates, &BTreeMap::new(), 0.5),
            Err(Error::MissingUsageSample { .. })
        ));
    }

    #[test]
    fn threshold_outside_unit_interval_is_rejected() {
        assert!(matches!(
            filter_cues(&[], &BTreeMap::new(), 1.1),
            Err(Error::InvalidHyper(_))
        ));
    }

    #[test]
    fn conflicting_kinds_resolve_by_priority() {
        let mut lex = CueLexicon::new();
        lex.insert("hardly".to_string(), ModifierKind::Downtoner);
        lex.insert("hardly".to_string(), ModifierKind::Negation);
        assert_eq!(lex.kind_of("hardly"), Some(ModifierKind::Negation));
        // And priority sticks even when the weaker kind comes later.
        lex.insert("hardly".to_string(), ModifierKind::Amplifier);
        assert_eq!(lex.kind_of("hardly"), Some(ModifierKind::Negation));
        assert_eq!(lex.len(), 1);
    }

    #[test]
    fn emotion_lexicon_accumulates_emotions_per_term() {
        let mut lex = EmotionLexicon::new();
        lex.insert("hate", Emotion::Anger);
        lex.insert("hate", Emotion::Disgust);
        let emotions = lex.emotions_of("hate").unwrap();
        assert_eq!(emotions.len(), 2);
        assert!(emotions.contains(&Emotion::Anger));
        assert!(!lex.contains("love"));
    }
}
