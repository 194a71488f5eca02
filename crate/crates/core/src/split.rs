//! Seeded train/test splitting with a balanced training subset.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::document::Document;
use crate::emotion::{Emotion, EMOTION_COUNT};
use crate::lexicon::{CueLexicon, EmotionLexicon};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitRatios {
    pub train: f64,
    pub test: f64,
}

impl SplitRatios {
    fn validate(&self) -> Result<()> {
        for (name, v) in [("train", self.train), ("test", self.test)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidRatios(format!("{name} fraction {v} outside (0, 1)")));
            }
        }
        if ((self.train + self.test) - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidRatios(format!(
                "fractions sum to {}, expected 1",
                self.train + self.test
            )));
        }
        Ok(())
    }
}

/// Index-based split result; all indices point into the input slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSplit {
    pub seed: u64,
    pub train: Vec<usize>,
    pub test: Vec<usize>,
    /// Subset of `train`: the same number of documents per emotion,
    /// each with at least one emotion-lexicon token and one cue token.
    pub balanced: Vec<usize>,
}

fn qualifies(doc: &Document, emotions: &EmotionLexicon, cues: &CueLexicon) -> bool {
    doc.tokens.iter().any(|t| emotions.contains(&t.normalized))
        && doc.tokens.iter().any(|t| cues.contains(&t.normalized))
}

/// Shuffles the corpus with the seed, cuts it by the ratios (train size
/// rounds to nearest), and draws the balanced subset from the training
/// side in shuffle order. Every document must be labeled; classes that
/// cannot fill the balanced quota are an error.
pub fn split_corpus(
    docs: &[Document],
    seed: u64,
    ratios: SplitRatios,
    balanced_per_class: usize,
    emotions: &EmotionLexicon,
    cues: &CueLexicon,
) -> Result<CorpusSplit> {
    ratios.validate()?;
    for doc in docs {
        if doc.label.is_none() {
            return Err(Error::UnlabeledDocument { id: doc.id.clone() });
        }
    }
    let mut order: Vec<usize> = (0..docs.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);

    let n_train = (docs.len() as f64 * ratios.train + 0.5) as usize;
    let (train, test) = order.split_at(n_train.min(docs.len()));

    let mut balanced = Vec::with_capacity(balanced_per_class * EMOTION_COUNT);
    let mut found = [0usize; EMOTION_COUNT];
    for &idx in train {
        let doc = &docs[idx];
        let class = doc.label.unwrap().index();
        if found[class] < balanced_per_class && qualifies(doc, emotions, cues) {
            found[class] += 1;
            balanced.push(idx);
        }
    }
    let short: Vec<String> = Emotion::ALL
        .into_iter()
        .filter(|e| found[e.index()] < balanced_per_class)
        .map(|e| format!("{} ({} of {balanced_per_class})", e.name(), found[e.index()]))
        .collect();
    if !short.is_empty() {
        return Err(Error::InsufficientClassDocs(short.join(", ")));
    }
    Ok(CorpusSplit { seed, train: train.to_vec(), test: test.to_vec(), balanced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::ModifierKind;

    fn lexicons() -> (EmotionLexicon, CueLexicon) {
        let mut emotions = EmotionLexicon::new();
        emotions.insert("happy", Emotion::Joy);
        emotions.insert("angry", Emotion::Anger);
        emotions.insert("afraid", Emotion::Fear);
        emotions.insert("sad", Emotion::Sadness);
        emotions.insert("wow", Emotion::Surprise);
        emotions.insert("gross", Emotion::Disgust);
        let cues = CueLexicon::from_entries([("not", ModifierKind::Negation)]);
        (emotions, cues)
    }

    fn corpus(per_class: usize) -> Vec<Document> {
        let words = ["happy", "angry", "afraid", "sad", "wow", "gross"];
        let mut docs = Vec::new();
        for (e, word) in Emotion::ALL.into_iter().zip(words) {
            for i in 0..per_class {
                let text = format!("i am not {word}");
                docs.push(Document::from_raw_text(&format!("{}-{i}", e.name()), &text, Some(e)));
            }
        }
        docs
    }

    #[test]
    fn split_is_a_seeded_partition() {
        let (emotions, cues) = lexicons();
        let docs = corpus(10);
        let ratios = SplitRatios { train: 0.8, test: 0.2 };
        let split = split_corpus(&docs, 42, ratios, 2, &emotions, &cues).unwrap();
        assert_eq!(split.train.len(), 48);
        assert_eq!(split.test.len(), 12);
        let mut all: Vec<usize> = split.train.iter().chain(&split.test).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..60).collect::<Vec<_>>());

        let again = split_corpus(&docs, 42, ratios, 2, &emotions, &cues).unwrap();
        assert_eq!(split, again);
        let other = split_corpus(&docs, 43, ratios, 2, &emotions, &cues).unwrap();
        assert_ne!(split.train, other.train);
    }

    #[test]
    fn balanced_subset_has_exact_class_quotas_from_train_only() {
        let (emotions, cues) = lexicons();
        let docs = corpus(10);
        let split =
            split_corpus(&docs, 7, SplitRatios { train: 0.8, test: 0.2 }, 3, &emotions, &cues)
                .unwrap();
        assert_eq!(split.balanced.len(), 18);
        for &idx in &split.balanced {
            assert!(split.train.contains(&idx));
        }
        let mut per_class = [0; EMOTION_COUNT];
        for &idx in &split.balanced {
            per_class[docs[idx].label.unwrap().index()] += 1;
        }
        assert_eq!(per_class, [3; EMOTION_COUNT]);
    }

    #[test]
    fn documents_without_cue_or_emotion_word_do_not_qualify() {
        let (emotions, cues) = lexicons();
        let mut docs = corpus(2);
        // One extra joy document lacking a cue: must never enter the
        // balanced subset.
        docs.push(Document::from_raw_text("bare", "very happy", Some(Emotion::Joy)));
        let split =
            split_corpus(&docs, 1, SplitRatios { train: 0.9, test: 0.1 }, 1, &emotions, &cues);
        if let Ok(split) = split {
            assert!(!split.balanced.iter().any(|&i| docs[i].id == "bare"));
        }
    }

    #[test]
    fn shortfall_names_the_classes() {
        let (emotions, cues) = lexicons();
        let docs = corpus(1);
        let err =
            split_corpus(&docs, 5, SplitRatios { train: 0.5, test: 0.5 }, 2, &emotions, &cues)
                .unwrap_err();
        match err {
            Error::InsufficientClassDocs(msg) => {
                assert!(msg.contains("of 2"), "{msg}");
            }
            other => panic!("wrong error {other:?}"),
        }
    }

    #[test]
    fn bad_ratios_and_unlabeled_documents_error() {
        let (emotions, cues) = lexicons();
        let docs = corpus(2);
        for ratios in [
            SplitRatios { train: 0.0, test: 1.0 },
            SplitRatios { train: 0.8, test: 0.1 },
            SplitRatios { train: 1.2, test: -0.2 },
        ] {
            assert!(matches!(
                split_corpus(&docs, 1, ratios, 1, &emotions, &cues),
                Err(Error::InvalidRatios(_))
            ));
        }
        let mut docs = corpus(2);
        docs[0].label = None;
        assert!(matches!(
            split_corpus(&docs, 1, SplitRatios { train: 0.5, test: 0.5 }, 1, &emotions, &cues),
            Err(Error::UnlabeledDocument { .. })
        ));
    }
}
