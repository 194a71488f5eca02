//! Property tests for the core invariants.


use proptest::prelude::*;

use emoscope_core::document::{Document, Token};
use emoscope_core::emotion::Emotion;
use emoscope_core::eval::{confusion, report, round_1dp};
use emoscope_core::lexical::{count_vectors, CountVectors, WeightTensor};
use emoscope_core::lexicon::{CueLexicon, EmotionLexicon, ModifierKind};
use emoscope_core::linear::bow_counts;
use emoscope_core::scope::{
    dep_tree_scope, is_adversative, is_scope_punctuation, next_n_scope, ScopeLabel,
};
use emoscope_core::split::{split_corpus, SplitRatios};
use emoscope_core::text::normalize_text;

fn small_cues() -> CueLexicon {
    CueLexicon::from_entries([
        ("not", ModifierKind::Negation),
        ("never", ModifierKind::Negation),
        ("very", ModifierKind::Amplifier),
        ("so", ModifierKind::Amplifier),
        ("slightly", ModifierKind::Downtoner),
    ])
}

fn word_pool() -> Vec<&'static str> {
    vec![
        "not", "never", "very", "so", "slightly", "happy", "sad", "dog", "!", ",", "but",
        "though", "good", "bad", "day",
    ]
}

prop_compose! {
    fn raw_doc()(words in prop::collection::vec(0..15usize, 1..20)) -> Document {
        let pool = word_pool();
        let text: Vec<&str> = words.iter().map(|&w| pool[w]).collect();
        Document::from_raw_text("p", &text.join(" "), None)
    }
}

proptest! {
    #[test]
    fn normalization_is_idempotent(raw in "\\PC{0,60}") {
        let once = normalize_text(&raw);
        prop_assert_eq!(normalize_text(&once), once);
    }

    #[test]
    fn window_labels_lie_in_a_clean_window(doc in raw_doc(), n in 1usize..6) {
        let cues = small_cues();
        let scope = next_n_scope(&doc, &cues, n).unwrap();
        for (pos, kind) in scope.iter_labeled() {
            // Never labeled with its own cue kind.
            prop_assert_ne!(cues.kind_of(&doc.tokens[pos].normalized), Some(kind));
            // Some cue of this kind sits at most n tokens to the left,
            // with no stop token strictly between them.
            let witness = (pos.saturating_sub(n)..pos).any(|c| {
                cues.kind_of(&doc.tokens[c].normalized) == Some(kind)
                    && (c + 1..=pos).all(|q| {
                        let t = &doc.tokens[q].normalized;
                        !is_scope_punctuation(t) && !is_adversative(t)
                    })
            });
            prop_assert!(witness, "label at {} without a justifying cue", pos);
        }
    }

    #[test]
    fn bow_counts_preserve_token_mass(doc in raw_doc(), n in 1usize..4) {
        let scope = next_n_scope(&doc, &small_cues(), n).unwrap();
        let counts = bow_counts(&doc, &scope);
        let mass: f64 = counts.values().sum();
        prop_assert_eq!(mass, doc.len() as f64);
        for (pos, kind) in scope.iter_labeled() {
            let key = format!("{}_{}", kind.prefix(), doc.tokens[pos].normalized);
            prop_assert!(counts.contains_key(&key));
        }
    }

    #[test]
    fn merged_confusions_match_concatenation(
        a in prop::collection::vec((0..6usize, 0..6usize), 1..40),
        b in prop::collection::vec((0..6usize, 0..6usize), 1..40),
    ) {
        let emo = |i: usize| Emotion::from_index(i).unwrap();
        let golds_a: Vec<Emotion> = a.iter().map(|(g, _)| emo(*g)).collect();
        let preds_a: Vec<Emotion> = a.iter().map(|(_, p)| emo(*p)).collect();
        let golds_b: Vec<Emotion> = b.iter().map(|(g, _)| emo(*g)).collect();
        let preds_b: Vec<Emotion> = b.iter().map(|(_, p)| emo(*p)).collect();
        let merged = confusion(&golds_a, &preds_a).unwrap()
            .merge(&confusion(&golds_b, &preds_b).unwrap()).unwrap();
        let golds: Vec<Emotion> = golds_a.iter().chain(&golds_b).copied().collect();
        let preds: Vec<Emotion> = preds_a.iter().chain(&preds_b).copied().collect();
        prop_assert_eq!(&merged, &confusion(&golds, &preds).unwrap());
        // And the report built from either is identical.
        let r1 = report(&golds, &preds, "all").unwrap();
        prop_assert_eq!(
            r1,
            emoscope_core::eval::EvalReport::from_confusion(&merged, "all")
        );
    }

    #[test]
    fn display_rounding_stays_within_half_a_tick(x in -1000.0..1000.0f64) {
        let r = round_1dp(x);
        prop_assert!((r - x).abs() <= 0.05 + 1e-9);
        prop_assert_eq!(round_1dp(-x), -r);
    }

    #[test]
    fn tensor_score_is_linear_in_counts(
        cells in prop::collection::vec(-3.0..3.0f64, 144),
        xa in prop::collection::vec(0.0..4.0f64, 24),
        xb in prop::collection::vec(0.0..4.0f64, 24),
    ) {
        let mut tensor = WeightTensor::zeros();
        let mut a = CountVectors::zeros();
        let mut b = CountVectors::zeros();
        let mut sum = CountVectors::zeros();
        for m in 0..4 {
            for i in 0..6 {
                for j in 0..6 {
                    tensor.slices[m][i][j] = cells[m * 36 + i * 6 + j];
                }
                a.x[m][i] = xa[m * 6 + i].floor();
                b.x[m][i] = xb[m * 6 + i].floor();
                sum.x[m][i] = a.x[m][i] + b.x[m][i];
            }
        }
        let lhs = tensor.score(&sum);
        let sa = tensor.score(&a);
        let sb = tensor.score(&b);
        for j in 0..6 {
            prop_assert!((lhs[j] - (sa[j] + sb[j])).abs() < 1e-9);
        }
    }

    #[test]
    fn splits_partition_any_labeled_corpus(
        sizes in prop::collection::vec(1usize..6, 6),
        seed in 0u64..500,
    ) {
        let mut emotions = EmotionLexicon::new();
        emotions.insert("word", Emotion::Joy);
        let cues = CueLexicon::from_entries([("not", ModifierKind::Negation)]);
        let mut docs = Vec::new();
        for (e, n) in Emotion::ALL.into_iter().zip(&sizes) {
            for i in 0..*n {
                docs.push(Document::from_raw_text(
                    &format!("{e}-{i}"),
                    "not word",
                    Some(e),
                ));
            }
        }
        let split = split_corpus(
            &docs, seed, SplitRatios { train: 0.7, test: 0.3 }, 1, &emotions, &cues,
        );
        prop_assume!(split.is_ok());
        let split = split.unwrap();
        let mut all: Vec<usize> = split.train.iter().chain(&split.test).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..docs.len()).collect::<Vec<_>>());
        prop_assert_eq!(split.train.len(), (docs.len() as f64 * 0.7 + 0.5) as usize);
    }
}

// Random single-sentence trees: token 1 is the root, every other
// token's head is one of the earlier tokens, so the result is acyclic
// with exactly one root.
prop_compose! {
    fn tree_doc()(n in 1usize..13)(
        heads in prop::collection::vec(1usize..20, n.saturating_sub(1).max(1)),
        words in prop::collection::vec(0..15usize, n),
    ) -> Document {
        let pool = word_pool();
        let n = words.len();
        let tokens: Vec<Token> = (0..n).map(|i| Token {
            head: Some(if i == 0 { 0 } else { heads[i - 1] % i + 1 }),
            deprel: if i % 3 == 0 { "conj".into() } else { "dep".into() },
            ..Token::word(i + 1, pool[words[i]])
        }).collect();
        Document::new("t".into(), tokens, vec![(0, n)], None).unwrap()
    }
}

proptest! {
    #[test]
    fn tree_scope_never_labels_own_kind_cues(doc in tree_doc()) {
        let cues = small_cues();
        let scope = dep_tree_scope(&doc, &cues).unwrap();
        for (pos, kind) in scope.iter_labeled() {
            prop_assert_ne!(cues.kind_of(&doc.tokens[pos].normalized), Some(kind));
        }
        // No cues in the document means no labels at all.
        if !doc.tokens.iter().any(|t| cues.contains(&t.normalized)) {
            prop_assert_eq!(scope.labeled_count(), 0);
        }
    }

    #[test]
    fn count_vector_mass_counts_lexicon_multiplicity(doc in raw_doc()) {
        let mut emotions = EmotionLexicon::new();
        emotions.insert("happy", Emotion::Joy);
        emotions.insert("sad", Emotion::Sadness);
        emotions.insert("bad", Emotion::Anger);
        emotions.insert("bad", Emotion::Disgust);
        let scope = ScopeLabel::empty(doc.len());
        let x = count_vectors(&doc, &scope, &emotions);
        let expected: usize = doc.tokens.iter()
            .map(|t| emotions.emotions_of(&t.normalized).map_or(0, |s| s.len()))
            .sum();
        prop_assert_eq!(x.total(), expected as f64);
    }
}
