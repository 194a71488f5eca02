//! Per-token features describing a token's relation to modifier cues,
//! used by the scope classifier.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::document::Document;
use crate::lexicon::{CueLexicon, ModifierKind};
use crate::{Error, Result};

/// Features of one token with respect to the cues of one modifier kind.
/// All distances use 0 for "no cue there".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScopeFeatures {
    pub word: String,
    pub pos: String,
    /// Token distance to the nearest cue to the right, same sentence.
    pub right_dist: usize,
    /// Token distance to the nearest cue to the left, same sentence.
    pub left_dist: usize,
    /// Tree distance to the nearest cue below this token.
    pub dep_dist: usize,
    /// POS of the first-order head and the tree distance from that head
    /// down to the nearest cue in its subtree.
    pub dep1_pos: Option<String>,
    pub dep1_dist: usize,
    /// Same for the second-order head.
    pub dep2_pos: Option<String>,
    pub dep2_dist: usize,
}

fn cue_positions(
    doc: &Document,
    span: (usize, usize),
    cues: &CueLexicon,
    kind: ModifierKind,
) -> Vec<usize> {
    (span.0..span.1)
        .filter(|&p| cues.kind_of(&doc.tokens[p].normalized) == Some(kind))
        .collect()
}

/// Minimum number of edges from `anchor` down to a cue strictly below
/// it; 0 when its subtree holds none.
fn subtree_cue_depth(doc: &Document, anchor: usize, cue_set: &[usize]) -> usize {
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    queue.push_back((anchor, 0));
    while let Some((node, depth)) = queue.pop_front() {
        if depth > 0 && cue_set.contains(&node) {
            return depth;
        }
        for child in doc.child_positions(node) {
            queue.push_back((child, depth + 1));
        }
    }
    0
}

/// Extracts scope features for the token at flat position `pos`.
/// Needs dependency information; cue tokens of the same kind get their
/// distances against the remaining cues.
pub fn extract_scope_features(
    doc: &Document,
    pos: usize,
    cues: &CueLexicon,
    kind: ModifierKind,
) -> Result<ScopeFeatures> {
    if pos >= doc.len() {
        return Err(Error::ScopePosition { position: pos, len: doc.len() });
    }
    if !doc.has_dependencies() {
        return Err(Error::MissingDependencies { id: doc.id.clone() });
    }
    let span = doc.sentence_span_of(pos);
    let cue_set: Vec<usize> =
        cue_positions(doc, span, cues, kind).into_iter().filter(|&c| c != pos).collect();

    let left_dist = cue_set.iter().filter(|&&c| c < pos).map(|&c| pos - c).min().unwrap_or(0);
    let right_dist = cue_set.iter().filter(|&&c| c > pos).map(|&c| c - pos).min().unwrap_or(0);
    let dep_dist = subtree_cue_depth(doc, pos, &cue_set);

    let head1 = doc.head_position(pos);
    let (dep1_pos, dep1_dist) = match head1 {
        Some(h) => (Some(doc.tokens[h].pos.clone()), subtree_cue_depth(doc, h, &cue_set)),
        None => (None, 0),
    };
    let head2 = head1.and_then(|h| doc.head_position(h));
    let (dep2_pos, dep2_dist) = match head2 {
        Some(h) => (Some(doc.tokens[h].pos.clone()), subtree_cue_depth(doc, h, &cue_set)),
        None => (None, 0),
    };

    Ok(ScopeFeatures {
        word: doc.tokens[pos].normalized.clone(),
        pos: doc.tokens[pos].pos.clone(),
        right_dist,
        left_dist,
        dep_dist,
        dep1_pos,
        dep1_dist,
        dep2_pos,
        dep2_dist,
    })
}

/// Distances above 4 share one bucket.
pub fn distance_bucket(d: usize) -> &'static str {
    match d {
        0 => "0",
        1 => "1",
        2 => "2",
        3 => "3",
        4 => "4",
        _ => "5+",
    }
}

fn pos_value(pos: &str) -> &str {
    if pos.is_empty() {
        "<none>"
    } else {
        pos
    }
}

impl ScopeFeatures {
    /// One-hot feature names; distances are bucketed.
    pub fn encode(&self) -> Vec<String> {
        let opt = |p: &Option<String>| match p {
            Some(tag) => pos_value(tag).to_string(),
            None => "<none>".to_string(),
        };
        alloc::vec![
            format!("word={}", self.word),
            format!("pos={}", pos_value(&self.pos)),
            format!("right={}", distance_bucket(self.right_dist)),
            format!("left={}", distance_bucket(self.left_dist)),
            format!("dep={}", distance_bucket(self.dep_dist)),
            format!("dep1_pos={}", opt(&self.dep1_pos)),
            format!("dep1_dist={}", distance_bucket(self.dep1_dist)),
            format!("dep2_pos={}", opt(&self.dep2_pos)),
            format!("dep2_dist={}", distance_bucket(self.dep2_dist)),
        ]
    }

    /// Unit counts over the encoded names.
    pub fn counts(&self) -> BTreeMap<String, f64> {
        self.encode().into_iter().map(|name| (name, 1.0)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::testutil::parsed_doc;
    use crate::lexicon::CueLexicon;

    /// "i do not love and hate": `love` is the root, `not` modifies it,
    /// `hate` is conjoined to `love`.
    pub(crate) fn conjunction_doc() -> Document {
        parsed_doc(
            "f1",
            &[&[
                ("i", "PRP", 4, "nsubj"),
                ("do", "VBP", 4, "aux"),
                ("not", "RB", 4, "advmod"),
                ("love", "VB", 0, "root"),
                ("and", "CC", 6, "cc"),
                ("hate", "VB", 4, "conj"),
            ]],
        )
    }

    fn negations() -> CueLexicon {
        CueLexicon::from_entries([("not", ModifierKind::Negation)])
    }

    #[test]
    fn features_of_a_conjoined_verb() {
        let doc = conjunction_doc();
        let f = extract_scope_features(&doc, 5, &negations(), ModifierKind::Negation).unwrap();
        assert_eq!(f.word, "hate");
        assert_eq!(f.pos, "VB");
        assert_eq!(f.right_dist, 0, "no cue to the right");
        assert_eq!(f.left_dist, 3);
        assert_eq!(f.dep_dist, 0, "hate is a leaf");
        assert_eq!(f.dep1_pos.as_deref(), Some("VB"));
        assert_eq!(f.dep1_dist, 1, "the cue hangs directly under love");
        assert_eq!(f.dep2_pos, None);
        assert_eq!(f.dep2_dist, 0);
    }

    #[test]
    fn features_of_the_root() {
        let doc = conjunction_doc();
        let f = extract_scope_features(&doc, 3, &negations(), ModifierKind::Negation).unwrap();
        assert_eq!(f.word, "love");
        assert_eq!(f.left_dist, 1);
        assert_eq!(f.right_dist, 0);
        assert_eq!(f.dep_dist, 1);
        assert_eq!(f.dep1_pos, None);
        assert_eq!(f.dep2_pos, None);
    }

    #[test]
    fn cue_tokens_measure_against_other_cues() {
        let doc = parsed_doc(
            "f2",
            &[&[
                ("not", "RB", 2, "advmod"),
                ("happy", "JJ", 0, "root"),
                ("not", "RB", 2, "advmod"),
            ]],
        );
        let f = extract_scope_features(&doc, 0, &negations(), ModifierKind::Negation).unwrap();
        assert_eq!(f.left_dist, 0);
        assert_eq!(f.right_dist, 2, "distance to the other cue, not itself");
        // From `happy`, both cues are direct children.
        let f = extract_scope_features(&doc, 1, &negations(), ModifierKind::Negation).unwrap();
        assert_eq!((f.left_dist, f.right_dist, f.dep_dist), (1, 1, 1));
    }

    #[test]
    fn other_kinds_see_their_own_cues_only() {
        let doc = conjunction_doc();
        let f = extract_scope_features(&doc, 5, &negations(), ModifierKind::Amplifier).unwrap();
        assert_eq!((f.left_dist, f.right_dist, f.dep_dist, f.dep1_dist), (0, 0, 0, 0));
    }

    #[test]
    fn missing_dependencies_are_an_error() {
        let doc = Document::from_raw_text("r", "not happy", None);
        assert!(matches!(
            extract_scope_features(&doc, 1, &negations(), ModifierKind::Negation),
            Err(Error::MissingDependencies { .. })
        ));
    }

    #[test]
    fn encoding_buckets_distances() {
        let doc = conjunction_doc();
        let f = extract_scope_features(&doc, 5, &negations(), ModifierKind::Negation).unwrap();
        let names = f.encode();
        assert!(names.contains(&"word=hate".to_string()));
        assert!(names.contains(&"right=0".to_string()));
        assert!(names.contains(&"left=3".to_string()));
        assert!(names.contains(&"dep2_pos=<none>".to_string()));
        assert_eq!(names.len(), 9);
        assert_eq!(distance_bucket(4), "4");
        assert_eq!(distance_bucket(5), "5+");
        assert_eq!(distance_bucket(12), "5+");
    }
}
