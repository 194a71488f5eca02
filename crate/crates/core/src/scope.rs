//! Modifier scope detection: which tokens a negation, amplifier, or
//! downtoner cue actually modifies.
//!
//! Three detectors share one output shape, [`ScopeLabel`]: a window
//! heuristic over the following tokens, a dependency-tree heuristic,
//! and a trained per-kind token classifier. When detectors disagree on
//! a token, negation beats amplifier beats downtoner, then the nearer
//! cue, then the leftmost cue. A token is never labeled with a kind it
//! is itself a cue of.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use crate::document::Document;
use crate::eval::{prf_from_counts, PrfScores};
use crate::features::extract_scope_features;
use crate::lexicon::{CueLexicon, EmotionLexicon, ModifierKind, MODIFIER_KIND_COUNT};
use crate::linear::{train_binary, LinearModel, TrainConfig};
use crate::sparse::{vectorize, vectorize_frozen, Vocabulary};
use crate::{Error, Result};

/// Per-token modifier labels for one document; at most one kind per
/// token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScopeLabel {
    labels: Vec<Option<ModifierKind>>,
}

impl ScopeLabel {
    pub fn empty(len: usize) -> ScopeLabel {
        ScopeLabel { labels: alloc::vec![None; len] }
    }

    pub fn from_pairs(len: usize, pairs: &[(usize, ModifierKind)]) -> Result<ScopeLabel> {
        let mut scope = ScopeLabel::empty(len);
        for &(pos, kind) in pairs {
            if pos >= len {
                return Err(Error::ScopePosition { position: pos, len });
            }
            scope.set(pos, kind);
        }
        Ok(scope)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Label at `pos`; out-of-range positions are unlabeled.
    pub fn get(&self, pos: usize) -> Option<ModifierKind> {
        self.labels.get(pos).copied().flatten()
    }

    pub fn set(&mut self, pos: usize, kind: ModifierKind) {
        self.labels[pos] = Some(kind);
    }

    pub fn iter_labeled(&self) -> impl Iterator<Item = (usize, ModifierKind)> + '_ {
        self.labels.iter().enumerate().filter_map(|(i, k)| k.map(|k| (i, k)))
    }

    pub fn contains_kind(&self, kind: ModifierKind) -> bool {
        self.labels.contains(&Some(kind))
    }

    pub fn labeled_count(&self) -> usize {
        self.labels.iter().filter(|k| k.is_some()).count()
    }
}

const SCOPE_PUNCTUATION: [char; 9] = ['.', ',', ';', ':', '!', '?', '\u{2014}', '(', ')'];

pub const ADVERSATIVE_CONJUNCTIONS: [&str; 8] =
    ["but", "however", "yet", "although", "though", "nevertheless", "whereas", "still"];

/// Scope-delimiting punctuation: every character is a sentence-internal
/// stop mark.
pub fn is_scope_punctuation(token: &str) -> bool {
    !token.is_empty() && token.chars().all(|c| SCOPE_PUNCTUATION.contains(&c))
}

pub fn is_adversative(token: &str) -> bool {
    ADVERSATIVE_CONJUNCTIONS.contains(&token)
}

/// One detector vote: `cue_pos` claims `pos` with `kind`.
struct Claim {
    pos: usize,
    kind: ModifierKind,
    cue_pos: usize,
}

fn resolve(claims: Vec<Claim>, len: usize) -> ScopeLabel {
    let mut winners: Vec<Option<&Claim>> = alloc::vec![None; len];
    for claim in &claims {
        let key = |c: &Claim| (c.kind, c.pos.abs_diff(c.cue_pos), c.cue_pos);
        let slot = &mut winners[claim.pos];
        if slot.is_none() || key(claim) < key(slot.unwrap()) {
            *slot = Some(claim);
        }
    }
    let mut scope = ScopeLabel::empty(len);
    for (pos, winner) in winners.iter().enumerate() {
        if let Some(claim) = winner {
            scope.set(pos, claim.kind);
        }
    }
    scope
}

/// Window heuristic: a cue modifies the next `n` tokens in its
/// sentence, stopping before punctuation or an adversative conjunction.
pub fn next_n_scope(doc: &Document, cues: &CueLexicon, n: usize) -> Result<ScopeLabel> {
    if n == 0 {
        return Err(Error::InvalidHyper("window size must be at least 1".into()));
    }
    let mut claims = Vec::new();
    for &(start, end) in &doc.sentences {
        for cue_pos in start..end {
            let Some(kind) = cues.kind_of(&doc.tokens[cue_pos].normalized) else {
                continue;
            };
            for pos in cue_pos + 1..end.min(cue_pos + n + 1) {
                let target = &doc.tokens[pos].normalized;
                if is_scope_punctuation(target) || is_adversative(target) {
                    break;
                }
                // A same-kind cue occupies a window slot but takes no label.
                if cues.kind_of(target) == Some(kind) {
                    continue;
                }
                claims.push(Claim { pos, kind, cue_pos });
            }
        }
    }
    Ok(resolve(claims, doc.len()))
}

/// True when the conjunct holding `conjunct_pos` hangs off its
/// coordination with an adversative coordinating conjunction.
fn adversative_conjunct(doc: &Document, conjunct_pos: usize) -> bool {
    doc.child_positions(conjunct_pos)
        .into_iter()
        .any(|c| doc.tokens[c].deprel == "cc" && is_adversative(&doc.tokens[c].normalized))
}

/// Conjunction neighbors of `pos`, skipping edges whose dependent
/// conjunct carries an adversative coordinator.
fn conj_neighbors(doc: &Document, pos: usize) -> Vec<usize> {
    let mut out = Vec::new();
    if doc.tokens[pos].deprel == "conj" && !adversative_conjunct(doc, pos) {
        if let Some(head) = doc.head_position(pos) {
            out.push(head);
        }
    }
    for child in doc.child_positions(pos) {
        if doc.tokens[child].deprel == "conj" && !adversative_conjunct(doc, child) {
            out.push(child);
        }
    }
    out
}

/// Tree heuristic: a cue modifies its parent, and the effect spreads
/// along coordination edges unless the conjunct is adversative.
pub fn dep_tree_scope(doc: &Document, cues: &CueLexicon) -> Result<ScopeLabel> {
    if doc.is_empty() {
        return Ok(ScopeLabel::empty(0));
    }
    if !doc.has_dependencies() {
        return Err(Error::MissingDependencies { id: doc.id.clone() });
    }
    let mut claims = Vec::new();
    for cue_pos in 0..doc.len() {
        let Some(kind) = cues.kind_of(&doc.tokens[cue_pos].normalized) else {
            continue;
        };
        let Some(parent) = doc.head_position(cue_pos) else {
            continue;
        };
        let mut reached: BTreeSet<usize> = BTreeSet::new();
        let mut queue: VecDeque<usize> = VecDeque::new();
        reached.insert(parent);
        queue.push_back(parent);
        while let Some(node) = queue.pop_front() {
            for next in conj_neighbors(doc, node) {
                if reached.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        for pos in reached {
            if cues.kind_of(&doc.tokens[pos].normalized) == Some(kind) {
                continue;
            }
            claims.push(Claim { pos, kind, cue_pos });
        }
    }
    Ok(resolve(claims, doc.len()))
}

/// A trained binary scope decision for one modifier kind.
#[derive(Debug, Clone, PartialEq)]
pub struct ScopeModel {
    pub kind: ModifierKind,
    pub vocab: Vocabulary,
    pub model: LinearModel,
}

impl ScopeModel {
    /// Does the token at `pos` fall inside a scope of this kind?
    pub fn decide(&self, doc: &Document, pos: usize, cues: &CueLexicon) -> Result<bool> {
        let features = extract_scope_features(doc, pos, cues, self.kind)?;
        let x = vectorize_frozen(&features.counts(), &self.vocab);
        Ok(self.model.score(&x) > 0.0)
    }
}

/// Gold or predicted cue/emotion-word pairing used to train and score
/// scope detectors. Positions are flat token indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScopePair {
    pub doc_id: String,
    pub cue_pos: usize,
    pub emo_pos: usize,
    pub kind: ModifierKind,
    pub modifies: bool,
}

/// Trains the binary scope model of one kind from gold pairs. All
/// pairs must be of that kind; their documents must be present and
/// parsed.
pub fn train_scope_model(
    docs: &[Document],
    pairs: &[ScopePair],
    cues: &CueLexicon,
    kind: ModifierKind,
    cfg: &TrainConfig,
) -> Result<ScopeModel> {
    let index = crate::document::index_documents(docs);
    let mut vocab = Vocabulary::new();
    let mut examples = Vec::with_capacity(pairs.len());
    for pair in pairs {
        if pair.kind != kind {
            return Err(Error::SchemaMismatch(alloc::format!(
                "pair of kind {} in {} training data",
                pair.kind,
                kind
            )));
        }
        let doc = index
            .get(pair.doc_id.as_str())
            .ok_or_else(|| Error::UnknownDocument { id: pair.doc_id.clone() })?;
        let features = extract_scope_features(doc, pair.emo_pos, cues, kind)?;
        examples.push((vectorize(&features.counts(), &mut vocab), pair.modifies));
    }
    let model = train_binary(&examples, vocab.len(), cfg)?;
    Ok(ScopeModel { kind, vocab, model })
}

/// The three per-kind models the classifier detector consults.
#[derive(Debug, Clone, PartialEq)]
pub struct ScopeModelSet {
    models: [ScopeModel; MODIFIER_KIND_COUNT],
}

impl ScopeModelSet {
    pub fn new(models: [ScopeModel; MODIFIER_KIND_COUNT]) -> Result<ScopeModelSet> {
        for (slot, model) in ModifierKind::ALL.iter().zip(&models) {
            if model.kind != *slot {
                return Err(Error::MissingScopeModel(*slot));
            }
        }
        Ok(ScopeModelSet { models })
    }

    pub fn from_map(mut map: BTreeMap<ModifierKind, ScopeModel>) -> Result<ScopeModelSet> {
        let take = |map: &mut BTreeMap<ModifierKind, ScopeModel>, kind| {
            map.remove(&kind).ok_or(Error::MissingScopeModel(kind))
        };
        ScopeModelSet::new([
            take(&mut map, ModifierKind::Negation)?,
            take(&mut map, ModifierKind::Amplifier)?,
            take(&mut map, ModifierKind::Downtoner)?,
        ])
    }

    pub fn get(&self, kind: ModifierKind) -> &ScopeModel {
        &self.models[kind.index()]
    }
}

/// Classifier detector: for every emotion-lexicon token in a sentence
/// that contains a cue, ask the per-kind models in priority order and
/// keep the first positive answer.
pub fn classifier_scope(
    doc: &Document,
    cues: &CueLexicon,
    models: &ScopeModelSet,
    emotions: &EmotionLexicon,
) -> Result<ScopeLabel> {
    if doc.is_empty() {
        return Ok(ScopeLabel::empty(0));
    }
    if !doc.has_dependencies() {
        return Err(Error::MissingDependencies { id: doc.id.clone() });
    }
    let mut scope = ScopeLabel::empty(doc.len());
    for &(start, end) in &doc.sentences {
        let any_cue =
            (start..end).any(|p| cues.contains(&doc.tokens[p].normalized));
        if !any_cue {
            continue;
        }
        for pos in start..end {
            let normalized = &doc.tokens[pos].normalized;
            if !emotions.contains(normalized) {
                continue;
            }
            for kind in ModifierKind::ALL {
                if cues.kind_of(normalized) == Some(kind) {
                    continue;
                }
                if models.get(kind).decide(doc, pos, cues)? {
                    scope.set(pos, kind);
                    break;
                }
            }
        }
    }
    Ok(scope)
}

/// Pair-level scope scores, by kind and macro-averaged over the three
/// kinds.
#[derive(Debug, Clone, PartialEq)]
pub struct ScopeEvalReport {
    pub per_kind: [KindScores; MODIFIER_KIND_COUNT],
    pub macro_avg: PrfScores,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KindScores {
    pub kind: ModifierKind,
    pub pairs: u64,
    pub scores: PrfScores,
}

/// Scores predicted scopes against gold pairs: a pair counts as
/// predicted-positive when the emotion token carries exactly the pair's
/// kind. Documents missing from `predicted` count as all-negative.
pub fn evaluate_scope(
    predicted: &BTreeMap<String, ScopeLabel>,
    gold: &[ScopePair],
) -> Result<ScopeEvalReport> {
    if gold.is_empty() {
        return Err(Error::EmptyEvaluation);
    }
    let mut tp = [0u64; MODIFIER_KIND_COUNT];
    let mut fp = [0u64; MODIFIER_KIND_COUNT];
    let mut fn_ = [0u64; MODIFIER_KIND_COUNT];
    let mut pairs = [0u64; MODIFIER_KIND_COUNT];
    for pair in gold {
        let k = pair.kind.index();
        pairs[k] += 1;
        let label = predicted.get(&pair.doc_id).and_then(|s| s.get(pair.emo_pos));
        let positive = label == Some(pair.kind);
        match (pair.modifies, positive) {
            (true, true) => tp[k] += 1,
            (false, true) => fp[k] += 1,
            (true, false) => fn_[k] += 1,
            (false, false) => {}
        }
    }
    let per_kind = [0, 1, 2].map(|k| KindScores {
        kind: ModifierKind::ALL[k],
        pairs: pairs[k],
        scores: prf_from_counts(tp[k], fp[k], fn_[k]),
    });
    let n = MODIFIER_KIND_COUNT as f64;
    let macro_avg = PrfScores {
        precision: per_kind.iter().map(|k| k.scores.precision).sum::<f64>() / n,
        recall: per_kind.iter().map(|k| k.scores.recall).sum::<f64>() / n,
        f1: per_kind.iter().map(|k| k.scores.f1).sum::<f64>() / n,
    };
    Ok(ScopeEvalReport { per_kind, macro_avg })
}

/// Runs the window heuristic at several window sizes against the same
/// gold pairs.
pub fn sweep_next_n(
    docs: &[Document],
    cues: &CueLexicon,
    gold: &[ScopePair],
    ns: &[usize],
) -> Result<Vec<(usize, ScopeEvalReport)>> {
    let mut out = Vec::with_capacity(ns.len());
    for &n in ns {
        let mut predicted = BTreeMap::new();
        for doc in docs {
            predicted.insert(doc.id.clone(), next_n_scope(doc, cues, n)?);
        }
        out.push((n, evaluate_scope(&predicted, gold)?));
    }
    Ok(out)
}
