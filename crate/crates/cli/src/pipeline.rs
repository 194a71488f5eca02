//! Shared plumbing between subcommands: resolving lexicons, running scope
//! detection over a corpus, and featurizing documents for the classifiers.

use std::collections::BTreeMap;

use emoscope_core::document::Document;
use emoscope_core::emotion::Emotion;
use emoscope_core::lexicon::{CueLexicon, EmotionLexicon, ModifierKind};
use emoscope_core::linear::{featurize_bow, featurize_bow_frozen, MulticlassModel};
use emoscope_core::scope::{
    classifier_scope, dep_tree_scope, next_n_scope, ScopeLabel, ScopeModelSet,
};
use emoscope_core::sparse::Vocabulary;

use crate::builtin;
use crate::config::Settings;
use crate::error::{CliError, CliResult};
use crate::formats::lexicons;

/// Default window size for next-n scope detection.
pub const DEFAULT_N: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScopeMethod {
    NextN(usize),
    DepTree,
    Classifier,
    /// No scope detection; every document gets an empty label.
    None,
}

impl ScopeMethod {
    pub fn parse(name: &str, n: usize) -> CliResult<ScopeMethod> {
        match name {
            "next_n" => Ok(ScopeMethod::NextN(n)),
            "dep_tree" => Ok(ScopeMethod::DepTree),
            "classifier" => Ok(ScopeMethod::Classifier),
            "none" => Ok(ScopeMethod::None),
            other => Err(CliError::config(format!(
                "unknown scope method `{other}` (expected next_n, dep_tree, classifier or none)"
            ))),
        }
    }

    /// Stable name used in model metadata, e.g. `next_n(2)`.
    pub fn label(&self) -> String {
        match self {
            ScopeMethod::NextN(n) => format!("next_n({n})"),
            ScopeMethod::DepTree => "dep_tree".to_string(),
            ScopeMethod::Classifier => "classifier".to_string(),
            ScopeMethod::None => "none".to_string(),
        }
    }

    /// Inverse of [`label`](Self::label), used to replay a model's
    /// featurization at evaluation time.
    pub fn parse_label(label: &str) -> CliResult<ScopeMethod> {
        if let Some(inner) = label.strip_prefix("next_n(").and_then(|r| r.strip_suffix(')')) {
            let n = inner.parse().map_err(|_| {
                CliError::Input(format!("bad window size in scope label `{label}`"))
            })?;
            return Ok(ScopeMethod::NextN(n));
        }
        ScopeMethod::parse(label, DEFAULT_N)
    }

    pub fn requires_dependencies(&self) -> bool {
        matches!(self, ScopeMethod::DepTree | ScopeMethod::Classifier)
    }
}

/// Reads the method selection from `method` and `n` settings.
pub fn scope_method(settings: &Settings) -> CliResult<ScopeMethod> {
    let name = settings.get("method").unwrap_or("next_n");
    let n: usize = settings.parse_or("n", DEFAULT_N)?;
    if n == 0 {
        return Err(CliError::config("window size n must be at least 1"));
    }
    ScopeMethod::parse(name, n)
}

/// Builds the cue lexicon from `negations`/`amplifiers`/`downtoners`
/// settings, falling back to the shipped list per kind.
pub fn cue_lexicon(settings: &Settings) -> CliResult<CueLexicon> {
    let mut cues = CueLexicon::new();
    for (key, kind) in [
        ("negations", ModifierKind::Negation),
        ("amplifiers", ModifierKind::Amplifier),
        ("downtoners", ModifierKind::Downtoner),
    ] {
        let terms = match settings.path(key) {
            Some(path) => lexicons::load_terms(&path)?,
            None => builtin::builtin_terms(kind)?,
        };
        for term in terms {
            cues.insert(term, kind);
        }
    }
    Ok(cues)
}

/// Reads the emotion lexicon from the `emotion_lexicon` setting, falling
/// back to the shipped sample.
pub fn emotion_lexicon(settings: &Settings) -> CliResult<EmotionLexicon> {
    match settings.path("emotion_lexicon") {
        Some(path) => lexicons::load_emotion_lexicon(&path),
        None => builtin::builtin_emotions(),
    }
}

/// Everything scope detection needs beyond the documents.
pub struct ScopeContext<'a> {
    pub cues: &'a CueLexicon,
    pub models: Option<&'a ScopeModelSet>,
    pub emotions: Option<&'a EmotionLexicon>,
}

/// Runs one scope method over a corpus. The classifier method needs
/// trained per-kind models and the emotion lexicon; tree-based methods
/// need parsed input.
pub fn detect_scopes(
    docs: &[&Document],
    method: &ScopeMethod,
    ctx: &ScopeContext,
) -> CliResult<BTreeMap<String, ScopeLabel>> {
    if method.requires_dependencies() {
        if let Some(doc) = docs.iter().find(|d| !d.has_dependencies()) {
            return Err(CliError::Input(format!(
                "dependencies required: method {} needs parsed input, but document `{}` has no heads (use a .conllu corpus)",
                method.label(),
                doc.id
            )));
        }
    }
    let mut scopes = BTreeMap::new();
    for doc in docs {
        let label = match method {
            ScopeMethod::NextN(n) => next_n_scope(doc, ctx.cues, *n)?,
            ScopeMethod::DepTree => dep_tree_scope(doc, ctx.cues)?,
            ScopeMethod::Classifier => {
                let models = ctx.models.ok_or_else(|| {
                    CliError::config("classifier method needs `scope_models` pointing at a train-scope-clf run")
                })?;
                let emotions = ctx.emotions.ok_or_else(|| {
                    CliError::config("classifier method needs an emotion lexicon")
                })?;
                classifier_scope(doc, ctx.cues, models, emotions)?
            }
            ScopeMethod::None => ScopeLabel::empty(doc.len()),
        };
        scopes.insert(doc.id.clone(), label);
    }
    Ok(scopes)
}

/// Labeled documents vectorized for the linear model. Row order follows
/// `docs`; `golds[i]` belongs to `examples[i]`.
#[derive(Debug)]
pub struct BowDataset {
    pub examples: Vec<(emoscope_core::sparse::FeatureVector, Emotion)>,
    pub vocab: Vocabulary,
    pub golds: Vec<Emotion>,
}

/// Vectorizes a labeled corpus, growing a fresh vocabulary. Scope labels
/// select the modifier prefix per token; pass empty labels for the plain
/// bag of words.
pub fn featurize_corpus(
    docs: &[&Document],
    scopes: &BTreeMap<String, ScopeLabel>,
) -> CliResult<BowDataset> {
    let mut vocab = Vocabulary::new();
    let mut examples = Vec::with_capacity(docs.len());
    let mut golds = Vec::with_capacity(docs.len());
    for doc in docs {
        let label = doc.label.ok_or_else(|| {
            CliError::Input(format!("document `{}` has no label; training needs labeled data", doc.id))
        })?;
        let scope = scope_for(scopes, doc)?;
        examples.push((featurize_bow(doc, scope, &mut vocab), label));
        golds.push(label);
    }
    Ok(BowDataset { examples, vocab, golds })
}

/// Predicts every document with a frozen vocabulary, in corpus order.
pub fn predict_corpus(
    model: &MulticlassModel,
    vocab: &Vocabulary,
    docs: &[&Document],
    scopes: &BTreeMap<String, ScopeLabel>,
) -> CliResult<Vec<Emotion>> {
    let mut preds = Vec::with_capacity(docs.len());
    for doc in docs {
        let scope = scope_for(scopes, doc)?;
        preds.push(model.predict(&featurize_bow_frozen(doc, scope, vocab)));
    }
    Ok(preds)
}

/// Gold labels in corpus order; errors on unlabeled documents.
pub fn gold_labels(docs: &[&Document]) -> CliResult<Vec<Emotion>> {
    docs.iter()
        .map(|doc| {
            doc.label.ok_or_else(|| {
                CliError::Input(format!("document `{}` has no label; evaluation needs labeled data", doc.id))
            })
        })
        .collect()
}

/// Scope labels in corpus order, for subset evaluation.
pub fn scopes_in_order(
    docs: &[&Document],
    scopes: &BTreeMap<String, ScopeLabel>,
) -> CliResult<Vec<ScopeLabel>> {
    docs.iter().map(|doc| scope_for(scopes, doc).cloned()).collect()
}

fn scope_for<'s>(
    scopes: &'s BTreeMap<String, ScopeLabel>,
    doc: &Document,
) -> CliResult<&'s ScopeLabel> {
    let label = scopes.get(&doc.id).ok_or_else(|| {
        CliError::Input(format!("no scope labels for document `{}`", doc.id))
    })?;
    if label.len() != doc.len() {
        return Err(CliError::Input(format!(
            "scope labels for `{}` cover {} tokens, document has {}",
            doc.id,
            label.len(),
            doc.len()
        )));
    }
    Ok(label)
}

/// Empty scope labels for every document; the plain bag-of-words baseline.
pub fn empty_scopes(docs: &[&Document]) -> BTreeMap<String, ScopeLabel> {
    docs.iter()
        .map(|d| (d.id.clone(), ScopeLabel::empty(d.len())))
        .collect()
}
