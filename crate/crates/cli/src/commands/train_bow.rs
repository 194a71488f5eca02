//! Trains the bag-of-words emotion classifier twice over the same corpus:
//! once plain and once with modifier-prefixed tokens from detected scopes.

use emoscope_core::linear::train_multiclass;

use crate::config::Settings;
use crate::error::CliResult;
use crate::formats::manifest::Subset;
use crate::formats::models::{read_scope_model_set, write_bow_model, TrainMeta};
use crate::pipeline::{
    cue_lexicon, detect_scopes, emotion_lexicon, empty_scopes, featurize_corpus, scope_method,
    ScopeContext, ScopeMethod,
};
use crate::runs::RunDir;

pub fn run(settings: &Settings, run: &RunDir) -> CliResult<()> {
    let docs = super::corpus_from_settings(settings)?;
    let selected = super::select_docs(&docs, settings, Subset::Train)?;
    let cues = cue_lexicon(settings)?;
    let method = scope_method(settings)?;
    let cfg = super::train_scope_clf::train_config(settings)?;

    let models = match &method {
        ScopeMethod::Classifier => {
            Some(read_scope_model_set(&settings.require_path("scope_models")?)?)
        }
        _ => None,
    };
    let emotions = match &method {
        ScopeMethod::Classifier => Some(emotion_lexicon(settings)?),
        _ => None,
    };
    let ctx = ScopeContext { cues: &cues, models: models.as_ref(), emotions: emotions.as_ref() };

    for (scopes, label, file) in [
        (empty_scopes(&selected), "none".to_string(), "model-plain.json"),
        (detect_scopes(&selected, &method, &ctx)?, method.label(), "model-scoped.json"),
    ] {
        let dataset = featurize_corpus(&selected, &scopes)?;
        let model = train_multiclass(&dataset.examples, dataset.vocab.len(), &cfg)?;
        let meta = TrainMeta::from_config(&cfg, Some(label));
        let path = run.file(file);
        write_bow_model(&path, &model, &dataset.vocab, &meta)?;
        println!(
            "{}: {} documents, {} features",
            path.display(),
            selected.len(),
            dataset.vocab.len()
        );
    }
    Ok(())
}
