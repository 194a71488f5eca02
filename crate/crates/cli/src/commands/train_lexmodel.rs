//! Trains the weighted-lexicon emotion model: count vectors from detected
//! scopes, then hill climbing with random restarts over the weight tensor.

use emoscope_core::lexical::{count_vectors, hill_climb, HillClimbConfig};

use crate::config::Settings;
use crate::error::{CliError, CliResult};
use crate::formats::manifest::Subset;
use crate::formats::models::read_scope_model_set;
use crate::formats::tensor::{write_tensor, write_trace, TensorMeta};
use crate::pipeline::{
    cue_lexicon, detect_scopes, emotion_lexicon, scope_method, scopes_in_order, ScopeContext,
    ScopeMethod,
};
use crate::runs::RunDir;

fn hill_climb_config(settings: &Settings) -> CliResult<HillClimbConfig> {
    let defaults = HillClimbConfig::default();
    Ok(HillClimbConfig {
        restarts: settings.parse_or("restarts", defaults.restarts)?,
        patience: settings.parse_or("patience", defaults.patience)?,
        epoch_cap: settings.parse_or("epoch_cap", defaults.epoch_cap)?,
        seed: settings.parse_or("seed", defaults.seed)?,
    })
}

pub fn run(settings: &Settings, run: &RunDir) -> CliResult<()> {
    let docs = super::corpus_from_settings(settings)?;
    let selected = super::select_docs(&docs, settings, Subset::Balanced)?;
    let cues = cue_lexicon(settings)?;
    let emotions = emotion_lexicon(settings)?;
    let method = scope_method(settings)?;
    let cfg = hill_climb_config(settings)?;

    let models = match &method {
        ScopeMethod::Classifier => {
            Some(read_scope_model_set(&settings.require_path("scope_models")?)?)
        }
        _ => None,
    };
    let ctx = ScopeContext { cues: &cues, models: models.as_ref(), emotions: Some(&emotions) };
    let scopes = detect_scopes(&selected, &method, &ctx)?;
    let ordered = scopes_in_order(&selected, &scopes)?;

    let mut data = Vec::with_capacity(selected.len());
    for (doc, scope) in selected.iter().zip(&ordered) {
        let label = doc.label.ok_or_else(|| {
            CliError::Input(format!(
                "document `{}` has no label; training needs labeled data",
                doc.id
            ))
        })?;
        data.push((count_vectors(doc, scope, &emotions), label));
    }

    let outcome = hill_climb(&data, &cfg)?;
    let meta = TensorMeta::new(&cfg, outcome.objective, method.label(), &outcome.missing_classes);
    write_tensor(&run.file("tensor.json"), &outcome.tensor, &meta)?;
    write_trace(&run.file("trace.tsv"), &outcome.trace)?;

    println!(
        "trained on {} documents, objective (macro F1) {:.4}",
        selected.len(),
        outcome.objective
    );
    if !outcome.missing_classes.is_empty() {
        let names: Vec<&str> = outcome.missing_classes.iter().map(|e| e.name()).collect();
        log::warn!("classes absent from training data: {}", names.join(", "));
    }
    Ok(())
}
