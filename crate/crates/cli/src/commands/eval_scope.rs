//! Evaluates scope decisions against gold pairs, either for precomputed
//! labels or by running several methods side by side.

use std::collections::BTreeMap;

use emoscope_core::scope::{evaluate_scope, ScopeEvalReport};

use crate::config::Settings;
use crate::error::CliResult;
use crate::formats::models::read_scope_model_set;
use crate::formats::reports::{render_scope_eval, write_scope_eval};
use crate::formats::scopes::{load_pairs, read_scopes};
use crate::formats::write_text;
use crate::pipeline::{
    cue_lexicon, detect_scopes, emotion_lexicon, ScopeContext, ScopeMethod, DEFAULT_N,
};
use crate::runs::RunDir;

pub fn run(settings: &Settings, run: &RunDir) -> CliResult<()> {
    let docs = super::corpus_from_settings(settings)?;
    let doc_refs: Vec<_> = docs.iter().collect();
    let gold = load_pairs(&settings.require_path("gold")?)?;

    let mut evaluated: Vec<(String, ScopeEvalReport)> = Vec::new();
    if let Some(path) = settings.path("scopes") {
        let lens: BTreeMap<String, usize> =
            docs.iter().map(|d| (d.id.clone(), d.len())).collect();
        let predicted = read_scopes(&path, &lens)?;
        evaluated.push(("file".to_string(), evaluate_scope(&predicted, &gold)?));
    } else {
        let cues = cue_lexicon(settings)?;
        let methods_raw = settings.get("methods").unwrap_or("next_n");
        let n: usize = settings.parse_or("n", DEFAULT_N)?;
        for name in methods_raw.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let method = match name {
                // Bare next_n picks up the shared window setting.
                "next_n" => ScopeMethod::NextN(n),
                other => ScopeMethod::parse_label(other)?,
            };
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
            let ctx = ScopeContext {
                cues: &cues,
                models: models.as_ref(),
                emotions: emotions.as_ref(),
            };
            let predicted = detect_scopes(&doc_refs, &method, &ctx)?;
            evaluated.push((method.label(), evaluate_scope(&predicted, &gold)?));
        }
    }

    let table = render_scope_eval(&evaluated);
    write_scope_eval(&run.file("scope_eval.json"), &evaluated)?;
    write_text(&run.file("scope_eval.txt"), &table)?;
    print!("{table}");
    Ok(())
}
