//! Runs one scope detection method over a corpus and writes the labels.
//! With `sweep_n` it instead evaluates next-n across a window range
//! against gold pairs, reproducing the window-size experiment.

use emoscope_core::scope::sweep_next_n;

use crate::config::{parse_span, Settings};
use crate::error::{CliError, CliResult};
use crate::formats::models::read_scope_model_set;
use crate::formats::reports::{render_sweep_table, render_sweep_tsv};
use crate::formats::scopes::{load_pairs, write_scopes};
use crate::formats::write_text;
use crate::pipeline::{
    cue_lexicon, detect_scopes, emotion_lexicon, scope_method, ScopeContext, ScopeMethod,
};
use crate::runs::RunDir;

pub fn run(settings: &Settings, run: &RunDir) -> CliResult<()> {
    let docs = super::corpus_from_settings(settings)?;
    let doc_refs: Vec<_> = docs.iter().collect();
    let cues = cue_lexicon(settings)?;

    if let Some(span) = settings.get("sweep_n") {
        if settings.get("method").map(|m| m != "next_n").unwrap_or(false) {
            return Err(CliError::config("`sweep_n` sweeps the next_n method; drop `method` or set it to next_n"));
        }
        let (lo, hi) = parse_span(span)?;
        let gold = load_pairs(&settings.require_path("gold")?)?;
        let ns: Vec<usize> = (lo..=hi).collect();
        let rows = sweep_next_n(&docs, &cues, &gold, &ns)?;
        write_text(&run.file("sweep.tsv"), &render_sweep_tsv(&rows))?;
        print!("{}", render_sweep_table(&rows));
        return Ok(());
    }

    let method = scope_method(settings)?;
    let models = match &method {
        ScopeMethod::Classifier => Some(read_scope_model_set(&settings.require_path("scope_models")?)?),
        _ => None,
    };
    let emotions = match &method {
        ScopeMethod::Classifier => Some(emotion_lexicon(settings)?),
        _ => None,
    };
    let ctx = ScopeContext { cues: &cues, models: models.as_ref(), emotions: emotions.as_ref() };
    let scopes = detect_scopes(&doc_refs, &method, &ctx)?;

    let labeled: usize = scopes.values().map(|s| s.labeled_count()).sum();
    write_scopes(&run.file("scopes.jsonl"), &scopes)?;
    println!(
        "{}: labeled {labeled} tokens across {} documents",
        method.label(),
        scopes.len()
    );
    Ok(())
}
