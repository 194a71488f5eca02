//! Evaluates the plain and scope-aware bag-of-words models on the same
//! corpus: full reports for both, their difference, and per-modifier
//! subset reports over the documents whose scopes contain each kind.

use emoscope_core::eval::{compare_reports, report, subset_eval};
use emoscope_core::lexicon::ModifierKind;

use crate::config::Settings;
use crate::error::{CliError, CliResult};
use crate::formats::manifest::Subset;
use crate::formats::models::{read_bow_model, read_scope_model_set};
use crate::formats::reports::{render_delta, render_report, write_delta, write_report};
use crate::formats::{write_json, write_text};
use crate::pipeline::{
    cue_lexicon, detect_scopes, emotion_lexicon, gold_labels, predict_corpus, scopes_in_order,
    ScopeContext, ScopeMethod,
};
use crate::runs::RunDir;

pub fn run(settings: &Settings, run: &RunDir) -> CliResult<()> {
    let docs = super::corpus_from_settings(settings)?;
    let selected = super::select_docs(&docs, settings, Subset::Test)?;
    let golds = gold_labels(&selected)?;

    let (plain_model, plain_vocab, plain_meta) =
        read_bow_model(&settings.require_path("model_plain")?)?;
    let (scoped_model, scoped_vocab, scoped_meta) =
        read_bow_model(&settings.require_path("model_scoped")?)?;

    // Featurization must replay each model's own scope method.
    let plain_method = method_from_meta(plain_meta.scopes.as_deref(), "model_plain")?;
    if plain_method != ScopeMethod::None {
        return Err(CliError::Input(format!(
            "model_plain was trained with scopes `{}`, expected a plain model",
            plain_method.label()
        )));
    }
    let scoped_method = method_from_meta(scoped_meta.scopes.as_deref(), "model_scoped")?;

    let cues = cue_lexicon(settings)?;
    let models = match &scoped_method {
        ScopeMethod::Classifier => {
            Some(read_scope_model_set(&settings.require_path("scope_models")?)?)
        }
        _ => None,
    };
    let emotions = match &scoped_method {
        ScopeMethod::Classifier => Some(emotion_lexicon(settings)?),
        _ => None,
    };
    let ctx = ScopeContext { cues: &cues, models: models.as_ref(), emotions: emotions.as_ref() };

    let no_scopes = crate::pipeline::empty_scopes(&selected);
    let scopes = detect_scopes(&selected, &scoped_method, &ctx)?;

    let plain_preds = predict_corpus(&plain_model, &plain_vocab, &selected, &no_scopes)?;
    let scoped_preds = predict_corpus(&scoped_model, &scoped_vocab, &selected, &scopes)?;

    let plain_report = report(&golds, &plain_preds, "all")?;
    let scoped_report = report(&golds, &scoped_preds, "all")?;
    let delta = compare_reports(&plain_report, &scoped_report)?;

    write_report(&run.file("report-plain.json"), &plain_report)?;
    write_report(&run.file("report-scoped.json"), &scoped_report)?;
    write_delta(&run.file("delta.json"), &delta)?;
    write_text(&run.file("report-plain.txt"), &render_report(&plain_report))?;
    write_text(&run.file("report-scoped.txt"), &render_report(&scoped_report))?;
    write_text(&run.file("delta.txt"), &render_delta(&delta))?;

    println!("plain ({} documents)", selected.len());
    print!("{}", render_report(&plain_report));
    println!("\nscoped [{}]", scoped_method.label());
    print!("{}", render_report(&scoped_report));
    println!("\ndelta (scoped - plain)");
    print!("{}", render_delta(&delta));

    // Subset reports: documents whose detected scopes contain each kind,
    // under both models, plus the per-subset delta.
    let ordered_scopes = scopes_in_order(&selected, &scopes)?;
    let mut subsets_text = String::new();
    for kind in ModifierKind::ALL {
        let plain_sub = subset_eval(&ordered_scopes, &golds, &plain_preds, kind)?;
        let scoped_sub = subset_eval(&ordered_scopes, &golds, &scoped_preds, kind)?;
        let sub_delta = compare_reports(&plain_sub, &scoped_sub)?;
        write_json(
            &run.file(&format!("subset-{}.json", kind.prefix())),
            &SubsetFile {
                kind: kind.name().to_string(),
                documents: plain_sub.total,
                plain: (&plain_sub).into(),
                scoped: (&scoped_sub).into(),
            },
        )?;
        subsets_text.push_str(&format!(
            "subset {} ({} documents)\n[plain]\n{}[scoped]\n{}[delta]\n{}\n",
            kind.name(),
            plain_sub.total,
            render_report(&plain_sub),
            render_report(&scoped_sub),
            render_delta(&sub_delta)
        ));
    }
    write_text(&run.file("subsets.txt"), &subsets_text)?;
    Ok(())
}

#[derive(serde::Serialize)]
struct SubsetFile {
    kind: String,
    documents: u64,
    plain: crate::formats::reports::ReportFile,
    scoped: crate::formats::reports::ReportFile,
}

fn method_from_meta(scopes: Option<&str>, which: &str) -> CliResult<ScopeMethod> {
    let label = scopes.ok_or_else(|| {
        CliError::Input(format!("{which} carries no scope metadata"))
    })?;
    ScopeMethod::parse_label(label)
}
