//! Trains the three per-kind scope classifiers from gold pairs over a
//! parsed corpus.

use emoscope_core::lexicon::ModifierKind;
use emoscope_core::linear::TrainConfig;
use emoscope_core::scope::train_scope_model;

use crate::config::Settings;
use crate::error::{CliError, CliResult};
use crate::formats::corpus::load_conllu;
use crate::formats::models::{scope_model_filename, write_scope_model, TrainMeta};
use crate::formats::scopes::load_pairs;
use crate::pipeline::cue_lexicon;
use crate::runs::RunDir;

pub(crate) fn train_config(settings: &Settings) -> CliResult<TrainConfig> {
    let defaults = TrainConfig::default();
    Ok(TrainConfig {
        lambda: settings.parse_or("lambda", defaults.lambda)?,
        epochs: settings.parse_or("epochs", defaults.epochs)?,
        seed: settings.parse_or("seed", defaults.seed)?,
    })
}

pub fn run(settings: &Settings, run: &RunDir) -> CliResult<()> {
    let path = settings.require_path("corpus")?;
    if !path.extension().map(|e| e.eq_ignore_ascii_case("conllu")).unwrap_or(false) {
        return Err(CliError::Input(
            "dependencies required: scope classifier features need a .conllu corpus".into(),
        ));
    }
    let docs = load_conllu(&path)?;
    let pairs = load_pairs(&settings.require_path("gold")?)?;
    let cues = cue_lexicon(settings)?;
    let cfg = train_config(settings)?;

    for kind in ModifierKind::ALL {
        let kind_pairs: Vec<_> = pairs.iter().filter(|p| p.kind == kind).cloned().collect();
        if kind_pairs.is_empty() {
            return Err(CliError::Input(format!(
                "gold pairs contain no {} examples",
                kind.name()
            )));
        }
        let model = train_scope_model(&docs, &kind_pairs, &cues, kind, &cfg)?;
        let meta = TrainMeta::from_config(&cfg, None);
        let file = run.file(&scope_model_filename(kind));
        write_scope_model(&file, &model, &meta)?;
        println!(
            "{}: trained on {} pairs, {} features -> {}",
            kind.name(),
            kind_pairs.len(),
            model.vocab.len(),
            file.display()
        );
    }
    Ok(())
}
