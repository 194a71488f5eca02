//! Shuffles a labeled corpus into train and test sides and draws the
//! class-balanced training subset used by the weighted-lexicon model.

use emoscope_core::split::{split_corpus, SplitRatios};

use crate::config::Settings;
use crate::error::CliResult;
use crate::formats::manifest::{write_manifest, SplitManifest};
use crate::pipeline::{cue_lexicon, emotion_lexicon};
use crate::runs::RunDir;

pub fn run(settings: &Settings, run: &RunDir) -> CliResult<()> {
    let docs = super::corpus_from_settings(settings)?;
    let seed: u64 = settings.parse_or("seed", 42)?;
    let ratios = SplitRatios {
        train: settings.parse_or("train_ratio", 0.8)?,
        test: settings.parse_or("test_ratio", 0.2)?,
    };
    let balanced_per_class: usize = settings.parse_or("balanced_per_class", 0)?;
    let emotions = emotion_lexicon(settings)?;
    let cues = cue_lexicon(settings)?;

    let split = split_corpus(&docs, seed, ratios, balanced_per_class, &emotions, &cues)?;
    let manifest =
        SplitManifest::from_split(&split, &docs, (ratios.train, ratios.test), balanced_per_class);
    write_manifest(&run.file("manifest.json"), &manifest)?;

    println!(
        "split {} documents: train {}, test {}, balanced {}",
        docs.len(),
        manifest.train.len(),
        manifest.test.len(),
        manifest.balanced.len()
    );
    Ok(())
}
