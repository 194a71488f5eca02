//! Filters cue candidates by their annotated modifier usage ratio and
//! writes one accepted-term list per kind.

use emoscope_core::lexicon::{filter_cues, ModifierKind};

use crate::config::Settings;
use crate::error::CliResult;
use crate::formats::lexicons::{load_candidates, load_usage_samples};
use crate::formats::write_text;
use crate::runs::RunDir;

const DEFAULT_THRESHOLD: f64 = 0.5;

pub fn run(settings: &Settings, run: &RunDir) -> CliResult<()> {
    let threshold: f64 = settings.parse_or("threshold", DEFAULT_THRESHOLD)?;
    let samples = load_usage_samples(&settings.require_path("samples")?)?;
    let candidates = load_candidates(
        &settings.require_path("candidates_negations")?,
        &settings.require_path("candidates_amplifiers")?,
        &settings.require_path("candidates_downtoners")?,
        settings.path("trusted").as_deref(),
    )?;

    let accepted = filter_cues(&candidates, &samples, threshold)?;

    for (kind, name) in [
        (ModifierKind::Negation, "negations.txt"),
        (ModifierKind::Amplifier, "amplifiers.txt"),
        (ModifierKind::Downtoner, "downtoners.txt"),
    ] {
        let mut body = String::new();
        for (term, term_kind) in accepted.iter() {
            if term_kind == kind {
                body.push_str(term);
                body.push('\n');
            }
        }
        write_text(&run.file(name), &body)?;
        let offered = candidates.iter().filter(|c| c.kind == kind).count();
        println!(
            "{}: kept {} of {} candidates",
            kind.name(),
            accepted.count_of(kind),
            offered
        );
    }
    Ok(())
}
