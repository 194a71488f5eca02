//! One module per subcommand. Each `run` takes the resolved settings and
//! the run directory its outputs go into; anything user-facing beyond
//! result files goes to stdout, diagnostics go through `log`.

pub mod detect_scope;
pub mod eval_bow;
pub mod eval_scope;
pub mod filter_cues;
pub mod inspect;
pub mod split;
pub mod train_bow;
pub mod train_lexmodel;
pub mod train_scope_clf;

use emoscope_core::document::Document;
use emoscope_core::text::HashtagMap;

use crate::config::Settings;
use crate::error::{CliError, CliResult};
use crate::formats::manifest::{read_manifest, Subset};
use crate::formats::{corpus, lexicons};

/// Loads the corpus named by the `corpus` setting, self-labeling from a
/// hashtag map when one is configured.
pub(crate) fn corpus_from_settings(settings: &Settings) -> CliResult<Vec<Document>> {
    let path = settings.require_path("corpus")?;
    let hashtags: Option<HashtagMap> = settings
        .path("hashtag_map")
        .map(|p| lexicons::load_hashtag_map(&p))
        .transpose()?;
    corpus::load_corpus(&path, hashtags.as_ref())
}

/// Narrows a corpus to one side of a split when a `manifest` is
/// configured; `default_subset` applies when `subset` is not set.
pub(crate) fn select_docs<'a>(
    docs: &'a [Document],
    settings: &Settings,
    default_subset: Subset,
) -> CliResult<Vec<&'a Document>> {
    match settings.path("manifest") {
        Some(path) => {
            let manifest = read_manifest(&path)?;
            let subset = match settings.get("subset") {
                Some(name) => Subset::parse(name).ok_or_else(|| {
                    CliError::config(format!(
                        "unknown subset `{name}` (expected train, test or balanced)"
                    ))
                })?,
                None => default_subset,
            };
            let selected = manifest.select(docs, subset)?;
            if selected.is_empty() {
                return Err(CliError::Input(format!(
                    "manifest subset {subset:?} selects no documents"
                )));
            }
            Ok(selected)
        }
        None => {
            if settings.get("subset").is_some() {
                return Err(CliError::config("`subset` needs a `manifest` to select from"));
            }
            Ok(docs.iter().collect())
        }
    }
}
