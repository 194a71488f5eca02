//! JSON serialization for trained linear models.
//!
//! Weight vectors are stored in vocabulary order, so a file is valid only
//! when `weights.len() == vocabulary.len()`. Loss traces are training
//! diagnostics and are not persisted.

use std::path::Path;

use serde::{Deserialize, Serialize};

use emoscope_core::emotion::Emotion;
use emoscope_core::lexicon::ModifierKind;
use emoscope_core::linear::{LinearModel, MulticlassModel, TrainConfig};
use emoscope_core::scope::{ScopeModel, ScopeModelSet};
use emoscope_core::sparse::Vocabulary;

use crate::error::{CliError, CliResult};
use crate::formats::{read_json, write_json};

#[derive(Serialize, Deserialize, Clone)]
pub struct TrainMeta {
    pub lambda: f64,
    pub epochs: usize,
    pub seed: u64,
    /// Scope method used to build features, e.g. `next_n(2)` or `none`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scopes: Option<String>,
}

impl TrainMeta {
    pub fn from_config(cfg: &TrainConfig, scopes: Option<String>) -> TrainMeta {
        TrainMeta {
            lambda: cfg.lambda,
            epochs: cfg.epochs,
            seed: cfg.seed,
            scopes,
        }
    }

    pub fn to_config(&self) -> TrainConfig {
        TrainConfig {
            lambda: self.lambda,
            epochs: self.epochs,
            seed: self.seed,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ScopeModelFile {
    kind: String,
    modifier: String,
    vocabulary: Vec<String>,
    weights: Vec<f64>,
    bias: f64,
    metadata: TrainMeta,
}

const SCOPE_MODEL_KIND: &str = "scope";
const BOW_MODEL_KIND: &str = "emotion-bow";

fn check_kind(path: &Path, found: &str, expected: &str) -> CliResult<()> {
    if found != expected {
        return Err(CliError::Input(format!(
            "{}: expected a `{expected}` model, found `{found}`",
            path.display()
        )));
    }
    Ok(())
}

fn check_dims(path: &Path, weights: usize, vocab: usize) -> CliResult<()> {
    if weights != vocab {
        return Err(CliError::Input(format!(
            "{}: weight vector has {weights} entries for a vocabulary of {vocab}",
            path.display()
        )));
    }
    Ok(())
}

pub fn write_scope_model(path: &Path, model: &ScopeModel, meta: &TrainMeta) -> CliResult<()> {
    write_json(
        path,
        &ScopeModelFile {
            kind: SCOPE_MODEL_KIND.to_string(),
            modifier: model.kind.name().to_string(),
            vocabulary: model.vocab.names().to_vec(),
            weights: model.model.weights.clone(),
            bias: model.model.bias,
            metadata: meta.clone(),
        },
    )
}

pub fn read_scope_model(path: &Path) -> CliResult<ScopeModel> {
    let file: ScopeModelFile = read_json(path)?;
    check_kind(path, &file.kind, SCOPE_MODEL_KIND)?;
    check_dims(path, file.weights.len(), file.vocabulary.len())?;
    let kind = ModifierKind::parse(&file.modifier).ok_or_else(|| {
        CliError::Input(format!(
            "{}: unknown modifier kind `{}`",
            path.display(),
            file.modifier
        ))
    })?;
    let vocab = Vocabulary::from_names(file.vocabulary)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(ScopeModel {
        kind,
        vocab,
        model: LinearModel {
            weights: file.weights,
            bias: file.bias,
            loss_trace: Vec::new(),
            degenerate: false,
        },
    })
}

/// File name for one modifier's scope model inside a models directory.
pub fn scope_model_filename(kind: ModifierKind) -> String {
    format!("scope-{}.json", kind.prefix())
}

/// Loads the three per-kind scope models from a directory produced by
/// `train-scope-clf`.
pub fn read_scope_model_set(dir: &Path) -> CliResult<ScopeModelSet> {
    let mut map = std::collections::BTreeMap::new();
    for kind in ModifierKind::ALL {
        let path = dir.join(scope_model_filename(kind));
        let model = read_scope_model(&path)?;
        if model.kind != kind {
            return Err(CliError::Input(format!(
                "{}: holds a {} model, expected {}",
                path.display(),
                model.kind.name(),
                kind.name()
            )));
        }
        map.insert(kind, model);
    }
    Ok(ScopeModelSet::from_map(map)?)
}

#[derive(Serialize, Deserialize)]
struct MemberFile {
    weights: Vec<f64>,
    bias: f64,
    degenerate: bool,
}

#[derive(Serialize, Deserialize)]
struct BowModelFile {
    kind: String,
    classes: Vec<String>,
    vocabulary: Vec<String>,
    members: Vec<MemberFile>,
    metadata: TrainMeta,
}

pub fn write_bow_model(
    path: &Path,
    model: &MulticlassModel,
    vocab: &Vocabulary,
    meta: &TrainMeta,
) -> CliResult<()> {
    write_json(
        path,
        &BowModelFile {
            kind: BOW_MODEL_KIND.to_string(),
            classes: Emotion::ALL.iter().map(|e| e.name().to_string()).collect(),
            vocabulary: vocab.names().to_vec(),
            members: model
                .members
                .iter()
                .map(|m| MemberFile {
                    weights: m.weights.clone(),
                    bias: m.bias,
                    degenerate: m.degenerate,
                })
                .collect(),
            metadata: meta.clone(),
        },
    )
}

pub fn read_bow_model(path: &Path) -> CliResult<(MulticlassModel, Vocabulary, TrainMeta)> {
    let file: BowModelFile = read_json(path)?;
    check_kind(path, &file.kind, BOW_MODEL_KIND)?;
    let expected: Vec<String> = Emotion::ALL.iter().map(|e| e.name().to_string()).collect();
    if file.classes != expected {
        return Err(CliError::Input(format!(
            "{}: unexpected class order {:?}",
            path.display(),
            file.classes
        )));
    }
    if file.members.len() != expected.len() {
        return Err(CliError::Input(format!(
            "{}: expected {} members, found {}",
            path.display(),
            expected.len(),
            file.members.len()
        )));
    }
    for m in &file.members {
        check_dims(path, m.weights.len(), file.vocabulary.len())?;
    }
    let vocab = Vocabulary::from_names(file.vocabulary)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let model = MulticlassModel {
        members: file
            .members
            .into_iter()
            .map(|m| LinearModel {
                weights: m.weights,
                bias: m.bias,
                loss_trace: Vec::new(),
                degenerate: m.degenerate,
            })
            .collect(),
    };
    Ok((model, vocab, file.metadata))
}

#[cfg(test)]
mod tests {
    use super::*;
    use emoscope_core::sparse::FeatureVector;

    #[test]
    fn scope_model_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scope-neg.json");
        let vocab =
            Vocabulary::from_names(vec!["w=not".into(), "p=RB".into(), "rd=1".into()]).unwrap();
        let model = ScopeModel {
            kind: ModifierKind::Negation,
            vocab,
            model: LinearModel {
                weights: vec![0.5, -0.25, 1.0],
                bias: -0.125,
                loss_trace: vec![1.0],
                degenerate: false,
            },
        };
        let meta = TrainMeta::from_config(&TrainConfig::default(), None);
        write_scope_model(&path, &model, &meta).unwrap();
        let back = read_scope_model(&path).unwrap();
        assert_eq!(back.kind, ModifierKind::Negation);
        assert_eq!(back.model.weights, model.model.weights);
        assert_eq!(back.model.bias, model.model.bias);
        assert_eq!(back.vocab.names(), model.vocab.names());
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(
            &path,
            r#"{"kind":"scope","modifier":"negation","vocabulary":["a","b"],"weights":[1.0],"bias":0.0,"metadata":{"lambda":0.0001,"epochs":20,"seed":42}}"#,
        )
        .unwrap();
        let err = read_scope_model(&path).unwrap_err();
        assert!(err.to_string().contains("1 entries"));
    }

    #[test]
    fn bow_model_roundtrip_preserves_scores() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bow.json");
        let vocab = Vocabulary::from_names(vec!["happy".into(), "neg_happy".into()]).unwrap();
        let mut members = Vec::new();
        for i in 0..6 {
            members.push(LinearModel {
                weights: vec![i as f64 * 0.5, -(i as f64)],
                bias: 0.01 * i as f64,
                loss_trace: Vec::new(),
                degenerate: i == 4,
            });
        }
        let model = MulticlassModel { members };
        let meta = TrainMeta::from_config(&TrainConfig::default(), Some("next_n(2)".into()));
        write_bow_model(&path, &model, &vocab, &meta).unwrap();
        let (back, back_vocab, back_meta) = read_bow_model(&path).unwrap();
        let x = FeatureVector::from_pairs([(0, 1.0), (1, 2.0)]);
        assert_eq!(back.scores(&x), model.scores(&x));
        assert_eq!(back_vocab.names(), vocab.names());
        assert_eq!(back_meta.scopes.as_deref(), Some("next_n(2)"));
        assert!(back.members[4].degenerate);
    }
}
