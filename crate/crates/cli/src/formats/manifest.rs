//! Split manifests.
//!
//! A split is stored as document ids rather than positions, so the
//! manifest stays valid as long as ids are stable. `balanced` is a subset
//! of `train` with an equal number of qualifying documents per emotion.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use emoscope_core::document::Document;
use emoscope_core::split::CorpusSplit;

use crate::error::{CliError, CliResult};
use crate::formats::{read_json, write_json};

#[derive(Debug, Serialize, Deserialize)]
pub struct SplitManifest {
    pub seed: u64,
    pub train_ratio: f64,
    pub test_ratio: f64,
    pub balanced_per_class: usize,
    pub train: Vec<String>,
    pub test: Vec<String>,
    pub balanced: Vec<String>,
}

impl SplitManifest {
    pub fn from_split(
        split: &CorpusSplit,
        docs: &[Document],
        ratios: (f64, f64),
        balanced_per_class: usize,
    ) -> SplitManifest {
        let ids = |idx: &[usize]| idx.iter().map(|&i| docs[i].id.clone()).collect();
        SplitManifest {
            seed: split.seed,
            train_ratio: ratios.0,
            test_ratio: ratios.1,
            balanced_per_class,
            train: ids(&split.train),
            test: ids(&split.test),
            balanced: ids(&split.balanced),
        }
    }

    /// Selects the named subset of `docs`, erroring on ids the corpus does
    /// not contain.
    pub fn select<'d>(&self, docs: &'d [Document], subset: Subset) -> CliResult<Vec<&'d Document>> {
        let wanted = match subset {
            Subset::Train => &self.train,
            Subset::Test => &self.test,
            Subset::Balanced => &self.balanced,
        };
        let by_id: std::collections::BTreeMap<&str, &Document> =
            docs.iter().map(|d| (d.id.as_str(), d)).collect();
        let mut out = Vec::with_capacity(wanted.len());
        for id in wanted {
            out.push(*by_id.get(id.as_str()).ok_or_else(|| {
                CliError::Input(format!("manifest names `{id}` which is not in the corpus"))
            })?);
        }
        Ok(out)
    }

    fn validate(&self) -> CliResult<()> {
        let train: BTreeSet<&String> = self.train.iter().collect();
        let test: BTreeSet<&String> = self.test.iter().collect();
        if train.len() != self.train.len() || test.len() != self.test.len() {
            return Err(CliError::Input("manifest contains duplicate ids".into()));
        }
        if let Some(id) = train.intersection(&test).next() {
            return Err(CliError::Input(format!(
                "manifest places `{id}` in both train and test"
            )));
        }
        if let Some(id) = self.balanced.iter().find(|id| !train.contains(id)) {
            return Err(CliError::Input(format!(
                "balanced subset contains `{id}` which is not in train"
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subset {
    Train,
    Test,
    Balanced,
}

impl Subset {
    pub fn parse(name: &str) -> Option<Subset> {
        match name {
            "train" => Some(Subset::Train),
            "test" => Some(Subset::Test),
            "balanced" => Some(Subset::Balanced),
            _ => None,
        }
    }
}

pub fn write_manifest(path: &Path, manifest: &SplitManifest) -> CliResult<()> {
    write_json(path, manifest)
}

pub fn read_manifest(path: &Path) -> CliResult<SplitManifest> {
    let manifest: SplitManifest = read_json(path)?;
    manifest.validate()?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn manifest() -> SplitManifest {
        SplitManifest {
            seed: 7,
            train_ratio: 0.8,
            test_ratio: 0.2,
            balanced_per_class: 1,
            train: vec!["a".into(), "b".into(), "c".into()],
            test: vec!["d".into()],
            balanced: vec!["b".into()],
        }
    }

    #[test]
    fn roundtrip_and_select() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("manifest.json");
        write_manifest(&path, &manifest()).unwrap();
        let back = read_manifest(&path).unwrap();
        assert_eq!(back.train, ["a", "b", "c"]);

        let docs: Vec<Document> = ["a", "b", "c", "d"]
            .iter()
            .map(|id| Document::from_raw_text(id, "hello", None))
            .collect();
        let test = back.select(&docs, Subset::Test).unwrap();
        assert_eq!(test.len(), 1);
        assert_eq!(test[0].id, "d");
    }

    #[test]
    fn overlapping_subsets_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("manifest.json");
        let mut bad = manifest();
        bad.test.push("a".into());
        write_manifest(&path, &bad).unwrap();
        let err = read_manifest(&path).unwrap_err();
        assert!(err.to_string().contains("both train and test"));
    }

    #[test]
    fn balanced_must_be_inside_train() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("manifest.json");
        let mut bad = manifest();
        bad.balanced = vec!["d".into()];
        write_manifest(&path, &bad).unwrap();
        assert!(read_manifest(&path).is_err());
    }
}
