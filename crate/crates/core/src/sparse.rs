//! Sparse feature vectors over an interned vocabulary.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Result};

/// Feature-name interner. Ids are assigned in first-seen order, so a
/// fixed corpus order yields a fixed vocabulary.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl Vocabulary {
    pub fn new() -> Vocabulary {
        Vocabulary::default()
    }

    /// Rebuilds a vocabulary from an ordered name list, e.g. a model
    /// file. Duplicate names are an error.
    pub fn from_names(names: Vec<String>) -> Result<Vocabulary> {
        let mut vocab = Vocabulary::new();
        for name in names {
            if vocab.index.contains_key(&name) {
                return Err(Error::InvalidVocabulary(format!("duplicate feature {name:?}")));
            }
            vocab.intern(&name);
        }
        Ok(vocab)
    }

    pub fn intern(&mut self, name: &str) -> usize {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Sparse vector keyed by feature id. Zero values are never stored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FeatureVector {
    values: BTreeMap<usize, f64>,
}

impl FeatureVector {
    pub fn new() -> FeatureVector {
        FeatureVector::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, f64)>) -> FeatureVector {
        let mut fv = FeatureVector::new();
        for (id, value) in pairs {
            fv.add(id, value);
        }
        fv
    }

    pub fn add(&mut self, id: usize, delta: f64) {
        let slot = self.values.entry(id).or_insert(0.0);
        *slot += delta;
        if *slot == 0.0 {
            self.values.remove(&id);
        }
    }

    pub fn get(&self, id: usize) -> f64 {
        self.values.get(&id).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values.iter().map(|(&id, &v)| (id, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Dot product against a dense weight vector. Ids beyond the dense
    /// length contribute nothing.
    pub fn dot(&self, dense: &[f64]) -> f64 {
        self.iter()
            .filter(|(id, _)| *id < dense.len())
            .map(|(id, v)| v * dense[id])
            .sum()
    }
}

/// Interns every count key, growing the vocabulary.
pub fn vectorize(counts: &BTreeMap<String, f64>, vocab: &mut Vocabulary) -> FeatureVector {
    FeatureVector::from_pairs(counts.iter().map(|(name, &v)| (vocab.intern(name), v)))
}

/// Looks keys up without growing the vocabulary; unknown keys drop out.
pub fn vectorize_frozen(counts: &BTreeMap<String, f64>, vocab: &Vocabulary) -> FeatureVector {
    FeatureVector::from_pairs(
        counts
            .iter()
            .filter_map(|(name, &v)| vocab.lookup(name).map(|id| (id, v))),
    )
}
