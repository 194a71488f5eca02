use alloc::string::String;

use crate::lexicon::ModifierKind;

/// Unified error type for the core crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    ConlluParse { line: usize, message: String },

    #[error("document {id}: {message}")]
    InvalidDocument { id: String, message: String },

    #[error("document {id}: dependency information required but absent")]
    MissingDependencies { id: String },

    #[error("unknown document id {id}")]
    UnknownDocument { id: String },

    #[error("usage sample for {term} contains no occurrences")]
    EmptyUsageSample { term: String },

    #[error("no usage sample for candidate {term}")]
    MissingUsageSample { term: String },

    #[error("no model for modifier kind {0}")]
    MissingScopeModel(ModifierKind),

    #[error("training data is empty")]
    EmptyTrainingData,

    #[error("training data contains a single class")]
    SingleClassTrainingData,

    #[error("invalid hyperparameter: {0}")]
    InvalidHyper(String),

    #[error("invalid split ratios: {0}")]
    InvalidRatios(String),

    #[error("document {id} has no label")]
    UnlabeledDocument { id: String },

    #[error("not enough qualifying training documents: {0}")]
    InsufficientClassDocs(String),

    #[error("scope position {position} outside document of {len} tokens")]
    ScopePosition { position: usize, len: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("nothing to evaluate")]
    EmptyEvaluation,

    #[error("incompatible schemas: {0}")]
    SchemaMismatch(String),

    #[error("invalid vocabulary: {0}")]
    InvalidVocabulary(String),
}
