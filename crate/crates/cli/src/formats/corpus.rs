//! Corpus loading.
//!
//! Two input shapes are supported and told apart by file extension:
//!
//! * `.jsonl`: one document per line, `{"id": ..., "text": ..., "label"?: ...}`.
//!   Text is normalized and tokenized on load; these documents carry no
//!   dependency trees.
//! * `.conllu`: parsed documents with POS tags and dependency heads.

use std::path::Path;

use serde::Deserialize;

use emoscope_core::conllu::parse_conllu;
use emoscope_core::document::Document;
use emoscope_core::emotion::Emotion;
use emoscope_core::text::{normalize_text, self_label, HashtagMap};

use crate::error::{CliError, CliResult};
use crate::formats::{data_lines, read_text, tsv_error};

#[derive(Deserialize)]
struct RawDoc {
    id: String,
    text: String,
    #[serde(default)]
    label: Option<String>,
}

/// Loads a raw JSONL corpus. When `hashtags` is given, unlabeled documents
/// are self-labeled from their hashtags; those without exactly one distinct
/// mapped emotion are dropped.
pub fn load_raw(path: &Path, hashtags: Option<&HashtagMap>) -> CliResult<Vec<Document>> {
    let text = read_text(path)?;
    let mut docs = Vec::new();
    let mut dropped = 0usize;
    for (lineno, line) in data_lines(&text) {
        let raw: RawDoc = serde_json::from_str(line)
            .map_err(|e| tsv_error(path, lineno, format!("malformed document: {e}")))?;
        if raw.id.is_empty() {
            return Err(tsv_error(path, lineno, "document id must not be empty"));
        }
        let label = match raw.label {
            Some(name) => Some(Emotion::parse(&name).ok_or_else(|| {
                tsv_error(path, lineno, format!("unknown emotion label `{name}`"))
            })?),
            None => None,
        };
        let (body, label) = match (label, hashtags) {
            // An explicit label wins over hashtag inference.
            (Some(label), _) => (raw.text, Some(label)),
            (None, Some(map)) => match self_label(&raw.text, map) {
                Some((stripped, label)) => (stripped, Some(label)),
                None => {
                    dropped += 1;
                    continue;
                }
            },
            (None, None) => (raw.text, None),
        };
        docs.push(Document::from_raw_text(&raw.id, &normalize_text(&body), label));
    }
    if dropped > 0 {
        log::info!("dropped {dropped} documents without a usable hashtag label");
    }
    if docs.is_empty() {
        return Err(CliError::Input(format!(
            "{}: no documents loaded",
            path.display()
        )));
    }
    Ok(docs)
}

pub fn load_conllu(path: &Path) -> CliResult<Vec<Document>> {
    let text = read_text(path)?;
    let docs = parse_conllu(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(docs)
}

/// Dispatches on extension: `.conllu` is parsed, anything else is treated
/// as raw JSONL.
pub fn load_corpus(path: &Path, hashtags: Option<&HashtagMap>) -> CliResult<Vec<Document>> {
    let is_conllu = path
        .extension()
        .map(|e| e.eq_ignore_ascii_case("conllu"))
        .unwrap_or(false);
    if is_conllu {
        load_conllu(path)
    } else {
        load_raw(path, hashtags)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(name: &str, body: &str) -> (tempfile::TempDir, std::path::PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(body.as_bytes()).unwrap();
        (dir, path)
    }

    #[test]
    fn raw_corpus_normalizes_and_labels() {
        let (_dir, path) = write_tmp(
            "c.jsonl",
            r#"{"id": "a", "text": "I am SO happy http://x.co", "label": "joy"}
{"id": "b", "text": "plain"}
"#,
        );
        let docs = load_raw(&path, None).unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[0].label, Some(Emotion::Joy));
        let words: Vec<&str> = docs[0].tokens.iter().map(|t| t.normalized.as_str()).collect();
        assert_eq!(words, ["i", "am", "so", "happy", "<url>"]);
        assert_eq!(docs[1].label, None);
    }

    #[test]
    fn hashtag_fallback_drops_unresolvable_docs() {
        let (_dir, path) = write_tmp(
            "c.jsonl",
            r#"{"id": "a", "text": "what a day #angry"}
{"id": "b", "text": "no tags here"}
"#,
        );
        let mut map = HashtagMap::new();
        map.insert("angry".into(), Emotion::Anger);
        let docs = load_raw(&path, Some(&map)).unwrap();
        assert_eq!(docs.len(), 1);
        assert_eq!(docs[0].id, "a");
        assert_eq!(docs[0].label, Some(Emotion::Anger));
    }

    #[test]
    fn bad_label_points_at_the_line() {
        let (_dir, path) = write_tmp(
            "c.jsonl",
            "{\"id\": \"a\", \"text\": \"x\", \"label\": \"meh\"}\n",
        );
        let err = load_raw(&path, None).unwrap_err();
        assert!(err.to_string().contains(":1:"));
        assert!(err.to_string().contains("meh"));
    }

    #[test]
    fn extension_dispatch() {
        let (_dir, path) = write_tmp(
            "c.conllu",
            "# sent_id = s1\n1\tok\tok\tNOUN\t_\t_\t0\troot\t_\t_\n",
        );
        let docs = load_corpus(&path, None).unwrap();
        assert_eq!(docs.len(), 1);
        assert!(docs[0].has_dependencies());
    }
}
