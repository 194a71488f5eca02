//! Scope annotations on disk.
//!
//! Detected scopes are stored as JSONL, one document per line:
//! `{"id": "d1", "labels": [[2, "neg"], [5, "amp"]]}` where each pair is
//! a token index and a modifier kind prefix. Gold scope decisions are a
//! TSV of (document, cue position, emotion-word position, kind, modifies).

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use emoscope_core::lexicon::ModifierKind;
use emoscope_core::scope::{ScopeLabel, ScopePair};

use crate::error::{CliError, CliResult};
use crate::formats::{data_lines, read_text, tsv_error, write_text};

#[derive(Serialize, Deserialize)]
struct ScopeLine {
    id: String,
    labels: Vec<(usize, String)>,
}

pub fn write_scopes(path: &Path, scopes: &BTreeMap<String, ScopeLabel>) -> CliResult<()> {
    let mut body = String::new();
    for (id, label) in scopes {
        let line = ScopeLine {
            id: id.clone(),
            labels: label
                .iter_labeled()
                .map(|(i, k)| (i, k.prefix().to_string()))
                .collect(),
        };
        body.push_str(&serde_json::to_string(&line).map_err(|e| {
            CliError::Internal(format!("cannot serialize scopes for `{id}`: {e}"))
        })?);
        body.push('\n');
    }
    write_text(path, &body)
}

/// Reads scope labels back. `doc_lens` supplies the token count per
/// document so labels can be bounds-checked against the corpus.
pub fn read_scopes(
    path: &Path,
    doc_lens: &BTreeMap<String, usize>,
) -> CliResult<BTreeMap<String, ScopeLabel>> {
    let text = read_text(path)?;
    let mut scopes = BTreeMap::new();
    for (lineno, line) in data_lines(&text) {
        let parsed: ScopeLine = serde_json::from_str(line)
            .map_err(|e| tsv_error(path, lineno, format!("malformed scope line: {e}")))?;
        let len = *doc_lens.get(&parsed.id).ok_or_else(|| {
            tsv_error(path, lineno, format!("document `{}` is not in the corpus", parsed.id))
        })?;
        let mut label = ScopeLabel::empty(len);
        for (pos, prefix) in parsed.labels {
            let kind = ModifierKind::parse(&prefix)
                .ok_or_else(|| tsv_error(path, lineno, format!("unknown kind `{prefix}`")))?;
            if pos >= len {
                return Err(tsv_error(
                    path,
                    lineno,
                    format!("position {pos} out of range for `{}` (len {len})", parsed.id),
                ));
            }
            label.set(pos, kind);
        }
        scopes.insert(parsed.id, label);
    }
    Ok(scopes)
}

/// Reads gold pairs: `doc_id<TAB>cue_pos<TAB>emo_pos<TAB>kind<TAB>modifies`.
pub fn load_pairs(path: &Path) -> CliResult<Vec<ScopePair>> {
    let text = read_text(path)?;
    let mut pairs = Vec::new();
    for (lineno, line) in data_lines(&text) {
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 5 {
            return Err(tsv_error(path, lineno, "expected 5 tab-separated columns"));
        }
        let parse_pos = |col: &str, name: &str| -> CliResult<usize> {
            col.trim()
                .parse()
                .map_err(|_| tsv_error(path, lineno, format!("{name} must be a token index, got `{col}`")))
        };
        let kind = ModifierKind::parse(cols[3].trim())
            .ok_or_else(|| tsv_error(path, lineno, format!("unknown kind `{}`", cols[3])))?;
        let modifies = match cols[4].trim() {
            "1" => true,
            "0" => false,
            other => {
                return Err(tsv_error(path, lineno, format!("modifies must be 0 or 1, got `{other}`")))
            }
        };
        pairs.push(ScopePair {
            doc_id: cols[0].trim().to_string(),
            cue_pos: parse_pos(cols[1], "cue_pos")?,
            emo_pos: parse_pos(cols[2], "emo_pos")?,
            kind,
            modifies,
        });
    }
    if pairs.is_empty() {
        return Err(CliError::Input(format!("{}: no pairs loaded", path.display())));
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scopes_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scopes.jsonl");
        let mut scopes = BTreeMap::new();
        let mut label = ScopeLabel::empty(4);
        label.set(1, ModifierKind::Negation);
        label.set(3, ModifierKind::Downtoner);
        scopes.insert("d1".to_string(), label);
        scopes.insert("d2".to_string(), ScopeLabel::empty(2));
        write_scopes(&path, &scopes).unwrap();

        let lens = BTreeMap::from([("d1".to_string(), 4), ("d2".to_string(), 2)]);
        let back = read_scopes(&path, &lens).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back["d1"].get(1), Some(ModifierKind::Negation));
        assert_eq!(back["d1"].get(3), Some(ModifierKind::Downtoner));
        assert_eq!(back["d1"].get(0), None);
        assert_eq!(back["d2"].labeled_count(), 0);
    }

    #[test]
    fn out_of_range_position_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scopes.jsonl");
        std::fs::write(&path, "{\"id\":\"d1\",\"labels\":[[9,\"neg\"]]}\n").unwrap();
        let lens = BTreeMap::from([("d1".to_string(), 3)]);
        let err = read_scopes(&path, &lens).unwrap_err();
        assert!(err.to_string().contains("out of range"));
    }

    #[test]
    fn pairs_parse_and_validate() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("gold.tsv");
        std::fs::write(&path, "# header comment\nd1\t2\t4\tneg\t1\nd1\t2\t5\tamp\t0\n").unwrap();
        let pairs = load_pairs(&path).unwrap();
        assert_eq!(pairs.len(), 2);
        assert!(pairs[0].modifies);
        assert_eq!(pairs[1].kind, ModifierKind::Amplifier);

        std::fs::write(&path, "d1\t2\t4\tneg\tyes\n").unwrap();
        assert!(load_pairs(&path).is_err());
    }
}
