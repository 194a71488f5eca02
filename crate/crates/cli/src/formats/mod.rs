//! On-disk formats: corpora, lexicons, scope labels, models, reports.
//!
//! Line-oriented formats (TSV, JSONL, term lists) accept `#` comment lines
//! and skip blank lines. JSON files are written pretty-printed with a
//! trailing newline so they diff cleanly.

pub mod corpus;
pub mod lexicons;
pub mod manifest;
pub mod models;
pub mod reports;
pub mod scopes;
pub mod tensor;

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{CliError, CliResult};

pub(crate) fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::read(path, e))
}

pub(crate) fn write_text(path: &Path, body: &str) -> CliResult<()> {
    std::fs::write(path, body).map_err(|e| CliError::write(path, e))
}

pub(crate) fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut body = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Internal(format!("cannot serialize {}: {e}", path.display())))?;
    body.push('\n');
    write_text(path, &body)
}

pub(crate) fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: malformed json: {e}", path.display())))
}

/// Yields `(line_number, content)` for data lines, skipping blanks and
/// `#` comments. Line numbers are 1-based for error messages.
pub(crate) fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
}

pub(crate) fn tsv_error(path: &Path, lineno: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{}:{lineno}: {msg}", path.display()))
}
