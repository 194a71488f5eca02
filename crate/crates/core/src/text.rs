//! Tweet-style text normalization, self-labeling, and tokenization.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::emotion::Emotion;

pub const URL_TOKEN: &str = "<url>";
pub const USER_TOKEN: &str = "<user>";
pub const HASHTAG_TOKEN: &str = "<hashtag>";

/// Hashtag (lowercase, without `#`) to the emotion it stands for.
pub type HashtagMap = BTreeMap<String, Emotion>;

fn is_url_chunk(chunk: &str) -> bool {
    let lower = chunk.to_ascii_lowercase();
    lower.starts_with("http://") || lower.starts_with("https://") || lower.starts_with("www.")
}

fn is_mention_chunk(chunk: &str) -> bool {
    let mut chars = chunk.chars();
    chars.next() == Some('@') && chars.next().is_some_and(|c| c.is_alphanumeric() || c == '_')
}

/// Tag part of a hashtag chunk: the leading run of word characters after `#`.
fn hashtag_tag(chunk: &str) -> Option<&str> {
    let rest = chunk.strip_prefix('#')?;
    let end = rest
        .char_indices()
        .find(|(_, c)| !(c.is_alphanumeric() || *c == '_'))
        .map_or(rest.len(), |(i, _)| i);
    if end == 0 {
        None
    } else {
        Some(&rest[..end])
    }
}

/// Lowercases, collapses whitespace, and replaces URLs, mentions, and
/// hashtags with the `<url>`, `<user>`, and `<hashtag>` placeholders.
/// Idempotent: placeholders are fixed points.
pub fn normalize_text(raw: &str) -> String {
    let mut out = String::new();
    for chunk in raw.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        if is_url_chunk(chunk) {
            out.push_str(URL_TOKEN);
        } else if is_mention_chunk(chunk) {
            out.push_str(USER_TOKEN);
        } else if hashtag_tag(chunk).is_some() {
            out.push_str(HASHTAG_TOKEN);
        } else {
            out.push_str(&chunk.to_lowercase());
        }
    }
    out
}

/// Distant labeling by hashtag. Returns the normalized text with the
/// label-bearing hashtags removed, plus the label, when the hashtags in
/// `raw` map to exactly one emotion. Returns `None` when they map to
/// zero or to several.
pub fn self_label(raw: &str, map: &HashtagMap) -> Option<(String, Emotion)> {
    let mut found: BTreeSet<Emotion> = BTreeSet::new();
    let mut kept = String::new();
    for chunk in raw.split_whitespace() {
        let mut keep: &str = chunk;
        if let Some(tag) = hashtag_tag(chunk) {
            if let Some(&emotion) = map.get(&tag.to_lowercase()) {
                found.insert(emotion);
                // Delete the hashtag itself; trailing punctuation survives.
                keep = &chunk[1 + tag.len()..];
            }
        }
        if !keep.is_empty() {
            if !kept.is_empty() {
                kept.push(' ');
            }
            kept.push_str(keep);
        }
    }
    if found.len() == 1 {
        let emotion = *found.iter().next().unwrap();
        Some((normalize_text(&kept), emotion))
    } else {
        None
    }
}

fn is_separable(c: char) -> bool {
    c.is_ascii_punctuation() || c == '\u{2014}' || c == '\u{2026}'
}

/// Whitespace tokenization with leading/trailing punctuation split off.
/// Word-internal punctuation (don't, by-product) is left alone, and the
/// normalization placeholders are kept whole.
pub fn tokenize_raw(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for chunk in text.split_whitespace() {
        if chunk == URL_TOKEN || chunk == USER_TOKEN || chunk == HASHTAG_TOKEN {
            tokens.push(chunk.to_owned());
            continue;
        }
        let mut rest = chunk;
        let mut lead: Vec<String> = Vec::new();
        while let Some(c) = rest.chars().next() {
            if !is_separable(c) {
                break;
            }
            lead.push(c.to_string());
            rest = &rest[c.len_utf8()..];
        }
        let mut trail: Vec<String> = Vec::new();
        while let Some(c) = rest.chars().next_back() {
            if !is_separable(c) {
                break;
            }
            trail.push(c.to_string());
            rest = &rest[..rest.len() - c.len_utf8()];
        }
        tokens.extend(lead);
        if !rest.is_empty() {
            tokens.push(rest.to_owned());
        }
        tokens.extend(trail.into_iter().rev());
    }
    tokens
}
