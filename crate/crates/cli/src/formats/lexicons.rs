//! Lexicon files: cue term lists, emotion associations, hashtag maps,
//! and usage samples.

use std::collections::BTreeMap;
use std::path::Path;

use emoscope_core::emotion::Emotion;
use emoscope_core::lexicon::{CueCandidate, CueLexicon, EmotionLexicon, ModifierKind, UsageSample};
use emoscope_core::text::HashtagMap;

use crate::error::CliResult;
use crate::formats::{data_lines, read_text, tsv_error};

pub(crate) fn parse_terms(text: &str, origin: &Path) -> CliResult<Vec<String>> {
    let mut terms = Vec::new();
    for (lineno, line) in data_lines(text) {
        let term = line.trim();
        if term.chars().any(char::is_whitespace) {
            return Err(tsv_error(origin, lineno, "terms must be single tokens"));
        }
        terms.push(term.to_lowercase());
    }
    Ok(terms)
}

/// Reads a plain term list, one lowercase term per line.
pub fn load_terms(path: &Path) -> CliResult<Vec<String>> {
    let text = read_text(path)?;
    parse_terms(&text, path)
}

/// Builds a cue lexicon from one term list per modifier kind.
pub fn load_cue_lexicon(
    negations: &Path,
    amplifiers: &Path,
    downtoners: &Path,
) -> CliResult<CueLexicon> {
    let mut cues = CueLexicon::new();
    for (path, kind) in [
        (negations, ModifierKind::Negation),
        (amplifiers, ModifierKind::Amplifier),
        (downtoners, ModifierKind::Downtoner),
    ] {
        for term in load_terms(path)? {
            cues.insert(term, kind);
        }
    }
    Ok(cues)
}

/// Builds the candidate list for cue filtering from one term list per
/// kind plus an optional list of trusted terms that skip the ratio test.
pub fn load_candidates(
    negations: &Path,
    amplifiers: &Path,
    downtoners: &Path,
    trusted: Option<&Path>,
) -> CliResult<Vec<CueCandidate>> {
    let trusted: std::collections::BTreeSet<String> = match trusted {
        Some(path) => load_terms(path)?.into_iter().collect(),
        None => Default::default(),
    };
    let mut candidates = Vec::new();
    for (path, kind) in [
        (negations, ModifierKind::Negation),
        (amplifiers, ModifierKind::Amplifier),
        (downtoners, ModifierKind::Downtoner),
    ] {
        for term in load_terms(path)? {
            let is_trusted = trusted.contains(&term);
            candidates.push(CueCandidate { term, kind, trusted: is_trusted });
        }
    }
    Ok(candidates)
}

pub(crate) fn parse_emotion_lexicon(text: &str, origin: &Path) -> CliResult<EmotionLexicon> {
    let mut lexicon = EmotionLexicon::new();
    for (lineno, line) in data_lines(text) {
        let mut parts = line.split('\t');
        let (word, affect, flag) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(w), Some(a), Some(f), None) => (w, a, f),
            _ => return Err(tsv_error(origin, lineno, "expected 3 tab-separated columns")),
        };
        if flag != "0" && flag != "1" {
            return Err(tsv_error(origin, lineno, format!("flag must be 0 or 1, got `{flag}`")));
        }
        if flag == "1" {
            if let Some(emotion) = Emotion::parse(affect) {
                lexicon.insert(&word.to_lowercase(), emotion);
            }
        }
    }
    Ok(lexicon)
}

/// Reads an association-style emotion lexicon: `word<TAB>affect<TAB>flag`.
/// Rows with flag `1` and one of the six emotion names are kept; other
/// affect categories pass through unused. An empty lexicon is legal.
pub fn load_emotion_lexicon(path: &Path) -> CliResult<EmotionLexicon> {
    let text = read_text(path)?;
    parse_emotion_lexicon(&text, path)
}

/// Reads a hashtag-to-emotion map: `tag<TAB>emotion`. A leading `#` on the
/// tag is tolerated and stripped.
pub fn load_hashtag_map(path: &Path) -> CliResult<HashtagMap> {
    let text = read_text(path)?;
    let mut map = HashtagMap::new();
    for (lineno, line) in data_lines(&text) {
        let (tag, name) = line
            .split_once('\t')
            .ok_or_else(|| tsv_error(path, lineno, "expected `tag<TAB>emotion`"))?;
        let tag = tag.trim().trim_start_matches('#').to_lowercase();
        let emotion = Emotion::parse(name.trim())
            .ok_or_else(|| tsv_error(path, lineno, format!("unknown emotion `{}`", name.trim())))?;
        if tag.is_empty() {
            return Err(tsv_error(path, lineno, "empty hashtag"));
        }
        map.insert(tag, emotion);
    }
    Ok(map)
}

/// Reads annotated usage samples: `term<TAB>doc_id<TAB>0|1`, one row per
/// sampled occurrence, grouped per term on load.
pub fn load_usage_samples(path: &Path) -> CliResult<BTreeMap<String, UsageSample>> {
    let text = read_text(path)?;
    let mut samples: BTreeMap<String, UsageSample> = BTreeMap::new();
    for (lineno, line) in data_lines(&text) {
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 3 {
            return Err(tsv_error(path, lineno, "expected `term<TAB>doc_id<TAB>0|1`"));
        }
        let hit = match cols[2].trim() {
            "1" => true,
            "0" => false,
            other => {
                return Err(tsv_error(path, lineno, format!("flag must be 0 or 1, got `{other}`")))
            }
        };
        let term = cols[0].trim().to_lowercase();
        samples
            .entry(term.clone())
            .or_insert_with(|| UsageSample { term, occurrences: Vec::new() })
            .occurrences
            .push((cols[1].trim().to_string(), hit));
    }
    Ok(samples)
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
    fn emotion_lexicon_keeps_flagged_emotion_rows_only() {
        let (_dir, path) = write_tmp(
            "emo.tsv",
            "hate\tanger\t1\nhate\tdisgust\t1\nhate\tjoy\t0\nhate\tnegative\t1\ncalm\tpositive\t1\nglee\tjoy\t1\n",
        );
        let lex = load_emotion_lexicon(&path).unwrap();
        let hate = lex.emotions_of("hate").unwrap();
        assert!(hate.contains(&Emotion::Anger) && hate.contains(&Emotion::Disgust));
        assert_eq!(hate.len(), 2);
        assert!(lex.emotions_of("calm").is_none());
        assert!(lex.emotions_of("glee").is_some());
    }

    #[test]
    fn empty_emotion_lexicon_is_legal() {
        let (_dir, path) = write_tmp("emo.tsv", "");
        let lex = load_emotion_lexicon(&path).unwrap();
        assert!(lex.is_empty());
    }

    #[test]
    fn usage_samples_group_rows_per_term() {
        let (_dir, path) = write_tmp("s.tsv", "not\td1\t1\nnot\td2\t0\nnot\td3\t1\n");
        let samples = load_usage_samples(&path).unwrap();
        assert_eq!(samples.len(), 1);
        let sample = &samples["not"];
        assert_eq!(sample.occurrences.len(), 3);
        assert_eq!(sample.occurrences[1], ("d2".to_string(), false));
        assert_eq!(sample.modifier_ratio().unwrap(), 2.0 / 3.0);
    }

    #[test]
    fn candidates_honor_the_trusted_list() {
        let dir = tempfile::tempdir().unwrap();
        let neg = dir.path().join("neg.txt");
        let amp = dir.path().join("amp.txt");
        let down = dir.path().join("down.txt");
        let trusted = dir.path().join("trusted.txt");
        std::fs::write(&neg, "not\nnever\n").unwrap();
        std::fs::write(&amp, "very\n").unwrap();
        std::fs::write(&down, "barely\n").unwrap();
        std::fs::write(&trusted, "not\nbarely\n").unwrap();
        let cands = load_candidates(&neg, &amp, &down, Some(&trusted)).unwrap();
        assert_eq!(cands.len(), 4);
        let by_term: BTreeMap<&str, &CueCandidate> =
            cands.iter().map(|c| (c.term.as_str(), c)).collect();
        assert!(by_term["not"].trusted);
        assert!(!by_term["never"].trusted);
        assert!(!by_term["very"].trusted);
        assert!(by_term["barely"].trusted);
        assert_eq!(by_term["barely"].kind, ModifierKind::Downtoner);
    }

    #[test]
    fn term_list_rejects_multiword_lines() {
        let (_dir, path) = write_tmp("n.txt", "not\nno way\n");
        let err = load_terms(&path).unwrap_err();
        assert!(err.to_string().contains(":2:"));
    }
}
