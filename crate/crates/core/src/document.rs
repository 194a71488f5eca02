//! Documents as flat token sequences with sentence spans and optional
//! dependency structure.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::emotion::Emotion;
use crate::text::tokenize_raw;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// 1-based position within the sentence, as in CoNLL-U.
    pub id: usize,
    pub surface: String,
    /// Lowercased surface; all lexicon lookups go through this.
    pub normalized: String,
    /// XPOS when present, UPOS otherwise, empty when untagged.
    pub pos: String,
    /// Sentence-local head id; `Some(0)` marks the root, `None` means the
    /// sentence carries no dependency information at all.
    pub head: Option<usize>,
    pub deprel: String,
}

impl Token {
    pub fn word(id: usize, surface: &str) -> Token {
        Token {
            id,
            surface: surface.to_string(),
            normalized: surface.to_lowercase(),
            pos: String::new(),
            head: None,
            deprel: String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub tokens: Vec<Token>,
    /// Half-open token ranges; they partition `0..tokens.len()`.
    pub sentences: Vec<(usize, usize)>,
    pub label: Option<Emotion>,
}

impl Document {
    pub fn new(
        id: String,
        tokens: Vec<Token>,
        sentences: Vec<(usize, usize)>,
        label: Option<Emotion>,
    ) -> Result<Document> {
        let doc = Document { id, tokens, sentences, label };
        doc.validate()?;
        Ok(doc)
    }

    /// Builds an unparsed single-sentence document from normalized text.
    pub fn from_raw_text(id: &str, text: &str, label: Option<Emotion>) -> Document {
        let tokens: Vec<Token> = tokenize_raw(text)
            .iter()
            .enumerate()
            .map(|(i, t)| Token::word(i + 1, t))
            .collect();
        let sentences = if tokens.is_empty() { Vec::new() } else { alloc::vec![(0, tokens.len())] };
        Document { id: id.to_string(), tokens, sentences, label }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// True when every sentence has dependency heads.
    pub fn has_dependencies(&self) -> bool {
        !self.tokens.is_empty() && self.tokens.iter().all(|t| t.head.is_some())
    }

    pub fn sentence_span_of(&self, pos: usize) -> (usize, usize) {
        *self
            .sentences
            .iter()
            .find(|(start, end)| *start <= pos && pos < *end)
            .expect("position out of sentence bounds")
    }

    /// Flat position of the head of `pos`; `None` for roots and for
    /// tokens without dependency information.
    pub fn head_position(&self, pos: usize) -> Option<usize> {
        let (start, _) = self.sentence_span_of(pos);
        match self.tokens[pos].head {
            Some(0) | None => None,
            Some(h) => Some(start + h - 1),
        }
    }

    /// Flat positions of the dependents of `pos`, in order.
    pub fn child_positions(&self, pos: usize) -> Vec<usize> {
        let (start, end) = self.sentence_span_of(pos);
        let own_id = self.tokens[pos].id;
        (start..end)
            .filter(|&p| p != pos && self.tokens[p].head == Some(own_id))
            .collect()
    }

    fn err(&self, message: String) -> Error {
        Error::InvalidDocument { id: self.id.clone(), message }
    }

    pub fn validate(&self) -> Result<()> {
        let mut expected_start = 0;
        for &(start, end) in &self.sentences {
            if start != expected_start || start >= end {
                return Err(self.err(format!("bad sentence span ({start}, {end})")));
            }
            expected_start = end;
        }
        if expected_start != self.tokens.len() {
            return Err(self.err("sentence spans do not cover all tokens".to_string()));
        }
        for &(start, end) in &self.sentences {
            self.validate_sentence(start, end)?;
        }
        Ok(())
    }

    fn validate_sentence(&self, start: usize, end: usize) -> Result<()> {
        let len = end - start;
        let tokens = &self.tokens[start..end];
        let mut roots = 0;
        let with_heads = tokens.iter().filter(|t| t.head.is_some()).count();
        if with_heads != 0 && with_heads != len {
            return Err(self.err("sentence mixes tokens with and without heads".to_string()));
        }
        for (offset, token) in tokens.iter().enumerate() {
            if token.normalized.is_empty() {
                return Err(self.err(format!("empty token at position {}", start + offset)));
            }
            if token.id != offset + 1 {
                return Err(self.err(format!("non-sequential token id {}", token.id)));
            }
            match token.head {
                None => {}
                Some(0) => roots += 1,
                Some(h) => {
                    if h > len {
                        return Err(self.err(format!("head {h} outside sentence of {len}")));
                    }
                    if h == token.id {
                        return Err(self.err(format!("token {} is its own head", token.id)));
                    }
                }
            }
        }
        if with_heads > 0 {
            if roots != 1 {
                return Err(self.err(format!("{roots} roots in sentence")));
            }
            // Every head chain must reach the root: rules out cycles.
            for offset in 0..len {
                let mut cursor = start + offset;
                let mut steps = 0;
                while let Some(up) = self.head_position(cursor) {
                    cursor = up;
                    steps += 1;
                    if steps > len {
                        return Err(self.err("dependency cycle".to_string()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Index documents by id; later duplicates win, callers that care about
/// duplicates should check lengths.
pub fn index_documents(docs: &[Document]) -> BTreeMap<&str, &Document> {
    docs.iter().map(|d| (d.id.as_str(), d)).collect()
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;

    /// Parsed sentence builder: `(surface, pos, head, deprel)` per token.
    pub fn parsed_doc(id: &str, sentences: &[&[(&str, &str, usize, &str)]]) -> Document {
        let mut tokens = Vec::new();
        let mut spans = Vec::new();
        for sentence in sentences {
            let start = tokens.len();
            for (i, (surface, pos, head, deprel)) in sentence.iter().enumerate() {
                tokens.push(Token {
                    id: i + 1,
                    surface: surface.to_string(),
                    normalized: surface.to_lowercase(),
                    pos: pos.to_string(),
                    head: Some(*head),
                    deprel: deprel.to_string(),
                });
            }
            spans.push((start, tokens.len()));
        }
        Document::new(id.to_string(), tokens, spans, None).unwrap()
    }
}
