//! CoNLL-U parsing into [`Document`]s.
//!
//! `# newdoc id = ...` comments group sentences into documents; corpora
//! without them yield one document per sentence block. An optional
//! `# emotion = ...` comment attaches a gold label to the document.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::document::{Document, Token};
use crate::emotion::Emotion;
use crate::{Error, Result};

#[derive(Debug, Default)]
struct Block {
    first_token_line: usize,
    newdoc: Option<Option<String>>,
    sent_id: Option<String>,
    emotion: Option<Emotion>,
    tokens: Vec<Token>,
}

impl Block {
    fn is_blank(&self) -> bool {
        self.newdoc.is_none() && self.sent_id.is_none() && self.emotion.is_none()
            && self.tokens.is_empty()
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::ConlluParse { line, message: message.into() }
}

fn parse_comment(block: &mut Block, line_no: usize, line: &str) -> Result<()> {
    let body = line.trim_start_matches('#').trim();
    let (key, value) = match body.split_once('=') {
        Some((k, v)) => (k.trim(), Some(v.trim())),
        None => (body, None),
    };
    match key {
        "newdoc id" | "newdoc" => {
            block.newdoc = Some(value.filter(|v| !v.is_empty()).map(str::to_string));
        }
        "sent_id" => block.sent_id = value.map(str::to_string),
        "emotion" => {
            let name = value.unwrap_or("");
            block.emotion = Some(
                Emotion::parse(name)
                    .ok_or_else(|| parse_err(line_no, format!("unknown emotion {name:?}")))?,
            );
        }
        _ => {}
    }
    Ok(())
}

fn parse_token_line(block: &mut Block, line_no: usize, line: &str) -> Result<()> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 10 {
        return Err(parse_err(
            line_no,
            format!("expected 10 tab-separated columns, found {}", cols.len()),
        ));
    }
    // Multiword-token ranges and empty nodes carry no tree structure.
    if cols[0].contains('-') || cols[0].contains('.') {
        return Ok(());
    }
    let id: usize = cols[0]
        .parse()
        .map_err(|_| parse_err(line_no, format!("invalid token id {:?}", cols[0])))?;
    if id != block.tokens.len() + 1 {
        return Err(parse_err(line_no, format!("token id {id} out of sequence")));
    }
    if cols[1].is_empty() {
        return Err(parse_err(line_no, "empty FORM column"));
    }
    let pos = match (cols[4], cols[3]) {
        ("_", "_") => "",
        ("_", upos) => upos,
        (xpos, _) => xpos,
    };
    let head = match cols[6] {
        "_" => None,
        raw => Some(
            raw.parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("invalid head {raw:?}")))?,
        ),
    };
    if block.tokens.is_empty() {
        block.first_token_line = line_no;
    }
    block.tokens.push(Token {
        id,
        surface: cols[1].to_string(),
        normalized: cols[1].to_lowercase(),
        pos: pos.to_string(),
        head,
        deprel: if cols[7] == "_" { String::new() } else { cols[7].to_string() },
    });
    Ok(())
}

fn collect_blocks(input: &str) -> Result<Vec<Block>> {
    let mut blocks = Vec::new();
    let mut current = Block::default();
    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            if !current.is_blank() {
                blocks.push(core::mem::take(&mut current));
            }
        } else if line.starts_with('#') {
            // A newdoc comment implies a sentence boundary even without
            // a blank line.
            if line.trim_start_matches('#').trim_start().starts_with("newdoc")
                && !current.tokens.is_empty()
            {
                blocks.push(core::mem::take(&mut current));
            }
            parse_comment(&mut current, line_no, line)?;
        } else {
            parse_token_line(&mut current, line_no, line)?;
        }
    }
    if !current.is_blank() {
        blocks.push(current);
    }
    Ok(blocks)
}

struct DocBuilder {
    id: String,
    label: Option<Emotion>,
    tokens: Vec<Token>,
    sentences: Vec<(usize, usize)>,
    first_line: usize,
}

impl DocBuilder {
    fn new(id: String, first_line: usize) -> DocBuilder {
        DocBuilder { id, label: None, tokens: Vec::new(), sentences: Vec::new(), first_line }
    }

    fn push_block(&mut self, block: Block) {
        if self.label.is_none() {
            self.label = block.emotion;
        }
        if !block.tokens.is_empty() {
            let start = self.tokens.len();
            self.tokens.extend(block.tokens);
            self.sentences.push((start, self.tokens.len()));
        }
    }

    fn build(self) -> Result<Document> {
        let line = self.first_line;
        Document::new(self.id, self.tokens, self.sentences, self.label)
            .map_err(|e| parse_err(line, format!("{e}")))
    }
}

/// Parses a whole CoNLL-U file. Empty input yields no documents.
pub fn parse_conllu(input: &str) -> Result<Vec<Document>> {
    let blocks = collect_blocks(input)?;
    let mut docs: Vec<DocBuilder> = Vec::new();
    let mut newdoc_count = 0;
    let mut sentence_count = 0;
    for block in blocks {
        if block.tokens.is_empty() && block.newdoc.is_none() {
            continue;
        }
        let open_doc = match &block.newdoc {
            Some(id) => {
                newdoc_count += 1;
                let id = id.clone().unwrap_or_else(|| format!("doc{newdoc_count}"));
                docs.push(DocBuilder::new(id, block.first_token_line.max(1)));
                true
            }
            // Sentences before any newdoc stand alone.
            None => newdoc_count > 0,
        };
        if !open_doc {
            sentence_count += 1;
            let id = block.sent_id.clone().unwrap_or_else(|| format!("s{sentence_count}"));
            docs.push(DocBuilder::new(id, block.first_token_line.max(1)));
        }
        docs.last_mut().unwrap().push_block(block);
    }
    docs.into_iter().map(DocBuilder::build).collect()
}
