//! TEI XML and plain-text document readers.

use std::borrow::Cow;

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use super::normalize::nfc;
use super::segment::segment_sentences;
use super::{Document, Language, Sentence};
use crate::error::{Error, Result};

/// Subtrees dropped from the running text: apparatus, notes and editorial
/// labels.
const DROPPED: &[&str] =
    &["note", "app", "del", "sic", "orig", "abbr", "head", "bibl", "speaker", "label", "fw", "figure", "teiHeader"];

/// Elements whose boundaries separate words.
const BLOCKS: &[&str] = &["p", "l", "lg", "ab", "sp", "lb", "pb", "cb", "milestone", "quote", "body", "text"];

/// Caller-supplied metadata. `Some` fields win over the TEI header.
#[derive(Debug, Clone, Default)]
pub struct DocumentDefaults {
    pub id: String,
    pub language: Option<Language>,
    pub author: Option<String>,
    pub title: Option<String>,
    pub genre: Option<String>,
}

impl DocumentDefaults {
    pub fn new(id: impl Into<String>) -> Self {
        DocumentDefaults { id: id.into(), ..Default::default() }
    }
}

#[derive(Default)]
struct Header {
    title: Option<String>,
    author: Option<String>,
    genre: Option<String>,
    language: Option<Language>,
    title_done: bool,
    author_done: bool,
}

fn local_name(e: &BytesStart<'_>) -> String {
    String::from_utf8_lossy(e.local_name().as_ref()).into_owned()
}

fn lang_attr(e: &BytesStart<'_>, key: &[u8]) -> Option<Language> {
    e.attributes()
        .flatten()
        .find(|a| a.key.as_ref() == key)
        .and_then(|a| Language::from_code(&String::from_utf8_lossy(&a.value)))
}

fn resolve_entity(name: &str) -> Option<&'static str> {
    Some(match name {
        "mdash" => "—",
        "ndash" => "–",
        "nbsp" => " ",
        "lsquo" => "‘",
        "rsquo" => "’",
        "ldquo" => "“",
        "rdquo" => "”",
        "dagger" => "†",
        "lt" => "<",
        "gt" => ">",
        "amp" => "&",
        "quot" => "\"",
        "apos" => "'",
        _ => return None,
    })
}

fn xml_error(reader: &Reader<&[u8]>, err: impl std::fmt::Display) -> Error {
    Error::Xml { offset: reader.error_position(), message: err.to_string() }
}

/// Parses a TEI document: header metadata, then the running text of
/// `<text>` with notes and apparatus removed, segmented into sentences.
pub fn parse_tei_document(bytes: &[u8], defaults: &DocumentDefaults) -> Result<Document> {
    let body = bytes.strip_prefix(b"\xEF\xBB\xBF").unwrap_or(bytes);
    match body.iter().find(|b| !b.is_ascii_whitespace()) {
        Some(b'<') => {}
        Some(_) => return Err(Error::NotXml),
        None => return Err(Error::EmptyDocument(defaults.id.clone())),
    }

    let mut reader = Reader::from_reader(body);
    reader.config_mut().check_end_names = true;

    let mut header = Header::default();
    let mut stack: Vec<String> = Vec::new();
    let mut dropped_depth: Option<usize> = None;
    let mut text = String::new();
    let mut text_lang: Option<Language> = None;
    let mut root_lang: Option<Language> = None;

    loop {
        let event = reader.read_event().map_err(|e| xml_error(&reader, e))?;
        match event {
            Event::Start(e) => {
                let name = local_name(&e);
                on_open(&e, &name, &stack, &mut header, &mut text_lang, &mut root_lang);
                if BLOCKS.contains(&name.as_str()) || name.starts_with("div") {
                    text.push(' ');
                }
                stack.push(name.clone());
                if dropped_depth.is_none() && DROPPED.contains(&name.as_str()) {
                    dropped_depth = Some(stack.len());
                }
            }
            Event::Empty(e) => {
                let name = local_name(&e);
                on_open(&e, &name, &stack, &mut header, &mut text_lang, &mut root_lang);
                if BLOCKS.contains(&name.as_str()) || name.starts_with("div") {
                    text.push(' ');
                }
            }
            Event::End(_) => {
                if dropped_depth == Some(stack.len()) {
                    dropped_depth = None;
                }
                if let Some(name) = stack.pop() {
                    match name.as_str() {
                        "title" => header.title_done = header.title.is_some(),
                        "author" => header.author_done = header.author.is_some(),
                        _ => {}
                    }
                    if BLOCKS.contains(&name.as_str()) || name.starts_with("div") {
                        text.push(' ');
                    }
                }
            }
            Event::Text(t) => {
                let raw = t
                    .unescape_with(resolve_entity)
                    .unwrap_or_else(|_| Cow::Owned(String::from_utf8_lossy(t.as_ref()).into_owned()));
                on_text(&raw, &stack, &mut header);
                if dropped_depth.is_none() && stack.iter().any(|n| n == "text") {
                    text.push_str(&raw);
                }
            }
            Event::CData(t) => {
                if dropped_depth.is_none() && stack.iter().any(|n| n == "text") {
                    text.push_str(&String::from_utf8_lossy(&t));
                }
            }
            Event::Eof => break,
            _ => {}
        }
    }
    if let Some(open) = stack.last() {
        return Err(Error::Xml { offset: reader.buffer_position(), message: format!("unclosed element <{open}>") });
    }

    let language = defaults
        .language
        .or(text_lang)
        .or(header.language)
        .or(root_lang)
        .ok_or_else(|| Error::MissingLanguage(defaults.id.clone()))?;
    let sentences = segment_sentences(&nfc(&text), language);
    if sentences.is_empty() {
        return Err(Error::EmptyDocument(defaults.id.clone()));
    }
    Ok(Document {
        id: defaults.id.clone(),
        language,
        author: pick(&defaults.author, header.author, "unknown"),
        title: pick(&defaults.title, header.title, &defaults.id),
        genre: pick(&defaults.genre, header.genre, "unknown"),
        sentences,
    })
}

fn pick(explicit: &Option<String>, header: Option<String>, fallback: &str) -> String {
    explicit.clone().or(header).map(|s| nfc(s.trim())).filter(|s| !s.is_empty()).unwrap_or_else(|| fallback.to_string())
}

fn on_open(
    e: &BytesStart<'_>,
    name: &str,
    stack: &[String],
    header: &mut Header,
    text_lang: &mut Option<Language>,
    root_lang: &mut Option<Language>,
) {
    match name {
        "TEI" | "TEI.2" => *root_lang = lang_attr(e, b"xml:lang").or(lang_attr(e, b"lang")),
        "text" | "body" if text_lang.is_none() => *text_lang = lang_attr(e, b"xml:lang").or(lang_attr(e, b"lang")),
        "language" if stack.iter().any(|n| n == "langUsage") && header.language.is_none() => {
            header.language = lang_attr(e, b"ident");
        }
        _ => {}
    }
}

fn on_text(raw: &str, stack: &[String], header: &mut Header) {
    let Some(current) = stack.last() else { return };
    let in_stmt = stack.iter().any(|n| n == "titleStmt");
    let value = raw.trim();
    if value.is_empty() {
        return;
    }
    let append = |slot: &mut Option<String>| match slot {
        Some(s) => {
            s.push(' ');
            s.push_str(value)
        }
        None => *slot = Some(value.to_string()),
    };
    match current.as_str() {
        "title" if in_stmt && !header.title_done => append(&mut header.title),
        "author" if in_stmt && !header.author_done => append(&mut header.author),
        "term" if stack.iter().any(|n| n == "textClass") && header.genre.is_none() => {
            header.genre = Some(value.to_string())
        }
        _ => {}
    }
}

/// Plain text: one paragraph per line; paragraphs never share a sentence.
pub fn parse_plain_text(text: &str, defaults: &DocumentDefaults) -> Result<Document> {
    let language = defaults.language.ok_or_else(|| Error::MissingLanguage(defaults.id.clone()))?;
    let text = nfc(text.strip_prefix('\u{FEFF}').unwrap_or(text));
    let mut sentences: Vec<Sentence> = Vec::new();
    for line in text.lines() {
        for s in segment_sentences(line, language) {
            sentences.push(Sentence { index: sentences.len(), text: s.text });
        }
    }
    if sentences.is_empty() {
        return Err(Error::EmptyDocument(defaults.id.clone()));
    }
    Ok(Document {
        id: defaults.id.clone(),
        language,
        author: pick(&defaults.author, None, "unknown"),
        title: pick(&defaults.title, None, &defaults.id),
        genre: pick(&defaults.genre, None, "unknown"),
        sentences,
    })
}
