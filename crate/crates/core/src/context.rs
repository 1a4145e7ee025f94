//! Term occurrences, context windows and seeded balancing.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::normalize::{match_key, nfc};
use crate::corpus::{CorpusStore, Document, Language, Posting};
use crate::error::{Error, Result};
use crate::rng::SeededRng;

pub const DEFAULT_WINDOW: usize = 2;
pub const DEFAULT_MIN_CONTEXTS: usize = 50;
pub const DEFAULT_SEED: u64 = 42;

/// A target term and the inflected forms that count as occurrences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermSpec {
    pub lemma: String,
    pub language: Language,
    /// NFC, deduplicated by match key, lemma first.
    pub surface_forms: Vec<String>,
}

fn script_ok(form: &str, language: Language) -> bool {
    let greek = |c: char| matches!(c as u32, 0x0370..=0x03FF | 0x1F00..=0x1FFF);
    let latin = |c: char| c.is_ascii_alphabetic() || matches!(c as u32, 0x00C0..=0x024F | 0x1E00..=0x1EFF);
    form.chars().filter(|c| c.is_alphabetic()).all(|c| match language {
        Language::Greek => greek(c),
        Language::Latin => latin(c),
    })
}

impl TermSpec {
    pub fn new<I, S>(lemma: &str, language: Language, forms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let lemma = nfc(lemma.trim());
        if lemma.is_empty() {
            return Err(Error::Config("empty lemma".into()));
        }
        let mut seen = BTreeSet::new();
        let mut surface_forms = Vec::new();
        for form in std::iter::once(lemma.clone()).chain(forms.into_iter().map(|f| nfc(f.as_ref().trim()))) {
            if form.is_empty() {
                continue;
            }
            if !script_ok(&form, language) {
                return Err(Error::Config(format!("form {form:?} of {lemma:?} is not {language} script")));
            }
            if seen.insert(match_key(&form)) {
                surface_forms.push(form);
            }
        }
        Ok(TermSpec { lemma, language, surface_forms })
    }

    /// Normalized keys of all surface forms.
    pub fn match_keys(&self) -> BTreeSet<String> {
        self.surface_forms.iter().map(|f| match_key(f)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairClass {
    Etymological,
    Control,
}

impl PairClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PairClass::Etymological => "etymological",
            PairClass::Control => "control",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermPair {
    pub greek: TermSpec,
    pub latin: TermSpec,
    pub pair_class: PairClass,
    pub gloss: String,
}

#[derive(Deserialize)]
struct TermEntry {
    lemma: String,
    #[serde(default)]
    forms: Vec<String>,
}

#[derive(Deserialize)]
struct PairEntry {
    greek: TermEntry,
    latin: TermEntry,
    class: PairClass,
    #[serde(default)]
    gloss: String,
}

/// Parses a term-pair file: a JSON array of
/// `{greek: {lemma, forms}, latin: {lemma, forms}, class, gloss}`.
pub fn parse_pairs(json: &str) -> Result<Vec<TermPair>> {
    let entries: Vec<PairEntry> = serde_json::from_str(json).map_err(|e| Error::format(e.line(), e.to_string()))?;
    entries
        .into_iter()
        .map(|p| {
            Ok(TermPair {
                greek: TermSpec::new(&p.greek.lemma, Language::Greek, &p.greek.forms)?,
                latin: TermSpec::new(&p.latin.lemma, Language::Latin, &p.latin.forms)?,
                pair_class: p.class,
                gloss: p.gloss,
            })
        })
        .collect()
}

pub fn read_pairs(path: &Path) -> Result<Vec<TermPair>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_pairs(&text)
}

/// Distinct terms in pair order: Greek side then Latin side of each pair.
pub fn distinct_terms(pairs: &[TermPair]) -> Vec<&TermSpec> {
    let mut seen = BTreeSet::new();
    pairs.iter().flat_map(|p| [&p.greek, &p.latin]).filter(|t| seen.insert((t.language, t.lemma.clone()))).collect()
}

/// Sentences containing a surface form as a whole token, sorted by
/// (document id, sentence index).
pub fn find_occurrences(store: &CorpusStore, term: &TermSpec) -> Vec<Posting> {
    let found: BTreeSet<&Posting> = term.match_keys().iter().flat_map(|k| store.postings(term.language, k)).collect();
    found.into_iter().cloned().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextWindow {
    pub context_id: String,
    pub term: String,
    pub language: Language,
    pub document_id: String,
    pub center_index: usize,
    pub window_size: usize,
    pub text: String,
    pub genre: String,
}

pub fn context_id(document_id: &str, center: usize, term: &str) -> String {
    format!("{document_id}:{center:06}:{term}")
}

/// Space-joined sentences `[max(0, c - w), min(n, c + w + 1))`.
pub fn window_text(doc: &Document, center: usize, window: usize) -> Result<String> {
    let n = doc.sentences.len();
    if center >= n {
        return Err(Error::OutOfBounds { index: center, len: n });
    }
    let start = center.saturating_sub(window);
    let end = n.min(center.saturating_add(window).saturating_add(1));
    Ok(doc.sentences[start..end].iter().map(|s| s.text.as_str()).collect::<Vec<_>>().join(" "))
}

pub fn get_context_window(doc: &Document, center: usize, window: usize, term: &TermSpec) -> Result<ContextWindow> {
    Ok(ContextWindow {
        context_id: context_id(&doc.id, center, &term.lemma),
        term: term.lemma.clone(),
        language: doc.language,
        document_id: doc.id.clone(),
        center_index: center,
        window_size: window,
        text: window_text(doc, center, window)?,
        genre: doc.genre.clone(),
    })
}

/// One window per occurrence, in occurrence order.
pub fn extract_contexts_for_term(store: &CorpusStore, term: &TermSpec, window: usize) -> Result<Vec<ContextWindow>> {
    find_occurrences(store, term)
        .into_iter()
        .map(|(doc_id, idx)| {
            let doc = store.document(&doc_id).expect("posting resolves to a document");
            get_context_window(doc, idx, window, term)
        })
        .collect()
}

pub type ContextsByTerm = BTreeMap<String, Vec<ContextWindow>>;

/// Keeps `min(count, min_contexts)` windows per term, sampled without
/// replacement with a fresh generator seeded by `seed` for every term.
/// Inputs are sorted by context id before sampling, and outputs are
/// returned in context-id order.
pub fn balance_contexts(
    contexts_by_term: &ContextsByTerm,
    min_contexts: usize,
    seed: u64,
) -> Result<(ContextsByTerm, Vec<String>)> {
    if min_contexts == 0 {
        return Err(Error::Range { name: "min_contexts", value: 0.0 });
    }
    let mut warnings = Vec::new();
    let mut balanced = BTreeMap::new();
    for (term, contexts) in contexts_by_term {
        let mut sorted = contexts.clone();
        sorted.sort_by(|a, b| a.context_id.cmp(&b.context_id));
        if sorted.len() < min_contexts {
            warnings.push(format!("Only {} contexts found for {}", sorted.len(), term));
        }
        let chosen = if sorted.len() <= min_contexts {
            sorted
        } else {
            let mut rng = SeededRng::new(seed);
            let mut idx = rng.sample_indices(sorted.len(), min_contexts);
            idx.sort_unstable();
            idx.into_iter().map(|i| sorted[i].clone()).collect()
        };
        balanced.insert(term.clone(), chosen);
    }
    Ok((balanced, warnings))
}
