//! Corpus ingestion: TEI/plain-text readers, segmentation and the
//! immutable token index.

pub mod normalize;
pub mod segment;
pub mod tei;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::canon;
use crate::error::{Error, Result};

pub use segment::segment_sentences;
pub use tei::{parse_plain_text, parse_tei_document, DocumentDefaults};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    Greek,
    Latin,
}

impl Language {
    /// Accepts the names and ISO codes used in TEI headers and manifests.
    pub fn from_code(code: &str) -> Option<Language> {
        match code.trim().to_ascii_lowercase().as_str() {
            "greek" | "grc" | "gr" => Some(Language::Greek),
            "latin" | "la" | "lat" => Some(Language::Latin),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Language::Greek => "greek",
            Language::Latin => "latin",
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub index: usize,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub language: Language,
    pub author: String,
    pub title: String,
    pub genre: String,
    pub sentences: Vec<Sentence>,
}

/// (document id, sentence index)
pub type Posting = (String, usize);

/// Read-only collection of documents plus a token index keyed by
/// `(language, match key)`. Postings are sorted and unique.
#[derive(Debug, Clone, Default)]
pub struct CorpusStore {
    documents: Vec<Document>,
    index: BTreeMap<(Language, String), Vec<Posting>>,
}

impl CorpusStore {
    /// Builds the store, sorting documents by id.
    pub fn new(mut documents: Vec<Document>) -> Result<Self> {
        documents.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = documents.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::DuplicateDocument(w[0].id.clone()));
        }
        let mut index: BTreeMap<(Language, String), BTreeSet<Posting>> = BTreeMap::new();
        for doc in &documents {
            for s in &doc.sentences {
                for tok in normalize::tokens(&s.text) {
                    index
                        .entry((doc.language, normalize::match_key(tok)))
                        .or_default()
                        .insert((doc.id.clone(), s.index));
                }
            }
        }
        let index = index.into_iter().map(|(k, v)| (k, v.into_iter().collect())).collect();
        Ok(CorpusStore { documents, index })
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn document(&self, id: &str) -> Option<&Document> {
        self.documents.binary_search_by(|d| d.id.as_str().cmp(id)).ok().map(|i| &self.documents[i])
    }

    pub fn has_language(&self, language: Language) -> bool {
        self.documents.iter().any(|d| d.language == language)
    }

    /// Postings for an already-normalized match key.
    pub fn postings(&self, language: Language, key: &str) -> &[Posting] {
        self.index.get(&(language, key.to_string())).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn index_len(&self) -> usize {
        self.index.len()
    }

    /// Canonical JSON: documents sorted by id, keys in alphabetical order.
    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Doc<'a> {
            author: &'a str,
            genre: &'a str,
            id: &'a str,
            language: Language,
            sentences: Vec<&'a str>,
            title: &'a str,
        }
        #[derive(Serialize)]
        struct Store<'a> {
            documents: Vec<Doc<'a>>,
        }
        let store = Store {
            documents: self
                .documents
                .iter()
                .map(|d| Doc {
                    author: &d.author,
                    genre: &d.genre,
                    id: &d.id,
                    language: d.language,
                    sentences: d.sentences.iter().map(|s| s.text.as_str()).collect(),
                    title: &d.title,
                })
                .collect(),
        };
        canon::to_pretty(&store)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            author: String,
            genre: String,
            id: String,
            language: Language,
            sentences: Vec<String>,
            title: String,
        }
        #[derive(Deserialize)]
        struct Store {
            documents: Vec<Doc>,
        }
        let store: Store = serde_json::from_str(json).map_err(|e| Error::format(e.line(), e.to_string()))?;
        let documents = store
            .documents
            .into_iter()
            .map(|d| {
                let sentences = d
                    .sentences
                    .into_iter()
                    .enumerate()
                    .map(|(index, text)| {
                        if text.is_empty() || text.trim() != text {
                            return Err(Error::format(0, format!("bad sentence {index} in {:?}", d.id)));
                        }
                        Ok(Sentence { index, text })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Document {
                    id: d.id,
                    language: d.language,
                    author: d.author,
                    title: d.title,
                    genre: d.genre,
                    sentences,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CorpusStore::new(documents)
    }
}

/// One manifest record: `{path, language, author, title, genre}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub path: PathBuf,
    #[serde(default)]
    pub language: Option<String>,
    #[serde(default)]
    pub author: Option<String>,
    #[serde(default)]
    pub title: Option<String>,
    #[serde(default)]
    pub genre: Option<String>,
}

pub fn read_manifest(path: &Path) -> Result<Vec<ManifestEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::format(e.line(), format!("{}: {e}", path.display())))
}

/// Document id for a corpus file: its file stem.
pub fn document_id(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string())
}

fn looks_like_xml(path: &Path, bytes: &[u8]) -> bool {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    if matches!(ext, "xml" | "tei") {
        return true;
    }
    let body = bytes.strip_prefix(b"\xEF\xBB\xBF").unwrap_or(bytes);
    body.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'<')
}

/// Loads every file listed in the manifest. Relative paths resolve
/// against `base`. XML files go through the TEI reader, everything else
/// through the plain-text reader.
pub fn load_corpus(base: &Path, manifest: &[ManifestEntry]) -> Result<CorpusStore> {
    let mut documents = Vec::with_capacity(manifest.len());
    for entry in manifest {
        let path = if entry.path.is_absolute() { entry.path.clone() } else { base.join(&entry.path) };
        let bytes = std::fs::read(&path).map_err(|e| Error::io(&path, e))?;
        let language = match &entry.language {
            Some(code) => Some(
                Language::from_code(code)
                    .ok_or_else(|| Error::Config(format!("unknown language {code:?} for {}", path.display())))?,
            ),
            None => None,
        };
        let defaults = DocumentDefaults {
            id: document_id(&path),
            language,
            author: entry.author.clone(),
            title: entry.title.clone(),
            genre: entry.genre.clone(),
        };
        let doc = if looks_like_xml(&path, &bytes) {
            parse_tei_document(&bytes, &defaults)
        } else {
            String::from_utf8(bytes)
                .map_err(|e| Error::format(0, format!("not UTF-8: {e}")))
                .and_then(|text| parse_plain_text(&text, &defaults))
        };
        documents.push(doc.map_err(|e| Error::item(path.display().to_string(), e))?);
    }
    CorpusStore::new(documents)
}
