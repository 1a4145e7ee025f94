#![allow(dead_code)]

use std::path::{Path, PathBuf};

use lexsim::corpus::{Document, Language, Sentence};
use lexsim::embedding::EmbeddingVector;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden(name: &str) -> String {
    std::fs::read_to_string(fixtures().join("golden").join(name)).unwrap()
}

pub fn five_sentence_doc() -> Document {
    Document {
        id: "five".into(),
        language: Language::Latin,
        author: "anon".into(),
        title: "five".into(),
        genre: "philosophy".into(),
        sentences: (0..5).map(|index| Sentence { index, text: format!("S{index}") }).collect(),
    }
}

pub fn vector(term: &str, id: usize, components: Vec<f64>) -> EmbeddingVector {
    EmbeddingVector {
        term: term.into(),
        context_id: format!("d:{id:06}:{term}"),
        backend_id: "test".into(),
        dim: components.len(),
        components,
    }
}
