//! Context embedding backends and per-term aggregation.

pub mod io;
pub mod mock;
pub mod projection;
pub mod transformer;

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::context::ContextWindow;
use crate::error::{Error, Result};

pub use io::{load_embeddings, quantize, read_embeddings, save_embeddings, write_embeddings};
pub use mock::deterministic_mock_embed;
pub use projection::{temporal_project, Projection};

/// Hidden size of the reference encoder.
pub const REFERENCE_DIM: usize = 768;
pub const DEFAULT_MAX_SEQUENCE_LENGTH: usize = 512;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingVector {
    pub term: String,
    pub context_id: String,
    pub backend_id: String,
    pub dim: usize,
    pub components: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermEmbedding {
    pub term: String,
    pub mean: Vec<f64>,
    pub context_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Transformer,
    Mock,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BackendConfig {
    pub backend_id: String,
    pub kind: BackendKind,
    /// Directory holding `config.json`, `vocab.txt` and `model.safetensors`.
    pub model_locator: Option<PathBuf>,
    pub max_sequence_length: usize,
    /// JSON file with `{"weight": [[..]], "bias": [..]}`; identity when absent.
    pub temporal_projection: Option<PathBuf>,
    /// Output size of the mock backend.
    pub dim: usize,
    /// Seed of the mock backend.
    pub seed: u64,
}

impl Default for BackendConfig {
    fn default() -> Self {
        BackendConfig {
            backend_id: "mock".into(),
            kind: BackendKind::Mock,
            model_locator: None,
            max_sequence_length: DEFAULT_MAX_SEQUENCE_LENGTH,
            temporal_projection: None,
            dim: REFERENCE_DIM,
            seed: 42,
        }
    }
}

impl BackendConfig {
    pub fn mock(dim: usize, seed: u64) -> Self {
        BackendConfig { dim, seed, ..Default::default() }
    }

    pub fn transformer(model: impl Into<PathBuf>) -> Self {
        BackendConfig {
            backend_id: "transformer".into(),
            kind: BackendKind::Transformer,
            model_locator: Some(model.into()),
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_sequence_length == 0 {
            return Err(Error::Config("max_sequence_length must be at least 1".into()));
        }
        if self.kind == BackendKind::Mock && self.dim < 2 {
            return Err(Error::Config("mock dim must be at least 2".into()));
        }
        Ok(())
    }

    /// How the pooled vector is post-processed, as recorded in reports.
    pub fn projection_label(&self) -> String {
        match (self.kind, &self.temporal_projection) {
            (BackendKind::Mock, _) => "none".into(),
            (BackendKind::Transformer, None) => "identity".into(),
            (BackendKind::Transformer, Some(p)) => {
                format!("file:{}", p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default())
            }
        }
    }
}

enum Engine {
    Mock,
    Transformer {
        encoder: Box<transformer::BertEncoder>,
        tokenizer: transformer::WordPiece,
        projection: Option<Projection>,
    },
}

/// A loaded backend. Safe for concurrent read-only use.
pub struct EmbeddingBackend {
    config: BackendConfig,
    engine: Engine,
}

impl EmbeddingBackend {
    /// Loads model assets. A transformer without a resolvable model is
    /// an error; there is no silent fallback to the mock.
    pub fn new(config: BackendConfig) -> Result<Self> {
        config.validate()?;
        let engine = match config.kind {
            BackendKind::Mock => Engine::Mock,
            BackendKind::Transformer => {
                let dir = config
                    .model_locator
                    .as_ref()
                    .ok_or_else(|| Error::BackendUnavailable("no model directory given".into()))?;
                let (encoder, tokenizer) = transformer::load_model(dir)?;
                let projection = match &config.temporal_projection {
                    Some(path) => {
                        let p = Projection::from_file(path)?;
                        if p.dim() != encoder.hidden_size() {
                            return Err(Error::Dimension { expected: encoder.hidden_size(), found: p.dim() });
                        }
                        Some(p)
                    }
                    None => None,
                };
                Engine::Transformer { encoder: Box::new(encoder), tokenizer, projection }
            }
        };
        Ok(EmbeddingBackend { config, engine })
    }

    pub fn config(&self) -> &BackendConfig {
        &self.config
    }

    pub fn dim(&self) -> usize {
        match &self.engine {
            Engine::Mock => self.config.dim,
            Engine::Transformer { encoder, .. } => encoder.hidden_size(),
        }
    }

    pub fn embed_context(&self, context: &ContextWindow) -> Result<EmbeddingVector> {
        if context.text.trim().is_empty() {
            return Err(Error::EmptyInput("context text"));
        }
        let components = match &self.engine {
            Engine::Mock => deterministic_mock_embed(context, self.config.dim, self.config.seed)?.components,
            Engine::Transformer { encoder, tokenizer, projection } => {
                let max_len = self.config.max_sequence_length.min(encoder.max_positions());
                let ids = tokenizer.encode(&context.text, max_len);
                let pooled: Vec<f64> = encoder.pooled(&ids).into_iter().map(f64::from).collect();
                match projection {
                    Some(p) => p.apply(&pooled)?,
                    None => pooled,
                }
            }
        };
        if let Some(bad) = components.iter().find(|x| !x.is_finite()) {
            return Err(Error::Numeric(format!("embedding component {bad} for {}", context.context_id)));
        }
        Ok(EmbeddingVector {
            term: context.term.clone(),
            context_id: context.context_id.clone(),
            backend_id: self.config.backend_id.clone(),
            dim: components.len(),
            components,
        })
    }

    /// Embeds every context; results keep input order.
    pub fn embed_all(&self, contexts: &[ContextWindow]) -> Result<Vec<EmbeddingVector>> {
        contexts.par_iter().map(|c| self.embed_context(c)).collect()
    }
}

/// Componentwise mean, summed in context-id order.
pub fn mean_term_embedding(vectors: &[EmbeddingVector]) -> Result<TermEmbedding> {
    let first = vectors.first().ok_or(Error::EmptyInput("no vectors to average"))?;
    let dim = first.components.len();
    for v in vectors {
        if v.components.len() != dim {
            return Err(Error::Dimension { expected: dim, found: v.components.len() });
        }
        if v.term != first.term {
            return Err(Error::Config(format!("mixed terms {:?} and {:?}", first.term, v.term)));
        }
    }
    let mut ordered: Vec<&EmbeddingVector> = vectors.iter().collect();
    ordered.sort_by(|a, b| a.context_id.cmp(&b.context_id));
    let mut sum = vec![0.0f64; dim];
    for v in ordered {
        for (s, x) in sum.iter_mut().zip(&v.components) {
            *s += x;
        }
    }
    let n = vectors.len() as f64;
    Ok(TermEmbedding {
        term: first.term.clone(),
        mean: sum.into_iter().map(|s| s / n).collect(),
        context_count: vectors.len(),
    })
}
