//! Hash-expansion mock embeddings for tests and CI.
//!
//! Scheme `lexsim-mock-v1`: block `k = 0, 1, ..` is
//! `SHA-256("lexsim-mock-v1" ‖ seed ‖ dim ‖ k ‖ len(term) ‖ term ‖ text)`
//! with integers as little-endian u64 and strings as UTF-8. Each block
//! yields four little-endian u64 words `w`, mapped to
//! `(w >> 11) · 2⁻⁵³ · 2 − 1 ∈ [−1, 1)`. The first `dim` values are
//! divided by their Euclidean norm (squares summed in order).

use sha2::{Digest, Sha256};

use super::EmbeddingVector;
use crate::context::ContextWindow;
use crate::error::{Error, Result};

pub const SCHEME: &str = "lexsim-mock-v1";

pub fn mock_components(text: &str, term: &str, dim: usize, seed: u64) -> Result<Vec<f64>> {
    if dim < 2 {
        return Err(Error::Range { name: "dim", value: dim as f64 });
    }
    let mut raw = Vec::with_capacity(dim);
    let mut block = 0u64;
    while raw.len() < dim {
        let mut h = Sha256::new();
        h.update(SCHEME.as_bytes());
        h.update(seed.to_le_bytes());
        h.update((dim as u64).to_le_bytes());
        h.update(block.to_le_bytes());
        h.update((term.len() as u64).to_le_bytes());
        h.update(term.as_bytes());
        h.update(text.as_bytes());
        let digest = h.finalize();
        for chunk in digest.chunks_exact(8) {
            if raw.len() == dim {
                break;
            }
            let w = u64::from_le_bytes(chunk.try_into().expect("8-byte chunk"));
            raw.push((w >> 11) as f64 * (1.0 / (1u64 << 53) as f64) * 2.0 - 1.0);
        }
        block += 1;
    }
    let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroNorm(format!("mock vector for {term:?}")));
    }
    Ok(raw.into_iter().map(|x| x / norm).collect())
}

/// Unit-length vector that depends only on (text, term, dim, seed).
pub fn deterministic_mock_embed(context: &ContextWindow, dim: usize, seed: u64) -> Result<EmbeddingVector> {
    Ok(EmbeddingVector {
        term: context.term.clone(),
        context_id: context.context_id.clone(),
        backend_id: "mock".into(),
        dim,
        components: mock_components(&context.text, &context.term, dim, seed)?,
    })
}
