//! Line-delimited embedding files.
//!
//! One record per line, `{"term":…,"context_id":…,"backend":…,"dim":…,"vector":[…]}`,
//! floats at 9 significant digits, LF endings, sorted by (term, context_id).

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::EmbeddingVector;
use crate::canon;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    term: String,
    context_id: String,
    backend: String,
    dim: usize,
    vector: Vec<f64>,
}

fn sorted(vectors: &[EmbeddingVector]) -> Vec<&EmbeddingVector> {
    let mut v: Vec<&EmbeddingVector> = vectors.iter().collect();
    v.sort_by(|a, b| (&a.term, &a.context_id).cmp(&(&b.term, &b.context_id)));
    v
}

pub fn write_embeddings(vectors: &[EmbeddingVector]) -> Result<String> {
    let mut out = String::new();
    for v in sorted(vectors) {
        if v.dim != v.components.len() {
            return Err(Error::Dimension { expected: v.dim, found: v.components.len() });
        }
        if v.components.iter().any(|x| !x.is_finite()) {
            return Err(Error::Numeric(format!("non-finite component in {}", v.context_id)));
        }
        let record = Record {
            term: v.term.clone(),
            context_id: v.context_id.clone(),
            backend: v.backend_id.clone(),
            dim: v.dim,
            vector: v.components.clone(),
        };
        out.push_str(&canon::to_compact(&record)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn save_embeddings(path: &Path, vectors: &[EmbeddingVector]) -> Result<()> {
    let text = write_embeddings(vectors)?;
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_embeddings(text: &str) -> Result<Vec<EmbeddingVector>> {
    let mut out = Vec::new();
    for (i, line) in text.split_terminator('\n').enumerate() {
        let line_no = i + 1;
        let r: Record = serde_json::from_str(line).map_err(|e| Error::format(line_no, e.to_string()))?;
        if r.dim == 0 || r.dim != r.vector.len() {
            return Err(Error::format(line_no, format!("dim {} but vector has {} components", r.dim, r.vector.len())));
        }
        out.push(EmbeddingVector {
            term: r.term,
            context_id: r.context_id,
            backend_id: r.backend,
            dim: r.dim,
            components: r.vector,
        });
    }
    out.sort_by(|a, b| (&a.term, &a.context_id).cmp(&(&b.term, &b.context_id)));
    Ok(out)
}

pub fn load_embeddings(path: &Path) -> Result<Vec<EmbeddingVector>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    read_embeddings(&text)
}

/// Rounds every component to the file precision.
pub fn quantize(vectors: &mut [EmbeddingVector]) {
    for v in vectors {
        for x in &mut v.components {
            *x = canon::round_float(*x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize) -> Vec<EmbeddingVector> {
        (0..n)
            .map(|i| EmbeddingVector {
                term: if i % 2 == 0 { "anima".into() } else { "ψυχή".into() },
                context_id: format!("doc:{i:06}:x"),
                backend_id: "mock".into(),
                dim: 3,
                components: vec![1.0 / (i as f64 + 3.0), -0.5, 1e-7 * i as f64],
            })
            .collect()
    }

    #[test]
    fn round_trip_and_canonical() {
        let mut v = sample(10);
        quantize(&mut v);
        let text = write_embeddings(&v).unwrap();
        let back = read_embeddings(&text).unwrap();
        let mut want = v.clone();
        want.sort_by(|a, b| (&a.term, &a.context_id).cmp(&(&b.term, &b.context_id)));
        assert_eq!(back, want);
        assert_eq!(write_embeddings(&back).unwrap(), text);
        let first = text.lines().next().unwrap();
        assert_eq!(
            first,
            r#"{"term":"anima","context_id":"doc:000000:x","backend":"mock","dim":3,"vector":[0.333333333,-0.5,0]}"#
        );
    }

    #[test]
    fn bad_dim_names_line() {
        let text = write_embeddings(&sample(3)).unwrap();
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        lines[1] = lines[1].replace("\"dim\":3", "\"dim\":4");
        let broken = lines.join("\n") + "\n";
        match read_embeddings(&broken) {
            Err(Error::Format { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
