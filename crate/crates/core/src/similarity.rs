//! Similarity metrics between embeddings and term pairs.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::context::{PairClass, TermPair};
use crate::embedding::{EmbeddingVector, TermEmbedding};
use crate::error::{Error, Result};

/// Weight of the text score in the genre-conditioned blend.
pub const DEFAULT_GENRE_ALPHA: f64 = 0.7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// Angular similarity of the two mean embeddings.
    AngularMean,
    /// Mean cosine over all context pairs.
    AvgCosine,
    /// `alpha · angular_mean + (1 − alpha) · genre overlap`.
    GenreBlend,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::AngularMean => "angular_mean",
            Metric::AvgCosine => "avg_cosine",
            Metric::GenreBlend => "genre_blend",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimilarityRecord {
    pub greek: String,
    pub latin: String,
    pub pair_class: PairClass,
    pub metric: Metric,
    pub score: f64,
    pub context_counts: (usize, usize),
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn norm(u: &[f64]) -> f64 {
    dot(u, u).sqrt()
}

/// `u·v / (‖u‖‖v‖)`, clamped to `[-1, 1]`.
pub fn cosine(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::Dimension { expected: u.len(), found: v.len() });
    }
    let (nu, nv) = (norm(u), norm(v));
    if nu == 0.0 {
        return Err(Error::ZeroNorm("first vector".into()));
    }
    if nv == 0.0 {
        return Err(Error::ZeroNorm("second vector".into()));
    }
    Ok((dot(u, v) / (nu * nv)).clamp(-1.0, 1.0))
}

/// `1 − (2/π)·θ`: 1 for parallel, 0 for orthogonal, −1 for antiparallel
/// vectors.
///
/// θ is taken as `2·atan2(‖û − v̂‖, ‖û + v̂‖)`, which equals `arccos(cos θ)`
/// but keeps full precision near 0 and π, where arccos loses about half the
/// digits.
pub fn angular_similarity(u: &[f64], v: &[f64]) -> Result<f64> {
    cosine(u, v)?;
    let (nu, nv) = (norm(u), norm(v));
    let (mut diff, mut sum) = (0.0, 0.0);
    for (a, b) in u.iter().zip(v) {
        let (a, b) = (a / nu, b / nv);
        diff += (a - b) * (a - b);
        sum += (a + b) * (a + b);
    }
    let theta = 2.0 * diff.sqrt().atan2(sum.sqrt());
    Ok(1.0 - 2.0 / std::f64::consts::PI * theta)
}

pub fn angular_from_cosine(c: f64) -> f64 {
    1.0 - 2.0 / std::f64::consts::PI * c.clamp(-1.0, 1.0).acos()
}

fn named(e: Error, term: &str) -> Error {
    match e {
        Error::ZeroNorm(_) => Error::ZeroNorm(format!("mean embedding of {term:?}")),
        other => other,
    }
}

pub fn pair_similarity(pair: &TermPair, g: &TermEmbedding, l: &TermEmbedding) -> Result<SimilarityRecord> {
    if norm(&g.mean) == 0.0 {
        return Err(named(Error::ZeroNorm(String::new()), &g.term));
    }
    if norm(&l.mean) == 0.0 {
        return Err(named(Error::ZeroNorm(String::new()), &l.term));
    }
    Ok(SimilarityRecord {
        greek: pair.greek.lemma.clone(),
        latin: pair.latin.lemma.clone(),
        pair_class: pair.pair_class,
        metric: Metric::AngularMean,
        score: angular_similarity(&g.mean, &l.mean)?,
        context_counts: (g.context_count, l.context_count),
    })
}

/// Mean cosine over the full cross product, accumulated in sorted
/// (greek context id, latin context id) order.
pub fn avg_contextual_cosine(contexts_g: &[EmbeddingVector], contexts_l: &[EmbeddingVector]) -> Result<f64> {
    if contexts_g.is_empty() || contexts_l.is_empty() {
        return Err(Error::EmptyInput("context list"));
    }
    fn sort(v: &[EmbeddingVector]) -> Vec<&EmbeddingVector> {
        let mut s: Vec<&EmbeddingVector> = v.iter().collect();
        s.sort_by(|a, b| a.context_id.cmp(&b.context_id));
        s
    }
    let (gs, ls) = (sort(contexts_g), sort(contexts_l));
    let mut sum = 0.0;
    for g in &gs {
        for l in &ls {
            sum += cosine(&g.components, &l.components)?;
        }
    }
    Ok(sum / (gs.len() * ls.len()) as f64)
}

pub fn genre_conditioned_similarity(s_text: f64, s_genre: f64, alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Range { name: "alpha", value: alpha });
    }
    Ok(alpha * s_text + (1.0 - alpha) * s_genre)
}

/// Multiset Jaccard overlap `Σ min / Σ max` of two genre label lists.
pub fn genre_overlap<'a>(a: impl IntoIterator<Item = &'a str>, b: impl IntoIterator<Item = &'a str>) -> f64 {
    let mut counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for g in a {
        counts.entry(g).or_default().0 += 1;
    }
    for g in b {
        counts.entry(g).or_default().1 += 1;
    }
    let (num, den) = counts.values().fold((0usize, 0usize), |(n, d), &(x, y)| (n + x.min(y), d + x.max(y)));
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimilarityMatrix {
    pub greek_terms: Vec<String>,
    pub latin_terms: Vec<String>,
    pub cells: Vec<Vec<f64>>,
}

pub fn build_similarity_matrix(
    embeddings: &HashMap<String, TermEmbedding>,
    greek_terms: &[String],
    latin_terms: &[String],
) -> Result<SimilarityMatrix> {
    let get = |t: &String| embeddings.get(t).ok_or_else(|| Error::MissingTerm(t.clone()));
    let latin: Vec<&TermEmbedding> = latin_terms.iter().map(get).collect::<Result<_>>()?;
    let cells = greek_terms
        .iter()
        .map(|g| {
            let ge = get(g)?;
            latin
                .iter()
                .map(|le| angular_similarity(&ge.mean, &le.mean).map_err(|e| named(e, &ge.term)))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimilarityMatrix { greek_terms: greek_terms.to_vec(), latin_terms: latin_terms.to_vec(), cells })
}
