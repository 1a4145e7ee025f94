//! Pipeline orchestration and the canonical report.

mod figures;
mod render;

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::canon;
use crate::context::{
    balance_contexts, distinct_terms, extract_contexts_for_term, read_pairs, ContextWindow, PairClass, TermPair,
    DEFAULT_MIN_CONTEXTS, DEFAULT_SEED, DEFAULT_WINDOW,
};
use crate::corpus::{load_corpus, read_manifest, CorpusStore, ManifestEntry};
use crate::embedding::{
    mean_term_embedding, quantize, BackendConfig, BackendKind, EmbeddingBackend, EmbeddingVector, TermEmbedding,
};
use crate::error::{Error, Result, StageExt};
use crate::rng;
use crate::similarity::{
    angular_similarity, avg_contextual_cosine, build_similarity_matrix, genre_conditioned_similarity, genre_overlap,
    pair_similarity, Metric, SimilarityMatrix, DEFAULT_GENRE_ALPHA,
};
use crate::stats::{
    bootstrap_ci, descriptive_stats, mean, student_t_test, variance_components, welch_t_test, Descriptive, TTest,
    VarianceDecomposition, DEFAULT_ITERATIONS, DEFAULT_LEVEL,
};

pub use figures::{render_figures, FigureKind};
pub use render::{render_report, ReportFormat};

pub const TOOL_NAME: &str = "lexsim";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Genre label of documents that declare none; left out of the ANOVA.
const UNKNOWN_GENRE: &str = "unknown";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    pub corpus_dir: PathBuf,
    /// Defaults to `manifest.json` in the corpus directory, if present;
    /// otherwise every `.xml`, `.tei` and `.txt` file there is loaded.
    pub manifest: Option<PathBuf>,
    pub pairs: Option<PathBuf>,
    pub window_size: usize,
    pub min_contexts: usize,
    pub seed: u64,
    pub backend: BackendConfig,
    pub metric: Metric,
    pub bootstrap_iterations: usize,
    /// Defaults to `seed`.
    pub bootstrap_seed: Option<u64>,
    pub bootstrap_level: f64,
    pub genre_alpha: f64,
    pub out_dir: Option<PathBuf>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            corpus_dir: PathBuf::from("."),
            manifest: None,
            pairs: None,
            window_size: DEFAULT_WINDOW,
            min_contexts: DEFAULT_MIN_CONTEXTS,
            seed: DEFAULT_SEED,
            backend: BackendConfig::default(),
            metric: Metric::AngularMean,
            bootstrap_iterations: DEFAULT_ITERATIONS,
            bootstrap_seed: None,
            bootstrap_level: DEFAULT_LEVEL,
            genre_alpha: DEFAULT_GENRE_ALPHA,
            out_dir: None,
        }
    }
}

impl AnalysisConfig {
    pub fn resolved_bootstrap_seed(&self) -> u64 {
        self.bootstrap_seed.unwrap_or(self.seed)
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_contexts == 0 {
            return Err(Error::Config("min_contexts must be at least 1".into()));
        }
        if self.bootstrap_iterations == 0 {
            return Err(Error::Config("bootstrap_iterations must be at least 1".into()));
        }
        if !(self.bootstrap_level > 0.0 && self.bootstrap_level < 1.0) {
            return Err(Error::Config(format!("bootstrap_level {} is not in (0, 1)", self.bootstrap_level)));
        }
        if !(0.0..=1.0).contains(&self.genre_alpha) {
            return Err(Error::Config(format!("genre_alpha {} is not in [0, 1]", self.genre_alpha)));
        }
        self.backend.validate()
    }

    pub fn pairs_path(&self) -> Result<&Path> {
        self.pairs.as_deref().ok_or_else(|| Error::Config("no term-pair file given".into()))
    }

    fn extract_params(&self) -> ExtractParams {
        ExtractParams { window_size: self.window_size, min_contexts: self.min_contexts, seed: self.seed }
    }
}

fn corpus_manifest(config: &AnalysisConfig) -> Result<Vec<ManifestEntry>> {
    if let Some(path) = &config.manifest {
        return read_manifest(path);
    }
    let default = config.corpus_dir.join("manifest.json");
    if default.is_file() {
        return read_manifest(&default);
    }
    let dir = &config.corpus_dir;
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("xml" | "tei" | "txt")))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::Config(format!("no corpus files in {}", dir.display())));
    }
    Ok(paths
        .into_iter()
        .map(|path| ManifestEntry { path, language: None, author: None, title: None, genre: None })
        .collect())
}

pub fn ingest(config: &AnalysisConfig) -> Result<CorpusStore> {
    corpus_manifest(config).and_then(|manifest| load_corpus(&config.corpus_dir, &manifest)).stage("ingest")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtractParams {
    pub window_size: usize,
    pub min_contexts: usize,
    pub seed: u64,
}

/// Balanced context windows per term, as written to `contexts.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextSet {
    pub params: ExtractParams,
    pub documents: Vec<String>,
    pub warnings: Vec<String>,
    pub contexts: BTreeMap<String, Vec<ContextWindow>>,
}

impl ContextSet {
    pub fn all(&self) -> impl Iterator<Item = &ContextWindow> {
        self.contexts.values().flatten()
    }
}

pub fn extract(store: &CorpusStore, pairs: &[TermPair], params: ExtractParams) -> Result<ContextSet> {
    let run = || {
        if pairs.is_empty() {
            return Err(Error::Config("the term-pair file lists no pairs".into()));
        }
        let mut found = BTreeMap::new();
        for term in distinct_terms(pairs) {
            let contexts = extract_contexts_for_term(store, term, params.window_size)?;
            if contexts.is_empty() {
                return Err(Error::NoContexts(term.lemma.clone()));
            }
            found.insert(term.lemma.clone(), contexts);
        }
        let (contexts, warnings) = balance_contexts(&found, params.min_contexts, params.seed)?;
        Ok(ContextSet {
            params,
            documents: store.documents().iter().map(|d| d.id.clone()).collect(),
            warnings,
            contexts,
        })
    };
    run().stage("extract")
}

/// Embeds every context and rounds the result to file precision, so an
/// in-memory run and a run resumed from `embeddings.jsonl` agree exactly.
pub fn embed(contexts: &ContextSet, backend: &EmbeddingBackend) -> Result<Vec<EmbeddingVector>> {
    let all: Vec<ContextWindow> = contexts.all().cloned().collect();
    let mut vectors = backend.embed_all(&all).stage("embed")?;
    quantize(&mut vectors);
    Ok(vectors)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BootstrapEcho {
    pub iterations: usize,
    pub level: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BackendEcho {
    pub backend_id: String,
    pub kind: BackendKind,
    pub dim: usize,
    /// Mock backend only.
    pub seed: Option<u64>,
    /// Transformer backend only.
    pub max_sequence_length: Option<usize>,
    pub projection: String,
}

impl BackendEcho {
    pub fn new(config: &BackendConfig, dim: usize) -> Self {
        let mock = config.kind == BackendKind::Mock;
        BackendEcho {
            backend_id: config.backend_id.clone(),
            kind: config.kind,
            dim,
            seed: mock.then_some(config.seed),
            max_sequence_length: (!mock).then_some(config.max_sequence_length),
            projection: config.projection_label(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigEcho {
    pub window_size: usize,
    pub min_contexts: usize,
    pub seed: u64,
    pub metric: Metric,
    pub genre_alpha: f64,
    pub bootstrap: BootstrapEcho,
    pub rng: String,
    pub backend: BackendEcho,
    pub documents: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scores {
    pub angular_mean: f64,
    pub avg_cosine: f64,
    pub genre_blend: f64,
}

impl Scores {
    pub fn get(&self, metric: Metric) -> f64 {
        match metric {
            Metric::AngularMean => self.angular_mean,
            Metric::AvgCosine => self.avg_cosine,
            Metric::GenreBlend => self.genre_blend,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextCounts {
    pub greek: usize,
    pub latin: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Interval {
    pub level: f64,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairReport {
    pub greek: String,
    pub latin: String,
    pub class: PairClass,
    pub gloss: String,
    pub metric: Metric,
    pub score: f64,
    pub scores: Scores,
    pub genre_similarity: f64,
    pub context_counts: ContextCounts,
    pub context_mean: f64,
    pub ci: Interval,
    pub per_context_scores: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSummary {
    pub class: PairClass,
    pub n: usize,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

impl GroupSummary {
    fn new(class: PairClass, values: &[f64]) -> Result<Self> {
        let Descriptive { mean, std, min, max } = descriptive_stats(values)?;
        Ok(GroupSummary { class, n: values.len(), mean, std, min, max })
    }
}

/// Etymological minus control, per summary statistic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Comparison {
    pub mean: f64,
    pub std: f64,
    pub max: f64,
    pub min: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TTests {
    /// Which of the two tests the summary quotes.
    pub headline: String,
    pub student: TTest,
    pub welch: Option<TTest>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub tool: Tool,
    pub config: ConfigEcho,
    pub definitions: BTreeMap<String, String>,
    pub pairs: Vec<PairReport>,
    pub groups: Vec<GroupSummary>,
    pub context_groups: Vec<GroupSummary>,
    pub comparison: Option<Comparison>,
    pub t_test: Option<TTests>,
    pub variance: Option<VarianceDecomposition>,
    pub matrix: SimilarityMatrix,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        canon::to_pretty(self)
    }

    /// Parses and checks a report. Field names and types are enforced by
    /// the serde types; the cross-field constraints are checked here.
    pub fn from_json(json: &str) -> Result<Self> {
        let report: Report = serde_json::from_str(json).map_err(|e| Error::format(e.line(), format!("report: {e}")))?;
        report.check()?;
        Ok(report)
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::format(0, format!("report: {msg}")));
        for p in &self.pairs {
            let name = format!("{}-{}", p.greek, p.latin);
            if p.per_context_scores.len() != p.context_counts.greek + p.context_counts.latin {
                return bad(format!("{name}: per_context_scores does not match context_counts"));
            }
            if p.ci.lo.partial_cmp(&p.ci.hi).is_none_or(|o| o.is_gt()) {
                return bad(format!("{name}: interval lo > hi"));
            }
            if p.metric != self.config.metric {
                return bad(format!("{name}: metric differs from config"));
            }
        }
        let m = &self.matrix;
        if m.cells.len() != m.greek_terms.len() || m.cells.iter().any(|row| row.len() != m.latin_terms.len()) {
            return bad("matrix shape does not match its term lists".into());
        }
        for g in &self.groups {
            let n = self.pairs.iter().filter(|p| p.class == g.class).count();
            if g.n != n {
                return bad(format!("group {} has n = {} but {n} pairs", g.class.as_str(), g.n));
            }
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    /// Round trip through the canonical encoding so every float holds
    /// exactly the value a reader of the file would see.
    fn canonical(self) -> Result<Self> {
        Self::from_json(&self.to_json()?)
    }

    pub fn group(&self, class: PairClass) -> Option<&GroupSummary> {
        self.groups.iter().find(|g| g.class == class)
    }
}

fn definitions() -> BTreeMap<String, String> {
    [
        ("score", "the configured metric; angular_mean = 1 - (2/pi) * angle between the two mean context embeddings"),
        ("avg_cosine", "mean cosine over all Greek x Latin context pairs"),
        ("genre_blend", "genre_alpha * angular_mean + (1 - genre_alpha) * genre_similarity"),
        ("genre_similarity", "multiset Jaccard overlap of the genre labels of the two terms' contexts"),
        (
            "per_context_scores",
            "angular similarity of each Greek context to the Latin mean, then each Latin context to the Greek mean",
        ),
        ("ci", "percentile bootstrap interval of context_mean, the mean of per_context_scores"),
        ("t_test", "etymological minus control pair scores; headline = pooled-variance Student test"),
        ("variance", "one-way random-effects split of per-context scores by context genre; unknown genre excluded"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect()
}

struct TermData<'a> {
    vectors: Vec<&'a EmbeddingVector>,
    mean: TermEmbedding,
}

fn term_data<'a>(contexts: &ContextSet, embeddings: &'a [EmbeddingVector]) -> Result<HashMap<String, TermData<'a>>> {
    let mut by_id: HashMap<(&str, &str), &EmbeddingVector> = HashMap::new();
    for v in embeddings {
        by_id.insert((v.term.as_str(), v.context_id.as_str()), v);
    }
    let mut out = HashMap::new();
    for (term, windows) in &contexts.contexts {
        let mut vectors = Vec::with_capacity(windows.len());
        for w in windows {
            let v = by_id.get(&(term.as_str(), w.context_id.as_str())).ok_or_else(|| {
                Error::Config(format!("no embedding for context {}; rerun the embed stage", w.context_id))
            })?;
            vectors.push(*v);
        }
        vectors.sort_by(|a, b| a.context_id.cmp(&b.context_id));
        let owned: Vec<EmbeddingVector> = vectors.iter().map(|v| (*v).clone()).collect();
        let mean = mean_term_embedding(&owned).map_err(|e| Error::item(term.clone(), e))?;
        out.insert(term.clone(), TermData { vectors, mean });
    }
    Ok(out)
}

fn pair_report(
    pair: &TermPair,
    terms: &HashMap<String, TermData>,
    contexts: &ContextSet,
    config: &AnalysisConfig,
) -> Result<PairReport> {
    let get = |lemma: &str| terms.get(lemma).ok_or_else(|| Error::MissingTerm(lemma.to_string()));
    let (g, l) = (get(&pair.greek.lemma)?, get(&pair.latin.lemma)?);
    let angular_mean = pair_similarity(pair, &g.mean, &l.mean)?.score;
    let gv: Vec<EmbeddingVector> = g.vectors.iter().map(|v| (*v).clone()).collect();
    let lv: Vec<EmbeddingVector> = l.vectors.iter().map(|v| (*v).clone()).collect();
    let avg_cosine = avg_contextual_cosine(&gv, &lv)?;
    let genres = |lemma: &str| contexts.contexts[lemma].iter().map(|c| c.genre.as_str()).collect::<Vec<_>>();
    let genre_similarity = genre_overlap(genres(&pair.greek.lemma), genres(&pair.latin.lemma));
    let genre_blend = genre_conditioned_similarity(angular_mean, genre_similarity, config.genre_alpha)?;
    let scores = Scores { angular_mean, avg_cosine, genre_blend };

    let mut per_context = Vec::with_capacity(gv.len() + lv.len());
    for v in &gv {
        per_context.push(angular_similarity(&v.components, &l.mean.mean)?);
    }
    for v in &lv {
        per_context.push(angular_similarity(&v.components, &g.mean.mean)?);
    }
    let ci = bootstrap_ci(
        &per_context,
        config.bootstrap_iterations,
        config.bootstrap_level,
        config.resolved_bootstrap_seed(),
    )?;
    Ok(PairReport {
        greek: pair.greek.lemma.clone(),
        latin: pair.latin.lemma.clone(),
        class: pair.pair_class,
        gloss: pair.gloss.clone(),
        metric: config.metric,
        score: scores.get(config.metric),
        scores,
        genre_similarity,
        context_counts: ContextCounts { greek: gv.len(), latin: lv.len() },
        context_mean: mean(&per_context),
        ci: Interval { level: ci.level, lo: ci.lo, hi: ci.hi },
        per_context_scores: per_context,
    })
}

const CLASSES: [PairClass; 2] = [PairClass::Etymological, PairClass::Control];

fn class_values<'a>(pairs: &'a [PairReport], f: impl Fn(&'a PairReport) -> Vec<f64>) -> Vec<(PairClass, Vec<f64>)> {
    CLASSES
        .iter()
        .map(|&c| (c, pairs.iter().filter(|p| p.class == c).flat_map(&f).collect::<Vec<f64>>()))
        .filter(|(_, v)| !v.is_empty())
        .collect()
}

fn summaries(values: &[(PairClass, Vec<f64>)]) -> Result<Vec<GroupSummary>> {
    values.iter().map(|(c, v)| GroupSummary::new(*c, v)).collect()
}

fn t_tests(by_class: &[(PairClass, Vec<f64>)], warnings: &mut Vec<String>) -> Option<TTests> {
    let [(_, ety), (_, ctl)] = by_class else {
        warnings.push("t-test skipped: needs both etymological and control pairs".into());
        return None;
    };
    let student = match student_t_test(ety, ctl) {
        Ok(t) => t,
        Err(e) => {
            warnings.push(format!("t-test skipped: {e}"));
            return None;
        }
    };
    let welch = welch_t_test(ety, ctl).map_err(|e| warnings.push(format!("Welch t-test skipped: {e}"))).ok();
    Some(TTests { headline: "student".into(), student, welch })
}

fn genre_variance(
    pairs: &[PairReport],
    contexts: &ContextSet,
    warnings: &mut Vec<String>,
) -> Option<VarianceDecomposition> {
    let genre_of: HashMap<(&str, &str), &str> = contexts
        .contexts
        .iter()
        .flat_map(|(t, ws)| ws.iter().map(move |w| ((t.as_str(), w.context_id.as_str()), w.genre.as_str())))
        .collect();
    let mut groups: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    let sorted_ids = |term: &str| {
        let mut ids: Vec<&str> = contexts.contexts[term].iter().map(|w| w.context_id.as_str()).collect();
        ids.sort_unstable();
        ids
    };
    for p in pairs {
        let (g, l) = (p.greek.as_str(), p.latin.as_str());
        let ids = sorted_ids(g).into_iter().map(|id| (g, id)).chain(sorted_ids(l).into_iter().map(|id| (l, id)));
        for (key, score) in ids.zip(&p.per_context_scores) {
            let genre = genre_of[&key];
            if genre != UNKNOWN_GENRE {
                groups.entry(genre.to_string()).or_default().push(*score);
            }
        }
    }
    match variance_components(&groups) {
        Ok(v) => Some(v),
        Err(e) => {
            warnings.push(format!("genre variance skipped: {e}"));
            None
        }
    }
}

/// Builds the report from balanced contexts and their embeddings.
pub fn analyze(
    pairs: &[TermPair],
    contexts: &ContextSet,
    embeddings: &[EmbeddingVector],
    config: &AnalysisConfig,
) -> Result<Report> {
    let run = || {
        if pairs.is_empty() {
            return Err(Error::Config("the term-pair file lists no pairs".into()));
        }
        let terms = term_data(contexts, embeddings)?;
        let pair_reports = pairs
            .iter()
            .map(|p| {
                pair_report(p, &terms, contexts, config)
                    .map_err(|e| Error::item(format!("pair {}-{}", p.greek.lemma, p.latin.lemma), e))
            })
            .collect::<Result<Vec<_>>>()?;

        let mut warnings = contexts.warnings.clone();
        let by_class = class_values(&pair_reports, |p| vec![p.score]);
        let groups = summaries(&by_class)?;
        let context_groups = summaries(&class_values(&pair_reports, |p| p.per_context_scores.clone()))?;
        let comparison = match groups.as_slice() {
            [e, c] => {
                Some(Comparison { mean: e.mean - c.mean, std: e.std - c.std, max: e.max - c.max, min: e.min - c.min })
            }
            _ => None,
        };
        let t_test = t_tests(&by_class, &mut warnings);
        let variance = genre_variance(&pair_reports, contexts, &mut warnings);

        let mut greek_terms = Vec::new();
        let mut latin_terms = Vec::new();
        for p in pairs {
            if !greek_terms.contains(&p.greek.lemma) {
                greek_terms.push(p.greek.lemma.clone());
            }
            if !latin_terms.contains(&p.latin.lemma) {
                latin_terms.push(p.latin.lemma.clone());
            }
        }
        let means: HashMap<String, TermEmbedding> = terms.iter().map(|(k, v)| (k.clone(), v.mean.clone())).collect();
        let matrix = build_similarity_matrix(&means, &greek_terms, &latin_terms)?;

        let dim = embeddings.first().map(|v| v.dim).unwrap_or(0);
        let report = Report {
            tool: Tool { name: TOOL_NAME.into(), version: VERSION.into() },
            config: ConfigEcho {
                window_size: contexts.params.window_size,
                min_contexts: contexts.params.min_contexts,
                seed: contexts.params.seed,
                metric: config.metric,
                genre_alpha: config.genre_alpha,
                bootstrap: BootstrapEcho {
                    iterations: config.bootstrap_iterations,
                    level: config.bootstrap_level,
                    seed: config.resolved_bootstrap_seed(),
                },
                rng: rng::ALGORITHM.into(),
                backend: BackendEcho::new(&config.backend, dim),
                documents: contexts.documents.clone(),
            },
            definitions: definitions(),
            pairs: pair_reports,
            groups,
            context_groups,
            comparison,
            t_test,
            variance,
            matrix,
            warnings,
        };
        report.canonical()
    };
    run().stage("analyze")
}

/// ingest → extract → balance → embed → analyze, all in memory.
pub fn run_pipeline(config: &AnalysisConfig) -> Result<Report> {
    config.validate()?;
    let pairs = read_pairs(config.pairs_path()?).stage("pairs")?;
    let store = ingest(config)?;
    let contexts = extract(&store, &pairs, config.extract_params())?;
    let backend = EmbeddingBackend::new(config.backend.clone()).stage("embed")?;
    let embeddings = embed(&contexts, &backend)?;
    analyze(&pairs, &contexts, &embeddings, config)
}

/// File names of the stage artifacts inside the output directory.
pub mod artifacts {
    pub const CORPUS: &str = "corpus.json";
    pub const CONTEXTS: &str = "contexts.json";
    pub const BACKEND: &str = "backend.json";
    pub const EMBEDDINGS: &str = "embeddings.jsonl";
    pub const REPORT_JSON: &str = "report.json";
    pub const REPORT_MD: &str = "report.md";
    pub const FIGURES: &str = "figures";
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

impl ContextSet {
    pub fn to_json(&self) -> Result<String> {
        canon::to_pretty(self)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::format(e.line(), format!("contexts: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_defaults() {
        let c = AnalysisConfig::default();
        assert_eq!((c.window_size, c.min_contexts, c.seed), (2, 50, 42));
        assert_eq!(c.bootstrap_iterations, 10_000);
        assert_eq!(c.resolved_bootstrap_seed(), 42);
        assert_eq!(c.metric, Metric::AngularMean);
        let parsed: AnalysisConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(parsed, c);
    }

    #[test]
    fn config_validation() {
        let mut c = AnalysisConfig { min_contexts: 0, ..Default::default() };
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        c.min_contexts = 1;
        c.bootstrap_level = 1.0;
        assert!(c.validate().is_err());
        assert!(serde_json::from_str::<AnalysisConfig>(r#"{"windw": 3}"#).is_err());
    }
}
