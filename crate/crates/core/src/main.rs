use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lexsim::context::read_pairs;
use lexsim::corpus::CorpusStore;
use lexsim::embedding::{load_embeddings, save_embeddings, BackendConfig, BackendKind, EmbeddingBackend};
use lexsim::report::{
    analyze, artifacts, embed, extract, ingest, read_file, render_figures, render_report, write_file, AnalysisConfig,
    ContextSet, ExtractParams, FigureKind, Report, ReportFormat,
};
use lexsim::similarity::Metric;
use lexsim::{canon, Error, Result};

#[derive(Parser)]
#[command(name = "lexsim", version, about = "Greek–Latin cross-lingual term similarity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse the corpus into corpus.json.
    Ingest(Opts),
    /// Extract and balance context windows into contexts.json.
    Extract(Opts),
    /// Embed every context into embeddings.jsonl.
    Embed(Opts),
    /// Compute similarities and statistics into report.json.
    Analyze(Opts),
    /// Render report.md and figures from report.json.
    Report(Opts),
    /// Run every stage.
    Run(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Mock,
    Transformer,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Angular,
    AvgCosine,
    GenreBlend,
}

#[derive(Args, Clone)]
struct Opts {
    /// Directory holding the corpus files.
    #[arg(long, default_value = ".")]
    corpus_dir: PathBuf,
    /// Corpus manifest (default: manifest.json in the corpus directory).
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Term-pair file.
    #[arg(long)]
    pairs: Option<PathBuf>,
    #[arg(long, default_value_t = lexsim::context::DEFAULT_WINDOW)]
    window: usize,
    #[arg(long, default_value_t = lexsim::context::DEFAULT_MIN_CONTEXTS)]
    min_contexts: usize,
    /// Sampling seed.
    #[arg(long, default_value_t = lexsim::context::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value = "mock")]
    backend: BackendArg,
    /// Model directory for the transformer backend.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Temporal projection file for the transformer backend.
    #[arg(long)]
    projection: Option<PathBuf>,
    /// Mock backend dimension.
    #[arg(long, default_value_t = lexsim::embedding::REFERENCE_DIM)]
    dim: usize,
    /// Mock backend seed (default: --seed).
    #[arg(long)]
    mock_seed: Option<u64>,
    #[arg(long, default_value_t = lexsim::embedding::DEFAULT_MAX_SEQUENCE_LENGTH)]
    max_seq_len: usize,
    #[arg(long, value_enum, default_value = "angular")]
    metric: MetricArg,
    #[arg(long, default_value_t = lexsim::stats::DEFAULT_ITERATIONS)]
    bootstrap_iters: usize,
    /// Bootstrap seed (default: --seed).
    #[arg(long)]
    bootstrap_seed: Option<u64>,
    #[arg(long, default_value_t = lexsim::stats::DEFAULT_LEVEL)]
    bootstrap_level: f64,
    #[arg(long, default_value_t = lexsim::similarity::DEFAULT_GENRE_ALPHA)]
    genre_alpha: f64,
    /// Output directory for all artifacts.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

impl Opts {
    fn config(&self) -> AnalysisConfig {
        let mut backend = match self.backend {
            BackendArg::Mock => BackendConfig::mock(self.dim, self.mock_seed.unwrap_or(self.seed)),
            BackendArg::Transformer => BackendConfig {
                backend_id: "transformer".into(),
                kind: BackendKind::Transformer,
                model_locator: self.model.clone(),
                temporal_projection: self.projection.clone(),
                ..BackendConfig::default()
            },
        };
        backend.max_sequence_length = self.max_seq_len;
        AnalysisConfig {
            corpus_dir: self.corpus_dir.clone(),
            manifest: self.manifest.clone(),
            pairs: self.pairs.clone(),
            window_size: self.window,
            min_contexts: self.min_contexts,
            seed: self.seed,
            backend,
            metric: match self.metric {
                MetricArg::Angular => Metric::AngularMean,
                MetricArg::AvgCosine => Metric::AvgCosine,
                MetricArg::GenreBlend => Metric::GenreBlend,
            },
            bootstrap_iterations: self.bootstrap_iters,
            bootstrap_seed: self.bootstrap_seed,
            bootstrap_level: self.bootstrap_level,
            genre_alpha: self.genre_alpha,
            out_dir: Some(self.out.clone()),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }
}

fn warn_all(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn write_corpus(opts: &Opts, store: &CorpusStore) -> Result<()> {
    write_file(&opts.path(artifacts::CORPUS), &store.to_json()?)
}

fn write_contexts(opts: &Opts, contexts: &ContextSet) -> Result<()> {
    warn_all(&contexts.warnings);
    write_file(&opts.path(artifacts::CONTEXTS), &contexts.to_json()?)
}

fn load_contexts(opts: &Opts) -> Result<ContextSet> {
    ContextSet::from_json(&read_file(&opts.path(artifacts::CONTEXTS))?)
}

fn write_embeddings(
    opts: &Opts,
    config: &AnalysisConfig,
    vectors: &[lexsim::embedding::EmbeddingVector],
) -> Result<()> {
    write_file(&opts.path(artifacts::BACKEND), &canon::to_pretty(&config.backend)?)?;
    std::fs::create_dir_all(&opts.out).map_err(|e| Error::Io { path: opts.out.clone(), source: e })?;
    save_embeddings(&opts.path(artifacts::EMBEDDINGS), vectors)
}

fn write_report(opts: &Opts, report: &Report) -> Result<()> {
    let bytes = render_report(report, ReportFormat::Json)?;
    write_file(&opts.path(artifacts::REPORT_JSON), std::str::from_utf8(&bytes).expect("report JSON is UTF-8"))
}

fn render(opts: &Opts, report: &Report) -> Result<()> {
    let md = render_report(report, ReportFormat::Markdown)?;
    write_file(&opts.path(artifacts::REPORT_MD), std::str::from_utf8(&md).expect("markdown is UTF-8"))?;
    let (paths, warnings) = render_figures(report, &FigureKind::ALL, &opts.path(artifacts::FIGURES))?;
    warn_all(&warnings);
    for p in paths {
        println!("{}", p.display());
    }
    Ok(())
}

fn analyze_from_disk(opts: &Opts, config: &AnalysisConfig) -> Result<Report> {
    let pairs = read_pairs(config.pairs_path()?)?;
    let contexts = load_contexts(opts)?;
    let vectors = load_embeddings(&opts.path(artifacts::EMBEDDINGS))?;
    let backend_path = opts.path(artifacts::BACKEND);
    let backend: BackendConfig = serde_json::from_str(&read_file(&backend_path)?)
        .map_err(|e| Error::Format { line: e.line(), message: format!("{}: {e}", backend_path.display()) })?;
    analyze(&pairs, &contexts, &vectors, &AnalysisConfig { backend, ..config.clone() })
}

fn params(config: &AnalysisConfig) -> ExtractParams {
    ExtractParams { window_size: config.window_size, min_contexts: config.min_contexts, seed: config.seed }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Ingest(opts) => {
            let store = ingest(&opts.config())?;
            write_corpus(&opts, &store)?;
            println!("{} documents", store.documents().len());
        }
        Command::Extract(opts) => {
            let config = opts.config();
            config.validate()?;
            let pairs = read_pairs(config.pairs_path()?)?;
            let store = CorpusStore::from_json(&read_file(&opts.path(artifacts::CORPUS))?)?;
            let contexts = extract(&store, &pairs, params(&config))?;
            write_contexts(&opts, &contexts)?;
        }
        Command::Embed(opts) => {
            let config = opts.config();
            config.validate()?;
            let contexts = load_contexts(&opts)?;
            let backend = EmbeddingBackend::new(config.backend.clone())?;
            let vectors = embed(&contexts, &backend)?;
            write_embeddings(&opts, &config, &vectors)?;
            println!("{} embeddings", vectors.len());
        }
        Command::Analyze(opts) => {
            let config = opts.config();
            config.validate()?;
            let report = analyze_from_disk(&opts, &config)?;
            write_report(&opts, &report)?;
        }
        Command::Report(opts) => {
            let report = Report::load(&opts.path(artifacts::REPORT_JSON))?;
            render(&opts, &report)?;
        }
        Command::Run(opts) => {
            let config = opts.config();
            config.validate()?;
            let pairs = read_pairs(config.pairs_path()?)?;
            let store = ingest(&config)?;
            write_corpus(&opts, &store)?;
            let contexts = extract(&store, &pairs, params(&config))?;
            write_contexts(&opts, &contexts)?;
            let backend = EmbeddingBackend::new(config.backend.clone())?;
            let vectors = embed(&contexts, &backend)?;
            write_embeddings(&opts, &config, &vectors)?;
            let report = analyze(&pairs, &contexts, &vectors, &config)?;
            write_report(&opts, &report)?;
            render(&opts, &report)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
