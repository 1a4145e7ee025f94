//! Cross-lingual semantic similarity between Ancient Greek and Latin terms.
//!
//! The pipeline reads TEI or plain-text corpora, extracts sentence windows
//! around each term, embeds them, compares Greek and Latin mean embeddings
//! and summarizes etymological against control pairs.

pub mod canon;
pub mod context;
pub mod corpus;
pub mod embedding;
pub mod error;
pub mod report;
pub mod rng;
pub mod similarity;
pub mod stats;

pub use error::{Error, Result};
pub use report::{run_pipeline, AnalysisConfig, Report};
