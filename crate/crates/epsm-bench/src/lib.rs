//! Benchmark harness for the `epsm` searchers.
//!
//! Reproduces the short-pattern measurement protocol at configurable scale:
//! deterministic corpus generation (genome / protein / pseudo-English / raw
//! file), random pattern extraction, sequential timed runs whose spans
//! include per-pattern preprocessing, and report emission as exact-schema
//! CSV or a per-corpus table. Every run cross-checks that all participating
//! algorithms report identical occurrence counts and position checksums.

mod corpus;
mod report;
mod run;

pub use corpus::{extract_patterns, generate_corpus, CorpusKind, CorpusSpec};
pub use report::{emit_csv, emit_report, parse_csv, render_table, ReportFormat};
pub use run::{
    occurrence_checksum, run_benchmark, Algorithm, BenchConfig, BenchReport, BenchRow, RowStats,
    DEFAULT_LENGTHS, DEFAULT_PATTERNS_PER_LENGTH,
};

use std::path::PathBuf;

/// Errors from corpus handling, configuration, runs, and report parsing.
#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("corpus file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("corpus of kind `file` requires a path")]
    MissingPath,
    #[error("corpus size must be at least 1")]
    EmptyCorpus,
    #[error("corpus file {path} holds {have} bytes, {need} requested")]
    CorpusFileTooSmall { path: PathBuf, have: usize, need: usize },
    #[error("pattern length {m} exceeds corpus size {n}")]
    LengthExceedsCorpus { m: usize, n: usize },
    #[error("patterns_per_length must be at least 1")]
    NoPatterns,
    #[error("repetitions must be at least 1")]
    NoRepetitions,
    #[error("no algorithms selected")]
    NoAlgorithms,
    #[error("no pattern lengths selected")]
    NoLengths,
    #[error("unknown algorithm `{0}` (expected epsm, naive, shift_or, or sbndm_q)")]
    UnknownAlgorithm(String),
    #[error(
        "algorithms disagree at m={m}: {first} found occ={first_occ} checksum={first_sum:016x}, \
         {second} found occ={second_occ} checksum={second_sum:016x}"
    )]
    Disagreement {
        m: usize,
        first: &'static str,
        first_occ: u64,
        first_sum: u64,
        second: &'static str,
        second_occ: u64,
        second_sum: u64,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("malformed checksum field `{0}`")]
    MalformedChecksum(String),
    #[error("row for {algo} at m={m} has a mix of present and missing stats")]
    PartialRow { algo: String, m: usize },
}
