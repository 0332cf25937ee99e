//! Timed benchmark runs over extracted pattern sets.

use std::fmt;
use std::hint::black_box;
use std::str::FromStr;
use std::time::Instant;

use epsm::baselines::{naive_search, sbndm_q_search, shift_or_search, ShiftOr};
use epsm::epsm_core::{search, Occurrences, Pattern, Text};
use epsm::packed_word::Backend;

use crate::{extract_patterns, BenchError};

/// The searchers the harness can time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// The length-dispatched EPSM searcher.
    Epsm,
    /// Naive window scan.
    Naive,
    /// Bit-parallel Shift-Or (patterns up to 64 characters).
    ShiftOr,
    /// Simplified backward q-gram matcher.
    SbndmQ,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] =
        [Algorithm::Epsm, Algorithm::Naive, Algorithm::ShiftOr, Algorithm::SbndmQ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Epsm => "epsm",
            Algorithm::Naive => "naive",
            Algorithm::ShiftOr => "shift_or",
            Algorithm::SbndmQ => "sbndm_q",
        }
    }

    /// Whether this algorithm accepts patterns of length `m` (with gram size
    /// `q` where it applies).
    pub fn supports(self, m: usize, q: usize) -> bool {
        match self {
            Algorithm::Epsm | Algorithm::Naive => true,
            Algorithm::ShiftOr => m <= ShiftOr::MAX_PATTERN_LEN,
            Algorithm::SbndmQ => q >= 1 && q <= m && m <= ShiftOr::MAX_PATTERN_LEN,
        }
    }

    fn run(self, p: &Pattern, t: &Text, backend: Backend, q: usize) -> Occurrences {
        match self {
            Algorithm::Epsm => search(p, t, backend),
            Algorithm::Naive => naive_search(p, t),
            Algorithm::ShiftOr => shift_or_search(p, t).expect("supports() checked the length"),
            Algorithm::SbndmQ => sbndm_q_search(p, t, q).expect("supports() checked q and m"),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Algorithm, BenchError> {
        match s {
            "epsm" => Ok(Algorithm::Epsm),
            "naive" => Ok(Algorithm::Naive),
            "shift_or" => Ok(Algorithm::ShiftOr),
            "sbndm_q" => Ok(Algorithm::SbndmQ),
            other => Err(BenchError::UnknownAlgorithm(other.to_string())),
        }
    }
}

/// The pattern lengths of the short-pattern protocol.
pub const DEFAULT_LENGTHS: [usize; 10] = [2, 4, 6, 8, 12, 16, 20, 24, 28, 32];
/// Desk-scale default; the full protocol uses 1000.
pub const DEFAULT_PATTERNS_PER_LENGTH: usize = 100;

/// Benchmark parameters.
#[derive(Debug, Clone)]
pub struct BenchConfig {
    /// Label recorded in the `corpus` column.
    pub corpus_label: String,
    pub lengths: Vec<usize>,
    pub patterns_per_length: usize,
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
    /// Timed runs per pattern; the per-pattern time is the median of these.
    pub repetitions: usize,
    /// Gram size for [`Algorithm::SbndmQ`].
    pub q: usize,
    pub backend: Backend,
}

impl BenchConfig {
    pub fn new(corpus_label: impl Into<String>) -> BenchConfig {
        BenchConfig {
            corpus_label: corpus_label.into(),
            lengths: DEFAULT_LENGTHS.to_vec(),
            patterns_per_length: DEFAULT_PATTERNS_PER_LENGTH,
            seed: 42,
            algorithms: Algorithm::ALL.to_vec(),
            repetitions: 1,
            q: 2,
            backend: Backend::detect(),
        }
    }
}

/// Aggregated measurements for one `(corpus, algorithm, m)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct RowStats {
    /// Mean per-pattern wall time in milliseconds, preprocessing included.
    pub mean_ms: f64,
    /// Median per-pattern wall time in milliseconds.
    pub median_ms: f64,
    /// Occurrences summed over all patterns.
    pub total_occ: u64,
    /// Order-independent digest of every reported position.
    pub checksum: u64,
}

/// One report row. `stats` is `None` when the algorithm does not support
/// this pattern length.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub corpus: String,
    pub algo: Algorithm,
    pub m: usize,
    pub patterns: usize,
    pub stats: Option<RowStats>,
}

/// The timing table of one run: `lengths x algorithms` rows.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

const CHECKSUM_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

fn mix64(mut x: u64) -> u64 {
    x ^= x >> 30;
    x = x.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^= x >> 31;
    x
}

/// Order-independent digest contribution of one occurrence set.
pub fn occurrence_checksum(occ: &Occurrences) -> u64 {
    occ.iter().fold(0u64, |acc, &s| {
        acc.wrapping_add(mix64((s as u64 + 1).wrapping_mul(CHECKSUM_SALT)))
    })
}

fn median(sorted: &mut [f64]) -> f64 {
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len();
    if n == 0 {
        return 0.0;
    }
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

fn time_row(
    t: &Text,
    algo: Algorithm,
    m: usize,
    patterns: &[Pattern],
    cfg: &BenchConfig,
) -> BenchRow {
    if !algo.supports(m, cfg.q) {
        return BenchRow {
            corpus: cfg.corpus_label.clone(),
            algo,
            m,
            patterns: patterns.len(),
            stats: None,
        };
    }
    let mut per_pattern_ms = Vec::with_capacity(patterns.len());
    let mut total_occ = 0u64;
    let mut checksum = 0u64;
    for p in patterns {
        let mut rep_ms = Vec::with_capacity(cfg.repetitions);
        let mut occ = Occurrences::empty();
        for _ in 0..cfg.repetitions {
            let started = Instant::now();
            occ = black_box(algo.run(black_box(p), black_box(t), cfg.backend, cfg.q));
            rep_ms.push(started.elapsed().as_secs_f64() * 1e3);
        }
        per_pattern_ms.push(median(&mut rep_ms));
        total_occ += occ.len() as u64;
        checksum = checksum.wrapping_add(occurrence_checksum(&occ));
    }
    let mean_ms = per_pattern_ms.iter().sum::<f64>() / per_pattern_ms.len() as f64;
    let median_ms = median(&mut per_pattern_ms);
    BenchRow {
        corpus: cfg.corpus_label.clone(),
        algo,
        m,
        patterns: patterns.len(),
        stats: Some(RowStats { mean_ms, median_ms, total_occ, checksum }),
    }
}

/// Seed for the pattern set of length `m`, derived so every algorithm sees
/// the same patterns.
fn pattern_seed(base: u64, m: usize) -> u64 {
    mix64(base ^ (m as u64).wrapping_mul(CHECKSUM_SALT))
}

/// Runs the configured algorithms over freshly extracted pattern sets and
/// checks that all of them agree on occurrence counts and checksums for each
/// pattern length. Timing is strictly sequential; every timed span includes
/// the algorithm's preprocessing.
pub fn run_benchmark(t: &Text, cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    if cfg.lengths.is_empty() {
        return Err(BenchError::NoLengths);
    }
    if cfg.algorithms.is_empty() {
        return Err(BenchError::NoAlgorithms);
    }
    if cfg.patterns_per_length == 0 {
        return Err(BenchError::NoPatterns);
    }
    if cfg.repetitions == 0 {
        return Err(BenchError::NoRepetitions);
    }
    for &m in &cfg.lengths {
        if m == 0 || m > t.len() {
            return Err(BenchError::LengthExceedsCorpus { m, n: t.len() });
        }
    }

    let mut rows = Vec::with_capacity(cfg.lengths.len() * cfg.algorithms.len());
    for &m in &cfg.lengths {
        let patterns =
            extract_patterns(t, m, cfg.patterns_per_length, pattern_seed(cfg.seed, m))?;
        let mut reference: Option<(Algorithm, u64, u64)> = None;
        for &algo in &cfg.algorithms {
            let row = time_row(t, algo, m, &patterns, cfg);
            if let Some(stats) = &row.stats {
                match reference {
                    None => reference = Some((algo, stats.total_occ, stats.checksum)),
                    Some((first, occ, sum)) => {
                        if occ != stats.total_occ || sum != stats.checksum {
                            return Err(BenchError::Disagreement {
                                m,
                                first: first.name(),
                                first_occ: occ,
                                first_sum: sum,
                                second: algo.name(),
                                second_occ: stats.total_occ,
                                second_sum: stats.checksum,
                            });
                        }
                    }
                }
            }
            rows.push(row);
        }
    }
    Ok(BenchReport { rows })
}
