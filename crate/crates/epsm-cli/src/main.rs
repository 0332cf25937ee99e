//! `epsm` command line: corpus generation, single-pattern search, the
//! benchmark protocol, and randomized self-tests.
//!
//! Exit codes: 0 success, 1 search found nothing, 2 usage error, 3 runtime
//! error. Results go to stdout, diagnostics to stderr. The `EPSM_BACKEND`
//! environment variable (`reference` or `simd`) forces a backend.

mod escape;
mod selftest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Parser, Subcommand, ValueEnum};

use epsm::baselines::{naive_search, sbndm_q_search, shift_or_search};
use epsm::epsm_core::{epsm_a, epsm_b, epsm_c, search, Occurrences, Pattern, Text};
use epsm::packed_word::Backend;
use epsm_bench::{
    emit_csv, generate_corpus, render_table, run_benchmark, Algorithm, BenchConfig, BenchError,
    CorpusKind, CorpusSpec, DEFAULT_LENGTHS,
};

use crate::escape::unescape_pattern;
use crate::selftest::InjectFault;

#[derive(Parser)]
#[command(
    name = "epsm",
    version,
    about = "Packed exact string matching: search, corpora, and benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Genome,
    Protein,
    English,
}

impl From<GenKind> for CorpusKind {
    fn from(kind: GenKind) -> CorpusKind {
        match kind {
            GenKind::Genome => CorpusKind::Genome,
            GenKind::Protein => CorpusKind::Protein,
            GenKind::English => CorpusKind::English,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchAlgo {
    Epsm,
    EpsmA,
    EpsmB,
    EpsmC,
    Naive,
    ShiftOr,
    SbndmQ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Count,
    Positions,
}

#[derive(Subcommand)]
enum Command {
    /// Write a deterministic corpus file
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Corpus size in bytes
        #[arg(long, default_value_t = 1_048_576)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Find all occurrences of a pattern in a text file
    Search {
        #[arg(long)]
        text: PathBuf,
        /// Pattern literal; \xNN escapes express arbitrary bytes
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum, default_value_t = SearchAlgo::Epsm)]
        algo: SearchAlgo,
        #[arg(long, value_enum, default_value_t = OutputMode::Count)]
        mode: OutputMode,
        /// Gram size for --algo sbndm-q
        #[arg(long, default_value_t = 2)]
        q: usize,
    },
    /// Time the searchers over randomly extracted pattern sets
    Bench {
        /// Benchmark an existing file instead of generating a corpus
        #[arg(long, conflicts_with_all = ["kind", "size", "corpus_seed"])]
        text: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GenKind::Genome)]
        kind: GenKind,
        /// Generated corpus size in bytes
        #[arg(long, default_value_t = 1_048_576)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        corpus_seed: u64,
        /// Pattern-extraction seed
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comma-separated pattern lengths
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_LENGTHS)]
        lengths: Vec<usize>,
        /// Patterns per length
        #[arg(long, default_value_t = 100)]
        patterns: usize,
        /// Comma-separated subset of epsm,naive,shift_or,sbndm_q
        #[arg(long, value_delimiter = ',', default_value = "epsm,naive,shift_or,sbndm_q")]
        algos: Vec<String>,
        /// Timed repetitions per pattern (median taken)
        #[arg(long, default_value_t = 1)]
        reps: usize,
        /// Gram size for sbndm_q
        #[arg(long, default_value_t = 2)]
        q: usize,
        /// CSV destination; `-` prints CSV to stdout and the table to stderr
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
    /// Randomized backend- and oracle-equivalence sweeps
    Selftest {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Corrupt results on purpose to prove mismatches are caught
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<InjectFault>,
    },
}

/// A failure plus the exit-code class it belongs to.
enum CliError {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

fn usage<T>(err: impl Into<anyhow::Error>) -> Result<T, CliError> {
    Err(CliError::Usage(err.into()))
}

fn runtime<T>(err: impl Into<anyhow::Error>) -> Result<T, CliError> {
    Err(CliError::Runtime(err.into()))
}

fn classify_bench_error(err: BenchError) -> CliError {
    match err {
        BenchError::Io { .. }
        | BenchError::Disagreement { .. }
        | BenchError::Csv(_)
        | BenchError::MalformedChecksum(_)
        | BenchError::PartialRow { .. } => CliError::Runtime(err.into()),
        _ => CliError::Usage(err.into()),
    }
}

fn backend_from_env() -> Result<Backend, CliError> {
    Backend::from_env().map_err(|e| CliError::Usage(e.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Gen { kind, size, seed, out } => cmd_gen(kind, size, seed, &out),
        Command::Search { text, pattern, algo, mode, q } => {
            cmd_search(&text, &pattern, algo, mode, q)
        }
        Command::Bench {
            text,
            kind,
            size,
            corpus_seed,
            seed,
            lengths,
            patterns,
            algos,
            reps,
            q,
            csv_out,
        } => cmd_bench(BenchArgs {
            text,
            kind,
            size,
            corpus_seed,
            seed,
            lengths,
            patterns,
            algos,
            reps,
            q,
            csv_out,
        }),
        Command::Selftest { trials, seed, inject_fault } => cmd_selftest(trials, seed, inject_fault),
    }
}

fn cmd_gen(kind: GenKind, size: usize, seed: u64, out: &Path) -> Result<ExitCode, CliError> {
    let spec = CorpusSpec::generated(kind.into(), size, seed);
    let corpus = generate_corpus(&spec).map_err(classify_bench_error)?;
    match fs::write(out, corpus.bytes()) {
        Ok(()) => {
            eprintln!("wrote {} bytes to {}", corpus.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Err(err) => runtime(anyhow!(err).context(format!("writing {}", out.display()))),
    }
}

fn cmd_search(
    text_path: &Path,
    pattern: &str,
    algo: SearchAlgo,
    mode: OutputMode,
    q: usize,
) -> Result<ExitCode, CliError> {
    let bytes = match fs::read(text_path) {
        Ok(bytes) => bytes,
        Err(err) => {
            return runtime(anyhow!(err).context(format!("reading {}", text_path.display())))
        }
    };
    let text = Text::new(bytes);
    let pattern_bytes = unescape_pattern(pattern).map_err(CliError::Usage)?;
    let pattern = match Pattern::new(pattern_bytes) {
        Ok(p) => p,
        Err(err) => return usage(err),
    };
    let backend = backend_from_env()?;

    let occurrences = run_search_algo(algo, &pattern, &text, backend, q)?;
    match mode {
        OutputMode::Count => println!("{}", occurrences.len()),
        OutputMode::Positions => {
            for s in &occurrences {
                println!("{s}");
            }
        }
    }
    if occurrences.is_empty() {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn run_search_algo(
    algo: SearchAlgo,
    p: &Pattern,
    t: &Text,
    backend: Backend,
    q: usize,
) -> Result<Occurrences, CliError> {
    let occ = match algo {
        SearchAlgo::Epsm => search(p, t, backend),
        SearchAlgo::EpsmA => epsm_a(p, t, backend),
        SearchAlgo::EpsmB => match epsm_b(p, t, backend) {
            Ok(occ) => occ,
            Err(err) => return usage(err),
        },
        SearchAlgo::EpsmC => match epsm_c(p, t, backend) {
            Ok(occ) => occ,
            Err(err) => return usage(err),
        },
        SearchAlgo::Naive => naive_search(p, t),
        SearchAlgo::ShiftOr => match shift_or_search(p, t) {
            Ok(occ) => occ,
            Err(err) => return usage(err),
        },
        SearchAlgo::SbndmQ => match sbndm_q_search(p, t, q) {
            Ok(occ) => occ,
            Err(err) => return usage(err),
        },
    };
    Ok(occ)
}

struct BenchArgs {
    text: Option<PathBuf>,
    kind: GenKind,
    size: usize,
    corpus_seed: u64,
    seed: u64,
    lengths: Vec<usize>,
    patterns: usize,
    algos: Vec<String>,
    reps: usize,
    q: usize,
    csv_out: Option<PathBuf>,
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode, CliError> {
    let (corpus, label) = match &args.text {
        Some(path) => {
            let spec = CorpusSpec::from_file(path.clone());
            let corpus = generate_corpus(&spec).map_err(classify_bench_error)?;
            let label = path
                .file_stem()
                .map_or_else(|| "file".to_string(), |s| s.to_string_lossy().into_owned());
            (corpus, label)
        }
        None => {
            let kind: CorpusKind = args.kind.into();
            let spec = CorpusSpec::generated(kind, args.size, args.corpus_seed);
            let corpus = generate_corpus(&spec).map_err(classify_bench_error)?;
            (corpus, kind.name().to_string())
        }
    };

    let mut algorithms = Vec::with_capacity(args.algos.len());
    for name in &args.algos {
        let algo: Algorithm = name.parse().map_err(classify_bench_error)?;
        if !algorithms.contains(&algo) {
            algorithms.push(algo);
        }
    }

    let mut config = BenchConfig::new(label);
    config.lengths = args.lengths;
    config.patterns_per_length = args.patterns;
    config.seed = args.seed;
    config.algorithms = algorithms;
    config.repetitions = args.reps;
    config.q = args.q;
    config.backend = backend_from_env()?;

    eprintln!(
        "bench: corpus `{}` ({} bytes), backend={}, {} patterns per length",
        config.corpus_label,
        corpus.len(),
        config.backend.name(),
        config.patterns_per_length
    );
    let report = run_benchmark(&corpus, &config).map_err(classify_bench_error)?;

    let csv = emit_csv(&report);
    let table = render_table(&report);
    match args.csv_out.as_deref() {
        Some(path) if path == Path::new("-") => {
            print!("{csv}");
            eprint!("{table}");
        }
        Some(path) => {
            if let Err(err) = fs::write(path, &csv) {
                return runtime(anyhow!(err).context(format!("writing {}", path.display())));
            }
            print!("{table}");
            eprintln!("csv written to {}", path.display());
        }
        None => {
            print!("{csv}");
            eprint!("{table}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest(
    trials: usize,
    seed: u64,
    fault: Option<InjectFault>,
) -> Result<ExitCode, CliError> {
    if trials == 0 {
        return usage(anyhow!("--trials must be at least 1"));
    }
    let backend = backend_from_env()?;
    match selftest::run(trials, seed, backend, fault) {
        Ok(()) => Ok(ExitCode::SUCCESS),
        Err(err) => runtime(err.context("selftest found a mismatch")),
    }
}
