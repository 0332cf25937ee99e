//! Corpus acquisition and pattern extraction.

use std::fs;
use std::path::PathBuf;

use epsm::epsm_core::{Pattern, Text};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::BenchError;

/// The corpus classes of the benchmark protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusKind {
    /// Uniform 4-symbol alphabet (`ACGT`).
    Genome,
    /// Uniform 20-symbol amino-acid alphabet.
    Protein,
    /// Natural-language text: a supplied file, or a deterministic
    /// pseudo-English generator when no file is given.
    English,
    /// Raw bytes read from `path`.
    File,
}

impl CorpusKind {
    pub fn name(self) -> &'static str {
        match self {
            CorpusKind::Genome => "genome",
            CorpusKind::Protein => "protein",
            CorpusKind::English => "english",
            CorpusKind::File => "file",
        }
    }
}

/// What corpus to produce. Generated corpora are reproducible from
/// `(kind, size, seed)`.
#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub kind: CorpusKind,
    /// Corpus size in bytes. For file-backed corpora, 0 means the whole file.
    pub size: usize,
    pub seed: u64,
    /// Source file for `File` (required) and `English` (optional).
    pub path: Option<PathBuf>,
}

impl CorpusSpec {
    pub fn generated(kind: CorpusKind, size: usize, seed: u64) -> CorpusSpec {
        CorpusSpec { kind, size, seed, path: None }
    }

    pub fn from_file(path: PathBuf) -> CorpusSpec {
        CorpusSpec { kind: CorpusKind::File, size: 0, seed: 0, path: Some(path) }
    }
}

const GENOME_ALPHABET: &[u8] = b"ACGT";
const PROTEIN_ALPHABET: &[u8] = b"ACDEFGHIKLMNPQRSTVWY";

/// Word-frequency table for the pseudo-English generator. Weights are rough
/// relative frequencies; fidelity to any real corpus is not claimed.
const ENGLISH_WORDS: &[(&str, u32)] = &[
    ("the", 530), ("of", 290), ("and", 270), ("to", 250), ("a", 210), ("in", 180),
    ("is", 110), ("that", 100), ("was", 90), ("he", 90), ("for", 85), ("it", 80),
    ("with", 75), ("as", 70), ("his", 65), ("on", 60), ("be", 55), ("at", 50),
    ("by", 50), ("had", 45), ("not", 45), ("are", 40), ("but", 40), ("from", 40),
    ("or", 35), ("have", 35), ("an", 35), ("they", 35), ("which", 30), ("one", 30),
    ("you", 30), ("were", 30), ("her", 28), ("all", 28), ("she", 26), ("there", 25),
    ("would", 25), ("their", 25), ("we", 24), ("him", 22), ("been", 22), ("has", 21),
    ("when", 20), ("who", 20), ("will", 20), ("more", 19), ("no", 18), ("if", 18),
    ("out", 17), ("so", 17), ("said", 16), ("what", 16), ("up", 15), ("its", 15),
    ("about", 14), ("into", 14), ("than", 13), ("them", 13), ("can", 12), ("only", 12),
    ("other", 11), ("new", 11), ("some", 11), ("time", 10), ("could", 10), ("these", 9),
    ("two", 9), ("may", 9), ("then", 9), ("do", 8), ("first", 8), ("any", 8),
    ("my", 8), ("now", 7), ("such", 7), ("like", 7), ("our", 7), ("over", 6),
    ("man", 6), ("me", 6), ("even", 6), ("most", 5), ("made", 5), ("after", 5),
    ("also", 5), ("did", 4), ("many", 4), ("before", 4), ("must", 4), ("through", 3),
];

fn uniform_corpus(alphabet: &[u8], size: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size).map(|_| alphabet[rng.random_range(0..alphabet.len())]).collect()
}

fn pseudo_english(size: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = WeightedIndex::new(ENGLISH_WORDS.iter().map(|&(_, w)| w)).unwrap();
    let mut out = Vec::with_capacity(size + 16);
    let mut sentence_len = 0usize;
    let mut capitalize = true;
    while out.len() < size {
        let word = ENGLISH_WORDS[dist.sample(&mut rng)].0;
        if capitalize {
            out.push(word.as_bytes()[0].to_ascii_uppercase());
            out.extend_from_slice(&word.as_bytes()[1..]);
            capitalize = false;
        } else {
            out.extend_from_slice(word.as_bytes());
        }
        sentence_len += 1;
        if sentence_len >= 4 && rng.random_bool(0.12) {
            out.push(b'.');
            sentence_len = 0;
            capitalize = true;
        } else if sentence_len >= 3 && rng.random_bool(0.06) {
            out.push(b',');
        }
        out.push(b' ');
    }
    out.truncate(size);
    out
}

fn read_corpus_file(path: &PathBuf, size: usize) -> Result<Vec<u8>, BenchError> {
    let mut bytes =
        fs::read(path).map_err(|source| BenchError::Io { path: path.clone(), source })?;
    if size > 0 {
        if bytes.len() < size {
            return Err(BenchError::CorpusFileTooSmall {
                path: path.clone(),
                have: bytes.len(),
                need: size,
            });
        }
        bytes.truncate(size);
    }
    Ok(bytes)
}

/// Produces the corpus described by `spec` as a search [`Text`].
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Text, BenchError> {
    let bytes = match spec.kind {
        CorpusKind::Genome | CorpusKind::Protein | CorpusKind::English if spec.size == 0 => {
            return Err(BenchError::EmptyCorpus);
        }
        CorpusKind::Genome => uniform_corpus(GENOME_ALPHABET, spec.size, spec.seed),
        CorpusKind::Protein => uniform_corpus(PROTEIN_ALPHABET, spec.size, spec.seed),
        CorpusKind::English => match &spec.path {
            Some(path) => read_corpus_file(path, spec.size)?,
            None => pseudo_english(spec.size, spec.seed),
        },
        CorpusKind::File => {
            let path = spec.path.as_ref().ok_or(BenchError::MissingPath)?;
            read_corpus_file(path, spec.size)?
        }
    };
    Ok(Text::new(bytes))
}

/// Draws `count` patterns of length `m` from `t`, start positions uniform
/// over `[0, n - m]`. Deterministic in `seed`; duplicates are possible.
pub fn extract_patterns(
    t: &Text,
    m: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Pattern>, BenchError> {
    let n = t.len();
    if m == 0 || m > n {
        return Err(BenchError::LengthExceedsCorpus { m, n });
    }
    if count == 0 {
        return Err(BenchError::NoPatterns);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bytes = t.bytes();
    Ok((0..count)
        .map(|_| {
            let at = rng.random_range(0..=n - m);
            Pattern::from_slice(&bytes[at..at + m]).expect("m >= 1")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use epsm::baselines::naive_search;

    #[test]
    fn generated_corpora_are_reproducible() {
        for kind in [CorpusKind::Genome, CorpusKind::Protein, CorpusKind::English] {
            let spec = CorpusSpec::generated(kind, 64, 1);
            let a = generate_corpus(&spec).unwrap();
            let b = generate_corpus(&spec).unwrap();
            assert_eq!(a, b, "{kind:?}");
        }
    }

    #[test]
    fn genome_uses_exactly_four_symbols() {
        let t = generate_corpus(&CorpusSpec::generated(CorpusKind::Genome, 1_000_000, 7)).unwrap();
        let mut seen = [false; 256];
        for &b in t.bytes() {
            seen[b as usize] = true;
        }
        assert_eq!(seen.iter().filter(|&&s| s).count(), 4);
        for sym in GENOME_ALPHABET {
            assert!(seen[*sym as usize]);
        }
    }

    #[test]
    fn protein_stays_within_twenty_symbols() {
        let t = generate_corpus(&CorpusSpec::generated(CorpusKind::Protein, 1_000_000, 7)).unwrap();
        let mut seen = [false; 256];
        for &b in t.bytes() {
            seen[b as usize] = true;
        }
        let count = seen.iter().filter(|&&s| s).count();
        assert!(count <= 20, "saw {count} distinct bytes");
        for &b in t.bytes() {
            assert!(PROTEIN_ALPHABET.contains(&b));
        }
    }

    #[test]
    fn pseudo_english_is_ascii_text() {
        let t = generate_corpus(&CorpusSpec::generated(CorpusKind::English, 10_000, 3)).unwrap();
        assert_eq!(t.len(), 10_000);
        assert!(t.bytes().iter().all(|b| b.is_ascii_alphabetic()
            || matches!(b, b' ' | b'.' | b',')));
        assert!(t.bytes().contains(&b' '));
    }

    #[test]
    fn file_kind_requires_path() {
        let spec = CorpusSpec { kind: CorpusKind::File, size: 0, seed: 0, path: None };
        assert!(matches!(generate_corpus(&spec), Err(BenchError::MissingPath)));
    }

    #[test]
    fn missing_file_is_an_input_error() {
        let spec = CorpusSpec::from_file(PathBuf::from("/nonexistent/corpus.bin"));
        assert!(matches!(generate_corpus(&spec), Err(BenchError::Io { .. })));
    }

    #[test]
    fn extracted_patterns_occur_in_text() {
        let t = generate_corpus(&CorpusSpec::generated(CorpusKind::Genome, 4096, 5)).unwrap();
        let patterns = extract_patterns(&t, 8, 50, 99).unwrap();
        assert_eq!(patterns.len(), 50);
        for p in &patterns {
            assert_eq!(p.len(), 8);
            assert!(!naive_search(p, &t).is_empty());
        }
    }

    #[test]
    fn extraction_is_deterministic() {
        let t = generate_corpus(&CorpusSpec::generated(CorpusKind::Protein, 512, 5)).unwrap();
        let a = extract_patterns(&t, 6, 1, 123).unwrap();
        let b = extract_patterns(&t, 6, 1, 123).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn extraction_rejects_oversized_m() {
        let t = Text::from_slice(b"short");
        assert!(matches!(
            extract_patterns(&t, 6, 1, 0),
            Err(BenchError::LengthExceedsCorpus { m: 6, n: 5 })
        ));
    }
}
