//! Baseline searchers: the naive oracle, bit-parallel Shift-Or, and a
//! simplified backward q-gram matcher. All return the same [`Occurrences`]
//! contract as the EPSM kernels and exist both as correctness oracles and as
//! benchmark comparison points.

use crate::epsm_core::{Occurrences, Pattern, Text};

/// Parameters shared by the baselines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaselineConfig {
    /// Gram size for the backward matcher.
    pub q: usize,
    /// State width available to the bit-parallel searchers.
    pub word_bits: usize,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        BaselineConfig { q: 2, word_bits: ShiftOr::MAX_PATTERN_LEN }
    }
}

/// Errors from baseline construction.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BaselineError {
    #[error("pattern length {m} exceeds the {max}-bit machine word")]
    PatternTooLong { m: usize, max: usize },
    #[error("gram size {q} exceeds the pattern length {m}")]
    GramExceedsPattern { q: usize, m: usize },
    #[error("gram size must be at least 1")]
    ZeroGram,
}

/// The universal oracle: check every window directly.
pub fn naive_search(p: &Pattern, t: &Text) -> Occurrences {
    let needle = p.bytes();
    let haystack = t.bytes();
    if needle.len() > haystack.len() {
        return Occurrences::empty();
    }
    let positions = haystack
        .windows(needle.len())
        .enumerate()
        .filter_map(|(s, window)| (window == needle).then_some(s))
        .collect();
    Occurrences::from_sorted(positions)
}

// ---------------------------------------------------------------------------
// Shift-Or
// ---------------------------------------------------------------------------

/// Bit-parallel Shift-Or searcher simulating the nondeterministic prefix
/// automaton; `O(n * ceil(m / w))` with one word of state (`m <= 64`).
#[derive(Debug, Clone)]
pub struct ShiftOr {
    masks: Box<[u64; 256]>,
    m: usize,
}

impl ShiftOr {
    pub const MAX_PATTERN_LEN: usize = u64::BITS as usize;

    pub fn new(p: &Pattern) -> Result<ShiftOr, BaselineError> {
        let m = p.len();
        if m > Self::MAX_PATTERN_LEN {
            return Err(BaselineError::PatternTooLong { m, max: Self::MAX_PATTERN_LEN });
        }
        // masks[c] has a zero at bit j iff p[j] == c
        let mut masks = Box::new([!0u64; 256]);
        for (j, &c) in p.bytes().iter().enumerate() {
            masks[c as usize] &= !(1u64 << j);
        }
        Ok(ShiftOr { masks, m })
    }

    pub fn find_all(&self, t: &Text) -> Occurrences {
        let accept = 1u64 << (self.m - 1);
        let mut state = !0u64;
        let mut out = Vec::new();
        for (i, &c) in t.bytes().iter().enumerate() {
            state = (state << 1) | self.masks[c as usize];
            if state & accept == 0 {
                out.push(i + 1 - self.m);
            }
        }
        Occurrences::from_sorted(out)
    }
}

/// One-shot Shift-Or search, preprocessing included.
pub fn shift_or_search(p: &Pattern, t: &Text) -> Result<Occurrences, BaselineError> {
    Ok(ShiftOr::new(p)?.find_all(t))
}

// ---------------------------------------------------------------------------
// Simplified BNDM with q-grams
// ---------------------------------------------------------------------------

/// Simplified backward nondeterministic DAWG matcher reading `q`-grams at the
/// window end before entering the backward scan. Worst case `O(nm)`,
/// sublinear on average.
#[derive(Debug, Clone)]
pub struct SbndmQ {
    masks: Box<[u64; 256]>,
    m: usize,
    q: usize,
}

impl SbndmQ {
    pub const MAX_PATTERN_LEN: usize = u64::BITS as usize;

    pub fn new(p: &Pattern, q: usize) -> Result<SbndmQ, BaselineError> {
        let m = p.len();
        if q == 0 {
            return Err(BaselineError::ZeroGram);
        }
        if q > m {
            return Err(BaselineError::GramExceedsPattern { q, m });
        }
        if m > Self::MAX_PATTERN_LEN {
            return Err(BaselineError::PatternTooLong { m, max: Self::MAX_PATTERN_LEN });
        }
        // masks[c] bit j set iff p[j] == c; the scan walks the window right
        // to left, so state bit j means "the chars read so far match p at j"
        let mut masks = Box::new([0u64; 256]);
        for (j, &c) in p.bytes().iter().enumerate() {
            masks[c as usize] |= 1u64 << j;
        }
        Ok(SbndmQ { masks, m, q })
    }

    pub fn find_all(&self, t: &Text) -> Occurrences {
        let text = t.bytes();
        let (m, q) = (self.m, self.q);
        let n = text.len();
        let mut out = Vec::new();
        if m > n {
            return Occurrences::empty();
        }
        let mut s = 0;
        while s <= n - m {
            // absorb the q-gram at the window end in one burst
            let mut state = self.masks[text[s + m - 1] as usize];
            for r in 1..q {
                state = (state >> 1) & self.masks[text[s + m - 1 - r] as usize];
            }
            let mut read = q;
            while state != 0 && read < m {
                state = (state >> 1) & self.masks[text[s + m - 1 - read] as usize];
                read += 1;
            }
            if state & 1 != 0 && read == m {
                out.push(s);
            }
            // a dead state means the read suffix is not a factor of p, so no
            // window containing it can match
            s += if state == 0 { m - read + 1 } else { 1 };
        }
        Occurrences::from_sorted(out)
    }
}

/// One-shot SBNDMq search, preprocessing included.
pub fn sbndm_q_search(p: &Pattern, t: &Text, q: usize) -> Result<Occurrences, BaselineError> {
    Ok(SbndmQ::new(p, q)?.find_all(t))
}
