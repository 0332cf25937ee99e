//! The EPSM search kernels and their domain types.
//!
//! [`epsm_a`] handles very short patterns with broadcast compares, [`epsm_b`]
//! filters on a 4-character prefix match per half block, and [`epsm_c`] skips
//! through the text probing CRC fingerprints of aligned blocks. [`search`]
//! dispatches on pattern length. All kernels return exactly the occurrence
//! set of a naive scan, overlaps included.

mod kernels;

pub use kernels::{
    build_fingerprint_table, dispatch_kernel, epsm_a, epsm_b, epsm_c, epsm_c_with,
    epsm_c_with_candidates, search, verify, BroadcastTable, FingerprintTable, KernelError,
    KernelKind, ScanPlan, DEFAULT_FINGERPRINT_BITS, EPSM_A_MAX_LEN, EPSM_C_MIN_LEN,
};

use crate::packed_word::{Block, ALPHA};

/// A search text of `n` bytes.
///
/// The backing buffer is padded with zeros so the byte range of any block
/// index up to `full_blocks()` (one past the last complete block) is readable;
/// padding never contributes to reported occurrences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    data: Vec<u8>,
    len: usize,
}

impl Text {
    pub fn new(bytes: Vec<u8>) -> Text {
        let len = bytes.len();
        let mut data = bytes;
        data.resize((len / ALPHA + 1) * ALPHA, 0);
        Text { data, len }
    }

    pub fn from_slice(bytes: &[u8]) -> Text {
        Text::new(bytes.to_vec())
    }

    /// Length of the real content, excluding padding.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The text content (no padding).
    pub fn bytes(&self) -> &[u8] {
        &self.data[..self.len]
    }

    /// Number of complete 16-byte blocks.
    pub fn full_blocks(&self) -> usize {
        self.len / ALPHA
    }

    /// Aligned block `i`. Valid for `i <= full_blocks()`; at `i ==
    /// full_blocks()` the block is the zero-padded partial tail.
    pub(crate) fn block(&self, i: usize) -> &Block {
        self.data[i * ALPHA..(i + 1) * ALPHA].try_into().unwrap()
    }
}

impl From<&[u8]> for Text {
    fn from(bytes: &[u8]) -> Text {
        Text::from_slice(bytes)
    }
}

impl From<Vec<u8>> for Text {
    fn from(bytes: Vec<u8>) -> Text {
        Text::new(bytes)
    }
}

/// Error returned when constructing an empty [`Pattern`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("pattern must not be empty")]
pub struct EmptyPattern;

/// A non-empty search pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    bytes: Vec<u8>,
}

impl Pattern {
    pub fn new(bytes: Vec<u8>) -> Result<Pattern, EmptyPattern> {
        if bytes.is_empty() {
            return Err(EmptyPattern);
        }
        Ok(Pattern { bytes })
    }

    pub fn from_slice(bytes: &[u8]) -> Result<Pattern, EmptyPattern> {
        Pattern::new(bytes.to_vec())
    }

    /// Pattern length `m >= 1`.
    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    /// Always false; kept for clippy symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }
}

/// The strictly increasing, duplicate-free start positions of a pattern in a
/// text.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Occurrences {
    positions: Vec<usize>,
}

impl Occurrences {
    pub fn empty() -> Occurrences {
        Occurrences { positions: Vec::new() }
    }

    /// Wraps a vector that is already strictly increasing.
    pub fn from_sorted(positions: Vec<usize>) -> Occurrences {
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        Occurrences { positions }
    }

    /// Sorts and deduplicates, then wraps.
    pub fn from_unsorted(mut positions: Vec<usize>) -> Occurrences {
        positions.sort_unstable();
        positions.dedup();
        Occurrences { positions }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.positions.iter()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.positions
    }
}

impl<'a> IntoIterator for &'a Occurrences {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.positions.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_pads_to_one_block_past_content() {
        for n in [0usize, 1, 15, 16, 17, 31, 32, 33] {
            let t = Text::new(vec![0xab; n]);
            assert_eq!(t.len(), n);
            assert_eq!(t.bytes().len(), n);
            assert_eq!(t.data.len(), (n / ALPHA + 1) * ALPHA);
            // the block one past the last full one is always readable
            let _ = t.block(t.full_blocks());
            // padding is zero
            assert!(t.data[t.len..].iter().all(|&b| b == 0));
        }
    }

    #[test]
    fn pattern_rejects_empty() {
        assert_eq!(Pattern::new(Vec::new()), Err(EmptyPattern));
        assert_eq!(Pattern::from_slice(b"a").unwrap().len(), 1);
    }

    #[test]
    fn occurrences_from_unsorted_dedups() {
        let occ = Occurrences::from_unsorted(vec![5, 1, 5, 3, 1]);
        assert_eq!(occ.positions(), &[1, 3, 5]);
        assert_eq!(occ.len(), 3);
    }
}
