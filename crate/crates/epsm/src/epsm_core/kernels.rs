//! The three EPSM search procedures and the length dispatcher.

use std::collections::HashMap;

use super::{Occurrences, Pattern, Text};
use crate::packed_word::block::{self, Backend, Block, BlockOps, Reference, SetBits};
use crate::packed_word::{simd_available, ALPHA, HALF};

#[cfg(target_arch = "x86_64")]
use crate::packed_word::block::Simd;

/// Longest pattern routed to `epsm_a` by [`search`].
pub const EPSM_A_MAX_LEN: usize = 3;
/// Shortest pattern accepted by `epsm_c`: below `2 * ALPHA` its block stride
/// would be zero and the fingerprint filter could not cover every window.
pub const EPSM_C_MIN_LEN: usize = 2 * ALPHA;
/// Fingerprint width used by [`epsm_c`] and [`search`].
pub const DEFAULT_FINGERPRINT_BITS: u32 = 11;

/// Dense bucket storage is used through this fingerprint width; beyond it the
/// table switches to a hash map to avoid allocating `2^bits` buckets.
const DENSE_BITS_LIMIT: u32 = 20;

/// Errors from calling a kernel outside its supported pattern range.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("epsm_b requires a pattern of at least 4 characters, got {m}")]
    PatternTooShortForB { m: usize },
    #[error("epsm_c requires a pattern of at least {EPSM_C_MIN_LEN} characters, got {m}")]
    PatternTooShortForC { m: usize },
    #[error("fingerprint bits must lie in 1..=32, got {bits}")]
    FingerprintBitsOutOfRange { bits: u32 },
}

/// Which kernel [`search`] runs for a pattern of length `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    A,
    B,
    C,
}

/// Length-based dispatch: `epsm_a` for `m < 4`, `epsm_b` for `4 <= m < 32`,
/// `epsm_c` for `m >= 32`.
pub fn dispatch_kernel(m: usize) -> KernelKind {
    if m <= EPSM_A_MAX_LEN {
        KernelKind::A
    } else if m < EPSM_C_MIN_LEN {
        KernelKind::B
    } else {
        KernelKind::C
    }
}

/// True iff the pattern occurs at start `s`, i.e. `s <= n - m` and
/// `t[s..s + m] == p`.
pub fn verify(p: &Pattern, t: &Text, s: usize) -> bool {
    let text = t.bytes();
    let m = p.len();
    match text.len().checked_sub(s) {
        Some(rest) if rest >= m => &text[s..s + m] == p.bytes(),
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// EPSMa: very short patterns
// ---------------------------------------------------------------------------

/// The per-character broadcast words `B[i] = (p[i])^ALPHA` used by `epsm_a`,
/// built over the prefix of length `min(m, ALPHA / 2)`.
#[derive(Debug, Clone)]
pub struct BroadcastTable {
    words: Vec<Block>,
}

impl BroadcastTable {
    pub fn new(p: &Pattern, backend: Backend) -> BroadcastTable {
        let prefix = &p.bytes()[..p.len().min(HALF)];
        BroadcastTable {
            words: prefix.iter().map(|&c| block::broadcast(backend, c)).collect(),
        }
    }

    /// `m' = min(m, ALPHA / 2)`.
    pub fn prefix_len(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Block] {
        &self.words
    }
}

#[inline(always)]
fn build_broadcast<O: BlockOps>(prefix: &[u8]) -> Vec<Block> {
    prefix.iter().map(|&c| O::broadcast(c)).collect()
}

#[inline(always)]
fn epsm_a_impl<O: BlockOps>(p: &Pattern, t: &Text) -> Occurrences {
    let m = p.len();
    let n = t.len();
    if m > n {
        return Occurrences::empty();
    }
    let mp = m.min(HALF);
    let table = build_broadcast::<O>(&p.bytes()[..mp]);
    let blocks = t.full_blocks();
    let mut out = Vec::new();

    for i in 0..blocks {
        let base = i * ALPHA;
        let block = t.block(i);
        // r bit q survives iff block[q + j] == p[j] for every j < m', so a
        // set bit marks an occurrence of the m'-prefix at offset q.
        let mut r = !0u16;
        for (j, word) in table.iter().enumerate() {
            r &= O::wscmp(block, word) >> j;
        }
        if m == mp {
            debug_assert!(SetBits(r).all(|q| q <= ALPHA - m));
            for q in SetBits(r) {
                out.push(base + q);
            }
        } else {
            for q in SetBits(r) {
                let s = base + q;
                if verify(p, t, s) {
                    out.push(s);
                }
            }
        }
        // starts whose m'-prefix runs past this block
        let lo = base + ALPHA - mp + 1;
        let hi = (base + ALPHA - 1).min(n - m);
        for s in lo..=hi {
            if verify(p, t, s) {
                out.push(s);
            }
        }
    }
    for s in blocks * ALPHA..=n - m {
        if verify(p, t, s) {
            out.push(s);
        }
    }
    Occurrences::from_sorted(out)
}

/// EPSMa: per aligned block, AND together shifted broadcast compares to mark
/// every start of the `min(m, 8)`-character prefix, then report (for `m <=
/// 8`) or verify. Starts crossing a block edge and the unblocked tail are
/// checked naively. Correct for any `m >= 1`; fastest when `m < 4`.
pub fn epsm_a(p: &Pattern, t: &Text, backend: Backend) -> Occurrences {
    #[cfg(target_arch = "x86_64")]
    if backend == Backend::Simd && simd_available() {
        // SAFETY: SSE4.1/SSE4.2 were detected.
        return unsafe { epsm_a_simd(p, t) };
    }
    let _ = backend;
    epsm_a_impl::<Reference>(p, t)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "sse4.1,sse4.2")]
unsafe fn epsm_a_simd(p: &Pattern, t: &Text) -> Occurrences {
    epsm_a_impl::<Simd>(p, t)
}

// ---------------------------------------------------------------------------
// EPSMb: short patterns
// ---------------------------------------------------------------------------

#[inline(always)]
fn epsm_b_impl<O: BlockOps>(p: &Pattern, t: &Text) -> Occurrences {
    let m = p.len();
    let n = t.len();
    if m > n {
        return Occurrences::empty();
    }
    let prefix: &[u8; 4] = p.bytes()[..4].try_into().unwrap();
    let blocks = t.full_blocks();
    let mut out = Vec::new();

    for i in 0..blocks {
        let base = i * ALPHA;
        let block = t.block(i);
        // candidates in the first half of the block
        let r = O::wsmatch_filter4(block, prefix);
        for q in SetBits(r) {
            let s = base + q;
            if verify(p, t, s) {
                out.push(s);
            }
        }
        // candidates in the second half, via the half-shifted blend view;
        // at the final block the blend partner is the zero-padded tail, so
        // starts the filter may see through padding are left to the
        // residual scan below
        let blend = O::wsblend(block, t.block(i + 1));
        let r = O::wsmatch_filter4(&blend, prefix);
        let limit = if i + 1 == blocks { blocks * ALPHA - 3 } else { usize::MAX };
        for q in SetBits(r) {
            let s = base + HALF + q;
            if s < limit && verify(p, t, s) {
                out.push(s);
            }
        }
    }
    let residual_lo = if blocks == 0 { 0 } else { blocks * ALPHA - 3 };
    for s in residual_lo..=n - m {
        if verify(p, t, s) {
            out.push(s);
        }
    }
    Occurrences::from_sorted(out)
}

/// EPSMb: per aligned block, the 4-character prefix filter marks candidate
/// starts in the first half, and again in the blend of this block with the
/// next for starts in the second half. Every candidate is verified in full,
/// since the filter only certifies a 4-character prefix.
///
/// Requires `m >= 4`.
pub fn epsm_b(p: &Pattern, t: &Text, backend: Backend) -> Result<Occurrences, KernelError> {
    let m = p.len();
    if m < 4 {
        return Err(KernelError::PatternTooShortForB { m });
    }
    #[cfg(target_arch = "x86_64")]
    if backend == Backend::Simd && simd_available() {
        // SAFETY: SSE4.1/SSE4.2 were detected.
        return Ok(unsafe { epsm_b_simd(p, t) });
    }
    let _ = backend;
    Ok(epsm_b_impl::<Reference>(p, t))
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "sse4.1,sse4.2")]
unsafe fn epsm_b_simd(p: &Pattern, t: &Text) -> Occurrences {
    epsm_b_impl::<Simd>(p, t)
}

// ---------------------------------------------------------------------------
// EPSMc: medium-length patterns
// ---------------------------------------------------------------------------

/// Fingerprint buckets: masked block CRC -> pattern offsets whose
/// `ALPHA`-character window has that fingerprint.
#[derive(Debug, Clone)]
enum Buckets {
    Dense(Vec<Vec<u32>>),
    Sparse(HashMap<u32, Vec<u32>>),
}

/// The EPSMc preprocessing table: for every offset `i` in `[0, m - ALPHA]`,
/// offset `i` is stored in the bucket of `wscrc(p[i..i + ALPHA]) & mask`.
#[derive(Debug, Clone)]
pub struct FingerprintTable {
    bits: u32,
    mask: u32,
    buckets: Buckets,
    stored: usize,
}

impl FingerprintTable {
    /// Fingerprint width `k`.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// The low-`k`-bit mask applied to block CRCs.
    pub fn mask(&self) -> u32 {
        self.mask
    }

    /// Number of stored offsets, `m - ALPHA + 1`.
    pub fn stored(&self) -> usize {
        self.stored
    }

    /// The pattern offsets whose fingerprint is `v`, ascending.
    pub fn bucket(&self, v: u32) -> &[u32] {
        debug_assert_eq!(v & self.mask, v);
        match &self.buckets {
            Buckets::Dense(table) => &table[v as usize],
            Buckets::Sparse(map) => map.get(&v).map_or(&[], Vec::as_slice),
        }
    }
}

fn fingerprint_mask(bits: u32) -> u32 {
    if bits == 32 {
        u32::MAX
    } else {
        (1u32 << bits) - 1
    }
}

fn build_fingerprint_impl<O: BlockOps>(
    p: &Pattern,
    bits: u32,
) -> Result<FingerprintTable, KernelError> {
    let m = p.len();
    if m < EPSM_C_MIN_LEN {
        return Err(KernelError::PatternTooShortForC { m });
    }
    if !(1..=32).contains(&bits) {
        return Err(KernelError::FingerprintBitsOutOfRange { bits });
    }
    let mask = fingerprint_mask(bits);
    let mut buckets = if bits <= DENSE_BITS_LIMIT {
        Buckets::Dense(vec![Vec::new(); 1 << bits])
    } else {
        Buckets::Sparse(HashMap::new())
    };
    let mut window = [0u8; ALPHA];
    for i in 0..=m - ALPHA {
        window.copy_from_slice(&p.bytes()[i..i + ALPHA]);
        let v = O::wscrc(&window) & mask;
        match &mut buckets {
            Buckets::Dense(table) => table[v as usize].push(i as u32),
            Buckets::Sparse(map) => map.entry(v).or_default().push(i as u32),
        }
    }
    Ok(FingerprintTable { bits, mask, buckets, stored: m - ALPHA + 1 })
}

/// Builds the EPSMc fingerprint table for a pattern of length `m >= 32`,
/// with a fingerprint width of `bits` in `1..=32`.
pub fn build_fingerprint_table(
    p: &Pattern,
    bits: u32,
    backend: Backend,
) -> Result<FingerprintTable, KernelError> {
    #[cfg(target_arch = "x86_64")]
    if backend == Backend::Simd && simd_available() {
        return build_fingerprint_impl::<Simd>(p, bits);
    }
    let _ = backend;
    build_fingerprint_impl::<Reference>(p, bits)
}

/// The EPSMc text traversal: aligned blocks are inspected at character
/// positions `0, step, 2 * step, ...` with
/// `step = (floor(m / ALPHA) - 1) * ALPHA`.
///
/// `step <= m - ALPHA` holds for every `m >= 2 * ALPHA`, so each length-`m`
/// window fully contains an inspected block at some stored offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanPlan {
    step: usize,
}

impl ScanPlan {
    pub fn for_pattern_len(m: usize) -> Result<ScanPlan, KernelError> {
        if m < EPSM_C_MIN_LEN {
            return Err(KernelError::PatternTooShortForC { m });
        }
        Ok(ScanPlan { step: (m / ALPHA - 1) * ALPHA })
    }

    /// Distance in characters between inspected blocks; a positive multiple
    /// of `ALPHA`.
    pub fn step(&self) -> usize {
        self.step
    }

    /// The inspected block start positions within a text of `n` characters.
    pub fn inspected(&self, n: usize) -> impl Iterator<Item = usize> {
        (0..=n.saturating_sub(ALPHA)).step_by(self.step)
    }
}

fn epsm_c_impl<O: BlockOps>(
    p: &Pattern,
    t: &Text,
    bits: u32,
    mut candidates: Option<&mut Vec<usize>>,
) -> Result<Occurrences, KernelError> {
    let m = p.len();
    let n = t.len();
    let plan = ScanPlan::for_pattern_len(m)?;
    if !(1..=32).contains(&bits) {
        return Err(KernelError::FingerprintBitsOutOfRange { bits });
    }
    if m > n {
        return Ok(Occurrences::empty());
    }
    let table = build_fingerprint_impl::<O>(p, bits)?;
    let mut hits = Vec::new();
    for c in plan.inspected(n) {
        let v = O::wscrc(t.block(c / ALPHA)) & table.mask();
        for &offset in table.bucket(v) {
            let offset = offset as usize;
            if offset > c {
                continue;
            }
            let s = c - offset;
            if s <= n - m {
                if let Some(sink) = candidates.as_deref_mut() {
                    sink.push(s);
                }
                if verify(p, t, s) {
                    hits.push(s);
                }
            }
        }
    }
    // nearby inspected blocks can land inside the same window
    Ok(Occurrences::from_unsorted(hits))
}

fn epsm_c_dispatch(
    p: &Pattern,
    t: &Text,
    bits: u32,
    backend: Backend,
    candidates: Option<&mut Vec<usize>>,
) -> Result<Occurrences, KernelError> {
    #[cfg(target_arch = "x86_64")]
    if backend == Backend::Simd && simd_available() {
        return epsm_c_impl::<Simd>(p, t, bits, candidates);
    }
    let _ = backend;
    epsm_c_impl::<Reference>(p, t, bits, candidates)
}

/// EPSMc: map each pattern offset to the CRC fingerprint of its
/// `ALPHA`-character window, inspect text blocks one stride apart, and verify
/// the starts proposed by the matching bucket.
///
/// Requires `m >= 32`. Uses the default 11-bit fingerprint.
pub fn epsm_c(p: &Pattern, t: &Text, backend: Backend) -> Result<Occurrences, KernelError> {
    epsm_c_dispatch(p, t, DEFAULT_FINGERPRINT_BITS, backend, None)
}

/// [`epsm_c`] with an explicit fingerprint width in `1..=32`.
pub fn epsm_c_with(
    p: &Pattern,
    t: &Text,
    bits: u32,
    backend: Backend,
) -> Result<Occurrences, KernelError> {
    epsm_c_dispatch(p, t, bits, backend, None)
}

/// [`epsm_c_with`] that also returns every candidate start the filter
/// proposed, in inspection order and before deduplication. Diagnostic
/// surface for checking filter completeness.
pub fn epsm_c_with_candidates(
    p: &Pattern,
    t: &Text,
    bits: u32,
    backend: Backend,
) -> Result<(Occurrences, Vec<usize>), KernelError> {
    let mut candidates = Vec::new();
    let occ = epsm_c_dispatch(p, t, bits, backend, Some(&mut candidates))?;
    Ok((occ, candidates))
}

// ---------------------------------------------------------------------------
// Dispatcher
// ---------------------------------------------------------------------------

/// The EPSM entry point: routes to [`epsm_a`] (`m < 4`), [`epsm_b`]
/// (`4 <= m < 32`) or [`epsm_c`] (`m >= 32`). Returns the exact occurrence
/// set; `m > n` yields an empty result.
pub fn search(p: &Pattern, t: &Text, backend: Backend) -> Occurrences {
    match dispatch_kernel(p.len()) {
        KernelKind::A => epsm_a(p, t, backend),
        KernelKind::B => epsm_b(p, t, backend).expect("dispatch guarantees m >= 4"),
        KernelKind::C => epsm_c(p, t, backend).expect("dispatch guarantees m >= 32"),
    }
}
