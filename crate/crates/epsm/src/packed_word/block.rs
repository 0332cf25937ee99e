//! Packed instructions over 16-byte blocks (`w = 128`, `gamma = 8`, `alpha = 16`).
//!
//! This is the fixed-width layer the search kernels run on. Every operation
//! exists in two bit-identical flavors: a portable scalar implementation
//! ([`Backend::Reference`]) and an SSE4.1/SSE4.2 fast path ([`Backend::Simd`]).
//! Block masks are plain `u16` values; bit `i` refers to character offset `i`
//! of the block, so bit 0 is the first character.

use std::env;

/// Characters per 128-bit word.
pub const ALPHA: usize = 16;
/// Half a block; the widest prefix the match filter can certify start-of.
pub const HALF: usize = ALPHA / 2;

/// One aligned chunk of `ALPHA` characters.
pub type Block = [u8; ALPHA];

/// Environment variable that forces a backend (`reference` or `simd`).
pub const BACKEND_ENV_VAR: &str = "EPSM_BACKEND";

/// Errors from backend selection.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BackendError {
    #[error("{BACKEND_ENV_VAR}: unknown backend `{0}` (expected `reference` or `simd`)")]
    UnknownName(String),
    #[error("{BACKEND_ENV_VAR}=simd requested but SSE4.1/SSE4.2 are not available on this CPU")]
    SimdUnavailable,
}

/// Which implementation of the packed instruction set to run.
///
/// Selection is a construction-time decision: pick a backend once (usually via
/// [`Backend::from_env`]) and pass it to the kernels. Both backends produce
/// bit-identical results for every operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Portable scalar implementation. Always available.
    Reference,
    /// SSE4.1/SSE4.2 implementation, fixed at `w = 128`, `gamma = 8`,
    /// `alpha = 16`. Only available on x86-64 CPUs with those features.
    Simd,
}

/// True when the SIMD backend can run on this CPU.
pub fn simd_available() -> bool {
    #[cfg(target_arch = "x86_64")]
    {
        is_x86_feature_detected!("sse4.1") && is_x86_feature_detected!("sse4.2")
    }
    #[cfg(not(target_arch = "x86_64"))]
    {
        false
    }
}

impl Backend {
    /// Picks the fastest backend supported by the current CPU.
    pub fn detect() -> Backend {
        if simd_available() {
            Backend::Simd
        } else {
            Backend::Reference
        }
    }

    /// Like [`Backend::detect`], but honors the `EPSM_BACKEND` environment
    /// variable override (`reference` or `simd`).
    pub fn from_env() -> Result<Backend, BackendError> {
        match env::var(BACKEND_ENV_VAR) {
            Ok(value) => match value.as_str() {
                "reference" => Ok(Backend::Reference),
                "simd" if simd_available() => Ok(Backend::Simd),
                "simd" => Err(BackendError::SimdUnavailable),
                _ => Err(BackendError::UnknownName(value)),
            },
            Err(_) => Ok(Backend::detect()),
        }
    }

    pub fn is_available(self) -> bool {
        match self {
            Backend::Reference => true,
            Backend::Simd => simd_available(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Backend::Reference => "reference",
            Backend::Simd => "simd",
        }
    }
}

/// The packed instruction set over one or two 16-byte blocks.
///
/// Implementors are zero-sized dispatch tags; the kernels are generic over
/// this trait so the backend choice is hoisted out of their block loops.
pub(crate) trait BlockOps {
    /// Mask with bit `i` set iff `a[i] == b[i]`.
    fn wscmp(a: &Block, b: &Block) -> u16;

    /// Mask with bit `i` (`i < ALPHA - k`) set iff `a[i..i + k] == pat`,
    /// where `k = pat.len() <= ALPHA`. Bits past `ALPHA - k` are clear.
    fn wsmatch_exact(a: &Block, pat: &[u8]) -> u16;

    /// Mask with bit `i` (`i < HALF`) set iff `a[i..i + 4] == prefix`.
    /// Bits `HALF..` are always clear. This is the 4-byte
    /// sum-of-absolute-differences filter; for longer patterns it yields
    /// candidates that still need verification.
    fn wsmatch_filter4(a: &Block, prefix: &[u8; 4]) -> u16;

    /// Second half of `a` followed by the first half of `b`.
    fn wsblend(a: &Block, b: &Block) -> Block;

    /// CRC-32C of the block: two chained 64-bit accumulation steps, low
    /// half first, from initial accumulator 0.
    fn wscrc(a: &Block) -> u32;

    /// Block whose 16 characters all equal `c`.
    fn broadcast(c: u8) -> Block;
}

/// Iterator over the set-bit offsets of a block mask, ascending.
///
/// Runs in `O(popcount)` by repeatedly isolating the lowest set bit.
#[derive(Debug, Clone)]
pub struct SetBits(pub u16);

impl Iterator for SetBits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// The strictly increasing offsets of the set bits of `mask`.
pub fn mask_positions(mask: u16) -> Vec<usize> {
    SetBits(mask).collect()
}

/// Number of set bits of `mask`.
pub fn popcount(mask: u16) -> u32 {
    mask.count_ones()
}

// ---------------------------------------------------------------------------
// Reference backend
// ---------------------------------------------------------------------------

/// Portable scalar backend.
pub(crate) struct Reference;

/// Byte-wise CRC-32C table for the reflected Castagnoli polynomial.
const CRC32C_TABLE: [u32; 256] = {
    let mut table = [0u32; 256];
    let mut i = 0usize;
    while i < 256 {
        let mut crc = i as u32;
        let mut k = 0;
        while k < 8 {
            crc = if crc & 1 != 0 { (crc >> 1) ^ 0x82f6_3b78 } else { crc >> 1 };
            k += 1;
        }
        table[i] = crc;
        i += 1;
    }
    table
};

impl BlockOps for Reference {
    #[inline]
    fn wscmp(a: &Block, b: &Block) -> u16 {
        let mut r = 0u16;
        for i in 0..ALPHA {
            if a[i] == b[i] {
                r |= 1 << i;
            }
        }
        r
    }

    #[inline]
    fn wsmatch_exact(a: &Block, pat: &[u8]) -> u16 {
        debug_assert!(!pat.is_empty() && pat.len() <= ALPHA);
        let k = pat.len();
        let mut r = 0u16;
        for i in 0..=(ALPHA - k) {
            if &a[i..i + k] == pat {
                r |= 1 << i;
            }
        }
        r
    }

    #[inline]
    fn wsmatch_filter4(a: &Block, prefix: &[u8; 4]) -> u16 {
        let mut r = 0u16;
        for i in 0..HALF {
            if &a[i..i + 4] == prefix {
                r |= 1 << i;
            }
        }
        r
    }

    #[inline]
    fn wsblend(a: &Block, b: &Block) -> Block {
        let mut r = [0u8; ALPHA];
        r[..HALF].copy_from_slice(&a[HALF..]);
        r[HALF..].copy_from_slice(&b[..HALF]);
        r
    }

    #[inline]
    fn wscrc(a: &Block) -> u32 {
        let mut crc = 0u32;
        for &byte in a {
            crc = CRC32C_TABLE[((crc ^ byte as u32) & 0xff) as usize] ^ (crc >> 8);
        }
        crc
    }

    #[inline]
    fn broadcast(c: u8) -> Block {
        [c; ALPHA]
    }
}

// ---------------------------------------------------------------------------
// SIMD backend
// ---------------------------------------------------------------------------

/// SSE4.1/SSE4.2 backend. Methods must only run on CPUs where
/// [`simd_available`] is true; the kernel dispatchers uphold this.
#[cfg(target_arch = "x86_64")]
pub(crate) struct Simd;

#[cfg(target_arch = "x86_64")]
mod sse {
    use super::{Block, ALPHA, HALF};
    use core::arch::x86_64::*;

    #[inline]
    unsafe fn load(a: &Block) -> __m128i {
        _mm_loadu_si128(a.as_ptr() as *const __m128i)
    }

    #[inline]
    #[target_feature(enable = "sse4.1,sse4.2")]
    pub unsafe fn wscmp(a: &Block, b: &Block) -> u16 {
        let h = _mm_cmpeq_epi8(load(a), load(b));
        _mm_movemask_epi8(h) as u16
    }

    /// Occurrence mask built the EPSMa way: AND of per-character broadcast
    /// compares, each shifted toward lower offsets by its pattern index.
    #[inline]
    #[target_feature(enable = "sse4.1,sse4.2")]
    pub unsafe fn wsmatch_exact(a: &Block, pat: &[u8]) -> u16 {
        let va = load(a);
        let mut r = !0u16;
        for (j, &c) in pat.iter().enumerate() {
            let s = _mm_movemask_epi8(_mm_cmpeq_epi8(va, _mm_set1_epi8(c as i8))) as u16;
            r &= s >> j;
        }
        r
    }

    #[inline]
    #[target_feature(enable = "sse4.1,sse4.2")]
    pub unsafe fn wsmatch_filter4(a: &Block, prefix: &[u8; 4]) -> u16 {
        let va = load(a);
        let vb = _mm_cvtsi32_si128(i32::from_le_bytes(*prefix));
        // Eight 16-bit sums |a[i+j] - prefix[j]| for j in 0..4; a sum is zero
        // exactly when the 4-byte prefix occurs at offset i.
        let sad = _mm_mpsadbw_epu8::<0>(va, vb);
        let eq = _mm_cmpeq_epi16(sad, _mm_setzero_si128());
        let packed = _mm_packs_epi16(eq, _mm_setzero_si128());
        (_mm_movemask_epi8(packed) as u16) & ((1 << HALF) - 1)
    }

    #[inline]
    #[target_feature(enable = "sse4.1,sse4.2")]
    pub unsafe fn wsblend(a: &Block, b: &Block) -> Block {
        // Low four 16-bit lanes from b, high four from a, then swap the
        // 64-bit halves: a[8..16] ++ b[0..8].
        let h = _mm_blend_epi16::<0x0f>(load(a), load(b));
        let r = _mm_shuffle_epi32::<0b01_00_11_10>(h);
        let mut out = [0u8; ALPHA];
        _mm_storeu_si128(out.as_mut_ptr() as *mut __m128i, r);
        out
    }

    #[inline]
    #[target_feature(enable = "sse4.1,sse4.2")]
    pub unsafe fn wscrc(a: &Block) -> u32 {
        let lo = u64::from_le_bytes(a[..8].try_into().unwrap());
        let hi = u64::from_le_bytes(a[8..].try_into().unwrap());
        _mm_crc32_u64(_mm_crc32_u64(0, lo), hi) as u32
    }

    #[inline]
    #[target_feature(enable = "sse4.1,sse4.2")]
    pub unsafe fn broadcast(c: u8) -> Block {
        let mut out = [0u8; ALPHA];
        _mm_storeu_si128(out.as_mut_ptr() as *mut __m128i, _mm_set1_epi8(c as i8));
        out
    }
}

#[cfg(target_arch = "x86_64")]
impl BlockOps for Simd {
    #[inline]
    fn wscmp(a: &Block, b: &Block) -> u16 {
        // SAFETY: dispatchers only select this backend when simd_available().
        unsafe { sse::wscmp(a, b) }
    }

    #[inline]
    fn wsmatch_exact(a: &Block, pat: &[u8]) -> u16 {
        debug_assert!(!pat.is_empty() && pat.len() <= ALPHA);
        // SAFETY: as above.
        unsafe { sse::wsmatch_exact(a, pat) }
    }

    #[inline]
    fn wsmatch_filter4(a: &Block, prefix: &[u8; 4]) -> u16 {
        // SAFETY: as above.
        unsafe { sse::wsmatch_filter4(a, prefix) }
    }

    #[inline]
    fn wsblend(a: &Block, b: &Block) -> Block {
        // SAFETY: as above.
        unsafe { sse::wsblend(a, b) }
    }

    #[inline]
    fn wscrc(a: &Block) -> u32 {
        // SAFETY: as above.
        unsafe { sse::wscrc(a) }
    }

    #[inline]
    fn broadcast(c: u8) -> Block {
        // SAFETY: as above.
        unsafe { sse::broadcast(c) }
    }
}

// ---------------------------------------------------------------------------
// Backend-dispatched entry points
// ---------------------------------------------------------------------------

/// Errors from the fixed-width packed operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlockOpError {
    #[error("short string of length {k} does not fit a block of {ALPHA} characters")]
    MatchTooLong { k: usize },
    #[error("short string must not be empty")]
    EmptyMatch,
    #[error("wsmatch_filter4 requires at least 4 characters, got {k}")]
    FilterPrefixTooShort { k: usize },
}

macro_rules! dispatch {
    ($backend:expr, $op:ident ( $($arg:expr),* )) => {{
        #[cfg(target_arch = "x86_64")]
        {
            match $backend {
                Backend::Simd if simd_available() => Simd::$op($($arg),*),
                _ => Reference::$op($($arg),*),
            }
        }
        #[cfg(not(target_arch = "x86_64"))]
        {
            let _ = $backend;
            Reference::$op($($arg),*)
        }
    }};
}

/// Character-equality mask of two blocks (bit `i` set iff `a[i] == b[i]`).
pub fn wscmp(backend: Backend, a: &Block, b: &Block) -> u16 {
    dispatch!(backend, wscmp(a, b))
}

/// Occurrence mask of a short string `pat` (`1 <= len <= 16`) inside `a`.
pub fn wsmatch_exact(backend: Backend, a: &Block, pat: &[u8]) -> Result<u16, BlockOpError> {
    if pat.is_empty() {
        return Err(BlockOpError::EmptyMatch);
    }
    if pat.len() > ALPHA {
        return Err(BlockOpError::MatchTooLong { k: pat.len() });
    }
    Ok(dispatch!(backend, wsmatch_exact(a, pat)))
}

/// Candidate mask for the 4-character prefix of `pat` (`len >= 4`) over the
/// first half of `a`. Never misses an exact match; candidates for `len > 4`
/// must be verified.
pub fn wsmatch_filter4(backend: Backend, a: &Block, pat: &[u8]) -> Result<u16, BlockOpError> {
    if pat.len() < 4 {
        return Err(BlockOpError::FilterPrefixTooShort { k: pat.len() });
    }
    let prefix: &[u8; 4] = pat[..4].try_into().unwrap();
    Ok(dispatch!(backend, wsmatch_filter4(a, prefix)))
}

/// Second half of `a` concatenated with the first half of `b`.
pub fn wsblend(backend: Backend, a: &Block, b: &Block) -> Block {
    dispatch!(backend, wsblend(a, b))
}

/// CRC-32C of the block (chained 64-bit accumulation, initial accumulator 0).
pub fn wscrc(backend: Backend, a: &Block) -> u32 {
    dispatch!(backend, wscrc(a))
}

/// Block whose 16 characters all equal `c`.
pub fn broadcast(backend: Backend, c: u8) -> Block {
    dispatch!(backend, broadcast(c))
}
