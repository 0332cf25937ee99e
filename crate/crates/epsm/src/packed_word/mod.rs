//! The word-size packed instruction set: `wscmp`, `wsmatch`, `wsblend`,
//! `wscrc`, plus mask utilities.
//!
//! Two layers live here. [`block`] is the fixed 16-byte layer (`w = 128`,
//! `gamma = 8`, `alpha = 16`) with a portable reference backend and an
//! SSE4.1/SSE4.2 backend; the search kernels run on it. [`generic`] is a
//! width-generic reference implementation of the same semantics, used as the
//! oracle the backends are checked against.

pub mod block;
pub mod generic;

pub use block::{
    broadcast, mask_positions, popcount, simd_available, wsblend, wscmp, wscrc, wsmatch_exact,
    wsmatch_filter4, Backend, BackendError, Block, BlockOpError, SetBits, ALPHA, BACKEND_ENV_VAR,
    HALF,
};
pub use generic::{BlockMask, Word, WordConfig, WordError};
