//! Exact packed string matching.
//!
//! This crate finds all occurrences of a pattern in a text by treating the
//! text as aligned 16-byte blocks and running word-size packed instructions
//! over them: packed compare, short-string match, half-block blend, and a
//! CRC fingerprint. Three kernels cover the pattern-length spectrum and
//! [`search`] picks between them:
//!
//! - [`epsm_a`] for very short patterns (`m < 4`): broadcast compares ANDed
//!   into a per-block occurrence mask;
//! - [`epsm_b`] for short patterns (`4 <= m < 32`): a 4-character prefix
//!   filter per half block, every candidate verified;
//! - [`epsm_c`] for longer patterns (`m >= 32`): CRC fingerprints of pattern
//!   windows, probing one aligned block per stride.
//!
//! Every operation has a portable reference implementation and an
//! SSE4.1/SSE4.2 implementation selected by [`Backend`]; both are
//! bit-identical. [`baselines`] carries a naive oracle, Shift-Or, and a
//! simplified backward q-gram matcher with the same output contract.
//!
//! ```
//! use epsm::{search, Backend, Pattern, Text};
//!
//! let text = Text::from_slice(b"how much wood would a woodchuck chuck");
//! let pattern = Pattern::from_slice(b"wood").unwrap();
//! let occ = search(&pattern, &text, Backend::detect());
//! assert_eq!(occ.positions(), &[9, 22]);
//! ```

pub mod baselines;
pub mod epsm_core;
pub mod packed_word;

pub use epsm_core::{
    epsm_a, epsm_b, epsm_c, epsm_c_with, search, verify, Occurrences, Pattern, Text,
};
pub use packed_word::{Backend, BackendError};
