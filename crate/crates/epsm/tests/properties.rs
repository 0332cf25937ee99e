//! Property tests over the packed operations and the kernels.

use epsm::baselines::naive_search;
use epsm::epsm_core::{search, verify, Pattern, Text};
use epsm::packed_word::{
    self, mask_positions, popcount, simd_available, Backend, Block, ALPHA, HALF,
};
use proptest::prelude::*;

fn block_strategy() -> impl Strategy<Value = Block> {
    proptest::array::uniform16(any::<u8>())
}

fn backends() -> Vec<Backend> {
    let mut v = vec![Backend::Reference];
    if simd_available() {
        v.push(Backend::Simd);
    }
    v
}

proptest! {
    #[test]
    fn wscmp_is_symmetric(a in block_strategy(), b in block_strategy()) {
        for backend in backends() {
            prop_assert_eq!(
                packed_word::wscmp(backend, &a, &b),
                packed_word::wscmp(backend, &b, &a)
            );
        }
    }

    #[test]
    fn wscmp_bits_mean_equal_chars(a in block_strategy(), b in block_strategy()) {
        let r = packed_word::wscmp(Backend::Reference, &a, &b);
        for i in 0..ALPHA {
            prop_assert_eq!(r >> i & 1 == 1, a[i] == b[i]);
        }
    }

    #[test]
    fn wsmatch_exact_bits_mean_occurrence(
        a in block_strategy(),
        pat in proptest::collection::vec(any::<u8>(), 1..=ALPHA),
    ) {
        for backend in backends() {
            let r = packed_word::wsmatch_exact(backend, &a, &pat).unwrap();
            for i in 0..ALPHA {
                let expected = i + pat.len() <= ALPHA && a[i..i + pat.len()] == pat[..];
                prop_assert_eq!(r >> i & 1 == 1, expected, "offset {} backend {:?}", i, backend);
            }
        }
    }

    #[test]
    fn filter4_never_misses_an_exact_match(
        a in block_strategy(),
        pat in proptest::collection::vec(any::<u8>(), 4..=8),
    ) {
        for backend in backends() {
            let exact = packed_word::wsmatch_exact(backend, &a, &pat).unwrap();
            let filtered = packed_word::wsmatch_filter4(backend, &a, &pat).unwrap();
            let first_half = exact & ((1 << HALF) - 1);
            prop_assert_eq!(first_half & filtered, first_half, "backend {:?}", backend);
            prop_assert_eq!(filtered >> HALF, 0);
        }
    }

    #[test]
    fn filter4_equals_exact_for_length_4(
        a in block_strategy(),
        pat in proptest::array::uniform4(any::<u8>()),
    ) {
        let exact = packed_word::wsmatch_exact(Backend::Reference, &a, &pat).unwrap();
        let filtered = packed_word::wsmatch_filter4(Backend::Reference, &a, &pat).unwrap();
        prop_assert_eq!(filtered, exact & ((1 << HALF) - 1));
    }

    #[test]
    fn wsblend_keeps_halves(a in block_strategy(), b in block_strategy()) {
        for backend in backends() {
            let r = packed_word::wsblend(backend, &a, &b);
            prop_assert_eq!(&r[..HALF], &a[HALF..]);
            prop_assert_eq!(&r[HALF..], &b[..HALF]);
        }
    }

    #[test]
    fn wsblend_composition_recovers_operand(a in block_strategy(), b in block_strategy()) {
        let ab = packed_word::wsblend(Backend::Reference, &a, &b);
        let ba = packed_word::wsblend(Backend::Reference, &b, &a);
        prop_assert_eq!(packed_word::wsblend(Backend::Reference, &ab, &ba), b);
    }

    #[test]
    fn mask_positions_agree_with_popcount(mask in any::<u16>()) {
        let positions = mask_positions(mask);
        prop_assert_eq!(positions.len() as u32, popcount(mask));
        prop_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        for &i in &positions {
            prop_assert!(mask >> i & 1 == 1);
        }
    }

    #[test]
    fn backends_agree_on_every_op(
        a in block_strategy(),
        b in block_strategy(),
        pat in proptest::collection::vec(any::<u8>(), 1..=ALPHA),
        c in any::<u8>(),
    ) {
        if !simd_available() {
            return Ok(());
        }
        prop_assert_eq!(
            packed_word::wscmp(Backend::Reference, &a, &b),
            packed_word::wscmp(Backend::Simd, &a, &b)
        );
        prop_assert_eq!(
            packed_word::wsmatch_exact(Backend::Reference, &a, &pat).unwrap(),
            packed_word::wsmatch_exact(Backend::Simd, &a, &pat).unwrap()
        );
        if pat.len() >= 4 {
            prop_assert_eq!(
                packed_word::wsmatch_filter4(Backend::Reference, &a, &pat).unwrap(),
                packed_word::wsmatch_filter4(Backend::Simd, &a, &pat).unwrap()
            );
        }
        prop_assert_eq!(
            packed_word::wsblend(Backend::Reference, &a, &b),
            packed_word::wsblend(Backend::Simd, &a, &b)
        );
        prop_assert_eq!(
            packed_word::wscrc(Backend::Reference, &a),
            packed_word::wscrc(Backend::Simd, &a)
        );
        prop_assert_eq!(
            packed_word::broadcast(Backend::Reference, c),
            packed_word::broadcast(Backend::Simd, c)
        );
    }

    #[test]
    fn search_equals_naive(
        text in proptest::collection::vec(0u8..4, 0..300),
        needle in proptest::collection::vec(0u8..4, 1..48),
    ) {
        let t = Text::new(text);
        let p = Pattern::new(needle).unwrap();
        let expected = naive_search(&p, &t);
        for backend in backends() {
            prop_assert_eq!(search(&p, &t, backend), expected.clone(), "backend {:?}", backend);
        }
    }

    #[test]
    fn search_finds_sampled_substrings(
        text in proptest::collection::vec(any::<u8>(), 40..400),
        at in 0usize..360,
        len in 1usize..40,
    ) {
        let at = at.min(text.len() - 1);
        let len = len.min(text.len() - at);
        let needle = text[at..at + len].to_vec();
        let t = Text::new(text);
        let p = Pattern::new(needle).unwrap();
        for backend in backends() {
            let occ = search(&p, &t, backend);
            prop_assert!(occ.positions().contains(&at));
            prop_assert!(occ.positions().windows(2).all(|w| w[0] < w[1]));
            for &s in occ.positions() {
                prop_assert!(verify(&p, &t, s));
            }
        }
    }
}
