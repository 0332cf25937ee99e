//! Randomized equivalence of every searcher against the naive oracle.

use epsm::baselines::{naive_search, sbndm_q_search, shift_or_search};
use epsm::epsm_core::{
    epsm_a, epsm_b, epsm_c, epsm_c_with, epsm_c_with_candidates, search, Pattern, Text,
};
use epsm::packed_word::{simd_available, Backend};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SIGMAS: [u32; 5] = [2, 4, 20, 64, 256];
const TEXT_LENS: [usize; 7] = [0, 1, 15, 16, 17, 1000, 100_000];

fn backends() -> Vec<Backend> {
    let mut v = vec![Backend::Reference];
    if simd_available() {
        v.push(Backend::Simd);
    }
    v
}

fn random_text(rng: &mut ChaCha8Rng, n: usize, sigma: u32) -> Vec<u8> {
    (0..n).map(|_| rng.random_range(0..sigma) as u8).collect()
}

/// Draws a pattern that usually occurs in the text (sampled from it) and
/// sometimes does not (fully random).
fn random_pattern(rng: &mut ChaCha8Rng, text: &[u8], m: usize, sigma: u32) -> Vec<u8> {
    if !text.is_empty() && text.len() >= m && rng.random_bool(0.7) {
        let at = rng.random_range(0..=text.len() - m);
        text[at..at + m].to_vec()
    } else {
        (0..m).map(|_| rng.random_range(0..sigma) as u8).collect()
    }
}

fn plant(text: &mut [u8], needle: &[u8], at: usize) {
    if at + needle.len() <= text.len() {
        text[at..at + needle.len()].copy_from_slice(needle);
    }
}

#[test]
fn search_equals_naive_on_random_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xea5eed);
    for case in 0..600 {
        let sigma = SIGMAS[case % SIGMAS.len()];
        let n = TEXT_LENS[case % TEXT_LENS.len()];
        let m = rng.random_range(1..=64);
        let text = random_text(&mut rng, n, sigma);
        let needle = random_pattern(&mut rng, &text, m, sigma);
        let t = Text::new(text);
        let p = Pattern::new(needle).unwrap();
        let expected = naive_search(&p, &t);
        for backend in backends() {
            let got = search(&p, &t, backend);
            assert_eq!(
                got, expected,
                "case {case}: sigma={sigma} n={n} m={m} backend={backend:?} p={:02x?}",
                p.bytes()
            );
        }
    }
}

#[test]
fn kernels_equal_naive_with_planted_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb5e55ed);
    for case in 0..400 {
        let sigma = SIGMAS[case % SIGMAS.len()];
        let n = 16 * rng.random_range(1..=64) + rng.random_range(0..16);
        let mut text = random_text(&mut rng, n, sigma);

        // kernel choice decides the pattern-length range
        let (kernel, m) = match case % 3 {
            0 => (0, rng.random_range(1..=16)),
            1 => (1, rng.random_range(4..=64)),
            _ => (2, rng.random_range(32..=128)),
        };
        if m > n {
            continue;
        }
        let needle = random_pattern(&mut rng, &text, m, sigma);

        // plant at the ends, at block boundaries, and mid-block
        plant(&mut text, &needle, 0);
        plant(&mut text, &needle, n - m);
        let block = rng.random_range(0..n / 16);
        plant(&mut text, &needle, (block * 16 + 15).min(n - m));
        plant(&mut text, &needle, (block * 16).min(n - m));
        plant(&mut text, &needle, (block * 16 + 8 + case % 8).min(n - m));

        let t = Text::new(text);
        let p = Pattern::new(needle).unwrap();
        let expected = naive_search(&p, &t);
        for backend in backends() {
            let got = match kernel {
                0 => epsm_a(&p, &t, backend),
                1 => epsm_b(&p, &t, backend).unwrap(),
                _ => epsm_c(&p, &t, backend).unwrap(),
            };
            assert_eq!(
                got, expected,
                "case {case}: kernel={kernel} n={n} m={m} backend={backend:?}"
            );
        }
    }
}

#[test]
fn epsm_a_handles_lengths_beyond_its_regime() {
    // correct for any m, even though search() keeps it below 4
    let mut rng = ChaCha8Rng::seed_from_u64(0xa111e45);
    for m in [1usize, 2, 3, 4, 7, 8, 9, 15, 16, 17, 30, 40] {
        let text = random_text(&mut rng, 500, 4);
        let mut text = text;
        let needle = random_pattern(&mut rng, &text, m, 4);
        plant(&mut text, &needle, 500 - m);
        plant(&mut text, &needle, 13);
        let t = Text::new(text);
        let p = Pattern::new(needle).unwrap();
        let expected = naive_search(&p, &t);
        for backend in backends() {
            assert_eq!(epsm_a(&p, &t, backend), expected, "m={m} backend={backend:?}");
        }
    }
}

#[test]
fn epsm_c_candidate_generation_is_complete() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xca4d1da);
    for case in 0..200 {
        let sigma = SIGMAS[case % SIGMAS.len()];
        let n = rng.random_range(64..4000);
        let m = rng.random_range(32..=128.min(n));
        let mut text = random_text(&mut rng, n, sigma);
        let needle = random_pattern(&mut rng, &text, m, sigma);
        plant(&mut text, &needle, 0);
        plant(&mut text, &needle, n - m);
        let t = Text::new(text);
        let p = Pattern::new(needle).unwrap();
        let (occ, candidates) =
            epsm_c_with_candidates(&p, &t, 11, Backend::Reference).unwrap();
        let expected = naive_search(&p, &t);
        assert_eq!(occ, expected, "case {case}");
        for &s in expected.positions() {
            assert!(
                candidates.contains(&s),
                "case {case}: true occurrence {s} never proposed (n={n} m={m})"
            );
        }
    }
}

#[test]
fn epsm_c_other_fingerprint_widths() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb175);
    let text = random_text(&mut rng, 5000, 4);
    let t = Text::new(text.clone());
    let p = Pattern::new(text[777..777 + 48].to_vec()).unwrap();
    let expected = naive_search(&p, &t);
    for bits in [1, 2, 8, 11, 16, 24, 32] {
        for backend in backends() {
            assert_eq!(
                epsm_c_with(&p, &t, bits, backend).unwrap(),
                expected,
                "bits={bits} backend={backend:?}"
            );
        }
    }
}

#[test]
fn overlap_completeness_uniform_patterns() {
    for (m, n) in [(2usize, 100usize), (16, 100), (32, 128), (3, 64), (40, 200)] {
        let t = Text::new(vec![b'a'; n]);
        let p = Pattern::new(vec![b'a'; m]).unwrap();
        for backend in backends() {
            let occ = search(&p, &t, backend);
            assert_eq!(occ.len(), n - m + 1, "m={m} n={n} backend={backend:?}");
            assert_eq!(occ.positions(), (0..=n - m).collect::<Vec<_>>().as_slice());
        }
    }
}

#[test]
fn search_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let text = random_text(&mut rng, 10_000, 20);
    let t = Text::new(text.clone());
    let p = Pattern::new(text[100..140].to_vec()).unwrap();
    for backend in backends() {
        let first = search(&p, &t, backend);
        for _ in 0..3 {
            assert_eq!(search(&p, &t, backend), first);
        }
    }
}

#[test]
fn baselines_equal_naive_on_random_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xba5e11e5);
    for case in 0..300 {
        let sigma = SIGMAS[case % SIGMAS.len()];
        let n = TEXT_LENS[case % TEXT_LENS.len()].min(10_000);
        let m = rng.random_range(1..=64);
        let text = random_text(&mut rng, n, sigma);
        let needle = random_pattern(&mut rng, &text, m, sigma);
        let t = Text::new(text);
        let p = Pattern::new(needle).unwrap();
        let expected = naive_search(&p, &t);
        assert_eq!(shift_or_search(&p, &t).unwrap(), expected, "shift-or case {case}");
        for q in [1usize, 2, 4] {
            if q <= m {
                assert_eq!(
                    sbndm_q_search(&p, &t, q).unwrap(),
                    expected,
                    "sbndm case {case} q={q}"
                );
            }
        }
    }
}

#[test]
fn shift_or_length_64_boundary() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let text = random_text(&mut rng, 3000, 2);
    let t = Text::new(text.clone());
    let p = Pattern::new(text[5..69].to_vec()).unwrap();
    assert_eq!(p.len(), 64);
    let expected = naive_search(&p, &t);
    assert!(!expected.is_empty());
    assert_eq!(shift_or_search(&p, &t).unwrap(), expected);
    assert_eq!(sbndm_q_search(&p, &t, 2).unwrap(), expected);
}
