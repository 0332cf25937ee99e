//! Randomized self-checks: backend bit-equivalence and oracle equivalence.

use anyhow::{anyhow, Result};
use epsm::baselines::{naive_search, sbndm_q_search, shift_or_search};
use epsm::epsm_core::{search, Pattern, Text};
use epsm::packed_word::{self, simd_available, Backend, Block, ALPHA};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deliberate result corruption used to prove the harness catches bugs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum InjectFault {
    /// Drop the last reported occurrence.
    DropLast,
    /// Shift every reported occurrence up by one.
    ShiftByOne,
}

fn hex(bytes: &[u8]) -> String {
    const LIMIT: usize = 48;
    let shown: String = bytes.iter().take(LIMIT).map(|b| format!("{b:02x}")).collect();
    if bytes.len() > LIMIT {
        format!("{shown}.. ({} bytes)", bytes.len())
    } else {
        shown
    }
}

fn random_block(rng: &mut ChaCha8Rng) -> Block {
    let mut b = [0u8; ALPHA];
    rng.fill(&mut b[..]);
    b
}

fn check_backend_equivalence(trials: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    if !simd_available() {
        eprintln!("selftest: SIMD backend unavailable, skipping backend sweep");
        return Ok(());
    }
    for _ in 0..trials {
        let a = random_block(rng);
        let b = random_block(rng);
        let k = rng.random_range(1..=ALPHA);
        let pat: Vec<u8> = (0..k).map(|_| rng.random()).collect();

        let checks: [(&str, u64, u64); 4] = [
            (
                "wscmp",
                packed_word::wscmp(Backend::Reference, &a, &b) as u64,
                packed_word::wscmp(Backend::Simd, &a, &b) as u64,
            ),
            (
                "wsmatch_exact",
                packed_word::wsmatch_exact(Backend::Reference, &a, &pat).unwrap() as u64,
                packed_word::wsmatch_exact(Backend::Simd, &a, &pat).unwrap() as u64,
            ),
            (
                "wscrc",
                packed_word::wscrc(Backend::Reference, &a) as u64,
                packed_word::wscrc(Backend::Simd, &a) as u64,
            ),
            (
                "wsblend",
                u64::from_le_bytes(
                    packed_word::wsblend(Backend::Reference, &a, &b)[..8].try_into().unwrap(),
                ),
                u64::from_le_bytes(
                    packed_word::wsblend(Backend::Simd, &a, &b)[..8].try_into().unwrap(),
                ),
            ),
        ];
        for (op, reference, simd) in checks {
            if reference != simd {
                return Err(anyhow!(
                    "backend mismatch in {op}: a={} b={} pat={} reference={reference:#x} \
                     simd={simd:#x}",
                    hex(&a),
                    hex(&b),
                    hex(&pat)
                ));
            }
        }
        if k >= 4 {
            let reference = packed_word::wsmatch_filter4(Backend::Reference, &a, &pat).unwrap();
            let simd = packed_word::wsmatch_filter4(Backend::Simd, &a, &pat).unwrap();
            if reference != simd {
                return Err(anyhow!(
                    "backend mismatch in wsmatch_filter4: a={} pat={} reference={reference:#06x} \
                     simd={simd:#06x}",
                    hex(&a),
                    hex(&pat)
                ));
            }
        }
    }
    Ok(())
}

fn apply_fault(mut positions: Vec<usize>, fault: Option<InjectFault>) -> Vec<usize> {
    match fault {
        None => positions,
        Some(InjectFault::DropLast) => {
            positions.pop();
            positions
        }
        Some(InjectFault::ShiftByOne) => positions.iter().map(|&s| s + 1).collect(),
    }
}

fn check_oracle_equivalence(
    trials: usize,
    rng: &mut ChaCha8Rng,
    backend: Backend,
    fault: Option<InjectFault>,
) -> Result<()> {
    const SIGMAS: [u32; 5] = [2, 4, 20, 64, 256];
    for trial in 0..trials {
        let sigma = SIGMAS[trial % SIGMAS.len()];
        let n = rng.random_range(0..2048);
        let m = rng.random_range(1..=80);
        let text: Vec<u8> = (0..n).map(|_| rng.random_range(0..sigma) as u8).collect();
        let needle: Vec<u8> = if n >= m && rng.random_bool(0.7) {
            let at = rng.random_range(0..=n - m);
            text[at..at + m].to_vec()
        } else {
            (0..m).map(|_| rng.random_range(0..sigma) as u8).collect()
        };
        let t = Text::new(text);
        let p = Pattern::new(needle).unwrap();
        let expected = naive_search(&p, &t);

        let got = apply_fault(search(&p, &t, backend).into_vec(), fault);
        if got != expected.positions() {
            return Err(anyhow!(
                "search(epsm) disagrees with naive at trial {trial}:\n  pattern: {}\n  text: {}\n\
                 \x20 expected: {:?}\n  got: {:?}",
                hex(p.bytes()),
                hex(t.bytes()),
                expected.positions(),
                got
            ));
        }

        if m <= 64 {
            let so = shift_or_search(&p, &t).expect("m <= 64");
            if so != expected {
                return Err(anyhow!(
                    "shift_or disagrees with naive at trial {trial}: pattern={} text={}",
                    hex(p.bytes()),
                    hex(t.bytes())
                ));
            }
            let q = 2.min(m);
            let sb = sbndm_q_search(&p, &t, q).expect("q <= m <= 64");
            if sb != expected {
                return Err(anyhow!(
                    "sbndm_q(q={q}) disagrees with naive at trial {trial}: pattern={} text={}",
                    hex(p.bytes()),
                    hex(t.bytes())
                ));
            }
        }
    }
    Ok(())
}

/// Runs both sweeps. Returns an error carrying the first counterexample.
pub fn run(trials: usize, seed: u64, backend: Backend, fault: Option<InjectFault>) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    check_backend_equivalence(trials, &mut rng)?;
    check_oracle_equivalence(trials, &mut rng, backend, fault)?;
    println!(
        "selftest: {trials} backend trials + {trials} oracle trials passed (backend={}, simd {})",
        backend.name(),
        if simd_available() { "available" } else { "unavailable" }
    );
    Ok(())
}
