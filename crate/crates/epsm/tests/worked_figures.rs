//! The worked instruction figures at `w = 48`, `gamma = 4`, `alpha = 12`,
//! executed on the generic reference backend.

use epsm::packed_word::{Backend, BlockMask, Word, WordConfig};

fn cfg() -> WordConfig {
    WordConfig::new(48, 4).unwrap()
}

// operands of the compare/blend figure
const CMP_A: [u32; 12] = [0b0110, 0b0010, 0b0111, 0b1010, 0b0010, 0b1110, 0b0010, 0b0100, 0b0110, 0b0111, 0b0100, 0b0010];
const CMP_B: [u32; 12] = [0b0100, 0b0010, 0b0000, 0b0111, 0b1111, 0b0010, 0b0010, 0b1100, 0b0110, 0b0100, 0b1110, 0b0010];

#[test]
fn wscmp_figure() {
    let a = Word::new(cfg(), &CMP_A).unwrap();
    let b = Word::new(cfg(), &CMP_B).unwrap();
    let r = a.wscmp(&b).unwrap();
    assert_eq!(r.positions(), vec![1, 6, 8, 11]);
    assert_eq!(r.popcount(), 4);
    // symmetric
    assert_eq!(b.wscmp(&a).unwrap(), r);
}

#[test]
fn wsmatch_figure() {
    let a = Word::new(
        cfg(),
        &[0b0110, 0b1010, 0b0111, 0b1010, 0b0100, 0b1010, 0b0111, 0b1010, 0b0000, 0b1010, 0b0100, 0b0010],
    )
    .unwrap();
    let r = a.wsmatch_exact(&[0b1010, 0b0111, 0b1010]).unwrap();
    assert_eq!(r.positions(), vec![1, 5]);
}

#[test]
fn wsblend_figure() {
    let a = Word::new(cfg(), &CMP_A).unwrap();
    let b = Word::new(cfg(), &CMP_B).unwrap();
    let r = a.wsblend(&b).unwrap();
    let expected = [0b0010, 0b0100, 0b0110, 0b0111, 0b0100, 0b0010, 0b0100, 0b0010, 0b0000, 0b0111, 0b1111, 0b0010];
    assert_eq!(r.chars(), &expected[..]);
}

#[test]
fn wsblend_halves_identity() {
    let a = Word::new(cfg(), &CMP_A).unwrap();
    let b = Word::new(cfg(), &CMP_B).unwrap();
    let r = a.wsblend(&b).unwrap();
    assert_eq!(&r.chars()[..6], &a.chars()[6..]);
    assert_eq!(&r.chars()[6..], &b.chars()[..6]);
}

#[test]
fn broadcast_sixteen_copies() {
    let w = Word::broadcast(WordConfig::HW, b'a' as u32).unwrap();
    assert!(w.chars().iter().all(|&c| c == b'a' as u32));
    assert_eq!(w.chars().len(), 16);
    assert_eq!(epsm::packed_word::broadcast(Backend::Reference, b'a'), *b"aaaaaaaaaaaaaaaa");
}

#[test]
fn mask_positions_of_figure_mask() {
    let mask = BlockMask::from_bits(12, (1 << 1) | (1 << 6) | (1 << 8) | (1 << 11));
    assert_eq!(mask.positions(), vec![1, 6, 8, 11]);
    assert_eq!(mask.popcount(), 4);
    assert_eq!(BlockMask::empty(12).positions(), Vec::<usize>::new());
    let full = BlockMask::from_bits(16, u64::MAX);
    assert_eq!(full.positions(), (0..16).collect::<Vec<_>>());
}
