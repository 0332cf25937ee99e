//! Reference implementation of the packed instruction set, generic over the
//! word width `w` and character width `gamma`.
//!
//! The fixed 16-byte layer in [`super::block`] is what the kernels run on;
//! this module exists so the instruction semantics can be exercised at other
//! geometries (for example `w = 48`, `gamma = 4`, `alpha = 12`) and serves as
//! the ground truth the SIMD backend is checked against.

/// Word geometry: `w` bits per word, `gamma` bits per character,
/// `alpha = w / gamma` characters per word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordConfig {
    w: u32,
    gamma: u32,
}

/// Errors from constructing or combining generic words.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("gamma = {gamma} does not divide the word width w = {w}")]
    GammaNotDividing { w: u32, gamma: u32 },
    #[error("alpha = {alpha} must be even")]
    OddAlpha { alpha: u32 },
    #[error("alpha = {alpha} exceeds the supported limit of 64 characters per word")]
    AlphaTooLarge { alpha: u32 },
    #[error("gamma = {gamma} exceeds the supported limit of 32 bits per character")]
    GammaTooLarge { gamma: u32 },
    #[error("expected {expected} characters, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("character {value:#x} does not fit in gamma = {gamma} bits")]
    CharOutOfRange { value: u32, gamma: u32 },
    #[error("operands have different word configurations")]
    ConfigMismatch,
    #[error("short string of length {k} does not fit alpha = {alpha} characters")]
    MatchTooLong { k: usize, alpha: usize },
    #[error("short string must not be empty")]
    EmptyMatch,
    #[error("wsmatch_filter4 requires at least 4 characters, got {k}")]
    FilterPrefixTooShort { k: usize },
    #[error("wscrc requires a word width divisible by 8, got w = {w}")]
    CrcUnalignedWidth { w: u32 },
}

impl WordConfig {
    /// The hardware geometry: 128-bit words over 8-bit characters.
    pub const HW: WordConfig = WordConfig { w: 128, gamma: 8 };

    pub fn new(w: u32, gamma: u32) -> Result<WordConfig, WordError> {
        if gamma == 0 || w == 0 || !w.is_multiple_of(gamma) {
            return Err(WordError::GammaNotDividing { w, gamma });
        }
        if gamma > 32 {
            return Err(WordError::GammaTooLarge { gamma });
        }
        let alpha = w / gamma;
        if !alpha.is_multiple_of(2) {
            return Err(WordError::OddAlpha { alpha });
        }
        if alpha > 64 {
            return Err(WordError::AlphaTooLarge { alpha });
        }
        Ok(WordConfig { w, gamma })
    }

    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    /// Characters per word.
    pub fn alpha(&self) -> usize {
        (self.w / self.gamma) as usize
    }

    /// Alphabet size of the packed representation, `2^gamma`.
    pub fn sigma(&self) -> u64 {
        1u64 << self.gamma
    }

    fn check_char(&self, value: u32) -> Result<(), WordError> {
        if self.gamma < 32 && value >> self.gamma != 0 {
            return Err(WordError::CharOutOfRange { value, gamma: self.gamma });
        }
        Ok(())
    }
}

/// A word of `alpha` packed characters, each `gamma` bits wide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    config: WordConfig,
    chars: Vec<u32>,
}

/// An `alpha`-bit match mask. Bit `i` refers to character offset `i` of the
/// corresponding word; bit 0 is the first character.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockMask {
    alpha: usize,
    bits: u64,
}

impl BlockMask {
    pub fn from_bits(alpha: usize, bits: u64) -> BlockMask {
        debug_assert!(alpha <= 64);
        let keep = if alpha == 64 { !0 } else { (1u64 << alpha) - 1 };
        BlockMask { alpha, bits: bits & keep }
    }

    pub fn empty(alpha: usize) -> BlockMask {
        BlockMask { alpha, bits: 0 }
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn bit(&self, i: usize) -> bool {
        i < self.alpha && self.bits >> i & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// `{r}`: the strictly increasing offsets of the set bits.
    pub fn positions(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.bits.count_ones() as usize);
        let mut rest = self.bits;
        while rest != 0 {
            out.push(rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
        out
    }

    /// `|{r}|`.
    pub fn popcount(&self) -> u32 {
        self.bits.count_ones()
    }
}

impl Word {
    pub fn new(config: WordConfig, chars: &[u32]) -> Result<Word, WordError> {
        if chars.len() != config.alpha() {
            return Err(WordError::WrongLength { expected: config.alpha(), got: chars.len() });
        }
        for &c in chars {
            config.check_char(c)?;
        }
        Ok(Word { config, chars: chars.to_vec() })
    }

    /// Word whose characters all equal `c`.
    pub fn broadcast(config: WordConfig, c: u32) -> Result<Word, WordError> {
        config.check_char(c)?;
        Ok(Word { config, chars: vec![c; config.alpha()] })
    }

    /// Convenience constructor for byte-character configs (`gamma = 8`).
    pub fn from_bytes(config: WordConfig, bytes: &[u8]) -> Result<Word, WordError> {
        let chars: Vec<u32> = bytes.iter().map(|&b| b as u32).collect();
        Word::new(config, &chars)
    }

    pub fn config(&self) -> WordConfig {
        self.config
    }

    pub fn chars(&self) -> &[u32] {
        &self.chars
    }

    fn check_same_config(&self, other: &Word) -> Result<(), WordError> {
        if self.config != other.config {
            return Err(WordError::ConfigMismatch);
        }
        Ok(())
    }

    /// Mask with bit `i` set iff `self[i] == other[i]`.
    pub fn wscmp(&self, other: &Word) -> Result<BlockMask, WordError> {
        self.check_same_config(other)?;
        let mut bits = 0u64;
        for (i, (a, b)) in self.chars.iter().zip(&other.chars).enumerate() {
            if a == b {
                bits |= 1 << i;
            }
        }
        Ok(BlockMask { alpha: self.config.alpha(), bits })
    }

    /// Mask with bit `i` set iff an occurrence of the short string `pat`
    /// begins at offset `i`; bits past `alpha - pat.len()` are clear.
    pub fn wsmatch_exact(&self, pat: &[u32]) -> Result<BlockMask, WordError> {
        let alpha = self.config.alpha();
        if pat.is_empty() {
            return Err(WordError::EmptyMatch);
        }
        if pat.len() > alpha {
            return Err(WordError::MatchTooLong { k: pat.len(), alpha });
        }
        for &c in pat {
            self.config.check_char(c)?;
        }
        let mut bits = 0u64;
        for i in 0..=(alpha - pat.len()) {
            if self.chars[i..i + pat.len()] == *pat {
                bits |= 1 << i;
            }
        }
        Ok(BlockMask { alpha, bits })
    }

    /// Mask of offsets `i < alpha / 2` where the 4-character prefix of `pat`
    /// occurs (offsets whose window would run past the word are skipped).
    pub fn wsmatch_filter4(&self, pat: &[u32]) -> Result<BlockMask, WordError> {
        let alpha = self.config.alpha();
        if pat.len() < 4 {
            return Err(WordError::FilterPrefixTooShort { k: pat.len() });
        }
        for &c in &pat[..4] {
            self.config.check_char(c)?;
        }
        let mut bits = 0u64;
        for i in 0..alpha / 2 {
            if i + 4 <= alpha && self.chars[i..i + 4] == pat[..4] {
                bits |= 1 << i;
            }
        }
        Ok(BlockMask { alpha, bits })
    }

    /// Second half of `self` followed by the first half of `other`.
    pub fn wsblend(&self, other: &Word) -> Result<Word, WordError> {
        self.check_same_config(other)?;
        let half = self.config.alpha() / 2;
        let mut chars = Vec::with_capacity(self.config.alpha());
        chars.extend_from_slice(&self.chars[half..]);
        chars.extend_from_slice(&other.chars[..half]);
        Ok(Word { config: self.config, chars })
    }

    /// CRC-32C of the word's byte image (chained byte-serial accumulation
    /// from initial accumulator 0). Requires `w` divisible by 8.
    pub fn wscrc(&self) -> Result<u32, WordError> {
        let image = self.byte_image()?;
        let mut crc = 0u32;
        for byte in image {
            crc ^= byte as u32;
            for _ in 0..8 {
                crc = if crc & 1 != 0 { (crc >> 1) ^ 0x82f6_3b78 } else { crc >> 1 };
            }
        }
        Ok(crc)
    }

    /// The word's `w / 8` bytes: character `i` occupies bits
    /// `[i * gamma, (i + 1) * gamma)` of the little-endian bit-numbered image,
    /// so at `gamma = 8` byte `i` is exactly character `i`.
    pub fn byte_image(&self) -> Result<Vec<u8>, WordError> {
        if !self.config.w.is_multiple_of(8) {
            return Err(WordError::CrcUnalignedWidth { w: self.config.w });
        }
        let gamma = self.config.gamma as usize;
        let mut image = vec![0u8; (self.config.w / 8) as usize];
        for (i, &c) in self.chars.iter().enumerate() {
            for b in 0..gamma {
                if c >> b & 1 == 1 {
                    let bit = i * gamma + b;
                    image[bit / 8] |= 1 << (bit % 8);
                }
            }
        }
        Ok(image)
    }
}
