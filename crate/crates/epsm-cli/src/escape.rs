//! Pattern unescaping: `\xNN` byte escapes and `\\`.

use anyhow::{bail, Result};

/// Turns a command-line pattern into raw bytes. `\xNN` inserts the byte with
/// hex value `NN`; `\\` inserts a backslash; any other escape is rejected.
pub fn unescape_pattern(input: &str) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(input.len());
    let mut chars = input.bytes();
    while let Some(b) = chars.next() {
        if b != b'\\' {
            out.push(b);
            continue;
        }
        match chars.next() {
            Some(b'\\') => out.push(b'\\'),
            Some(b'x') => {
                let hi = chars.next();
                let lo = chars.next();
                let (Some(hi), Some(lo)) = (hi, lo) else {
                    bail!("truncated \\x escape in pattern");
                };
                let hex = [hi, lo];
                let hex = std::str::from_utf8(&hex)?;
                let value = u8::from_str_radix(hex, 16)
                    .map_err(|_| anyhow::anyhow!("invalid \\x{hex} escape in pattern"))?;
                out.push(value);
            }
            Some(other) => bail!("unknown escape `\\{}` in pattern", other as char),
            None => bail!("dangling backslash in pattern"),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_text_passes_through() {
        assert_eq!(unescape_pattern("acgt").unwrap(), b"acgt");
    }

    #[test]
    fn hex_escapes_decode() {
        assert_eq!(unescape_pattern(r"\x00\xff\x41").unwrap(), vec![0, 255, 0x41]);
    }

    #[test]
    fn double_backslash_is_literal() {
        assert_eq!(unescape_pattern(r"a\\b").unwrap(), b"a\\b");
    }

    #[test]
    fn bad_escapes_are_rejected() {
        assert!(unescape_pattern(r"\q").is_err());
        assert!(unescape_pattern(r"\x4").is_err());
        assert!(unescape_pattern(r"\xzz").is_err());
        assert!(unescape_pattern(r"tail\").is_err());
    }
}
