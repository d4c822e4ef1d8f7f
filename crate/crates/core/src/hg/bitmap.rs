//! Bit vectors in the `colex-v1` wire format: bit r sits in byte r/8 at
//! position r%8 (LSB first), padding bits are zero, base64 standard alphabet.

use base64::engine::general_purpose::STANDARD;
use base64::Engine;

use crate::error::{invalid, Result};

pub const ENCODING: &str = "colex-v1";

pub fn encode(words: &[u64], len: u64) -> String {
    let nbytes = len.div_ceil(8) as usize;
    let mut bytes = Vec::with_capacity(nbytes);
    for i in 0..nbytes {
        bytes.push((words[i / 8] >> ((i % 8) * 8)) as u8);
    }
    STANDARD.encode(bytes)
}

pub fn decode(text: &str, len: u64) -> Result<Vec<u64>> {
    let bytes = STANDARD
        .decode(text)
        .map_err(|e| crate::Error::Invalid(format!("bad base64 bitmap: {e}")))?;
    let nbytes = len.div_ceil(8) as usize;
    if bytes.len() != nbytes {
        return invalid(format!("bitmap has {} bytes, expected {nbytes}", bytes.len()));
    }
    let mut words = vec![0u64; (len as usize).div_ceil(64)];
    for (i, &b) in bytes.iter().enumerate() {
        words[i / 8] |= (b as u64) << ((i % 8) * 8);
    }
    if len % 64 != 0 {
        if let Some(last) = words.last() {
            if last >> (len % 64) != 0 {
                return invalid("nonzero padding bits in bitmap");
            }
        }
    }
    Ok(words)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lsb_first_bytes() {
        // bits 0 and 9 set over 10 bits: bytes 0x01, 0x02
        assert_eq!(encode(&[1 | (1 << 9)], 10), STANDARD.encode([1u8, 2u8]));
        assert_eq!(decode(&STANDARD.encode([1u8, 2u8]), 10).unwrap(), vec![1 | (1 << 9)]);
        assert!(decode(&STANDARD.encode([1u8, 4u8]), 10).is_err());
        assert!(decode(&STANDARD.encode([1u8]), 10).is_err());
    }
}
