//! The advice tape: an infinite bit string prepared by an advisor.
//!
//! Only a finite prefix is ever written; reads past the written end return
//! filler bits drawn from a seeded generator, modeling a tape initialized
//! with random bits. An algorithm that over-reads correct advice therefore
//! behaves nondeterministically across filler seeds -- tests exploit this to
//! prove no strategy reads more than its advisor wrote.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AdviceError {
    #[error("value {value} does not fit in a {width}-bit field")]
    FieldOverflow { value: u64, width: usize },
    #[error("malformed self-delimiting prefix: {0} leading ones")]
    MalformedPrefix(usize),
    #[error("malformed tape literal: {0}")]
    MalformedLiteral(String),
}

/// Position of the highest set bit plus one; 0 for 0.
pub fn bit_length(v: u64) -> usize {
    (64 - v.leading_zeros()) as usize
}

/// Bits the self-delimiting encoding of `v` occupies: `2 * bit_length(v) + 1`.
pub fn self_delimiting_len(v: u64) -> usize {
    2 * bit_length(v) + 1
}

/// Width of a fixed field holding any value in `0..count`; zero for a
/// single-valued field.
pub fn field_width(count: u64) -> usize {
    assert!(count > 0, "field must admit at least one value");
    bit_length(count - 1)
}

/// A sequential advice tape with a written prefix and seeded random filler.
#[derive(Debug, Clone)]
pub struct AdviceTape {
    bits: Vec<bool>,
    cursor: usize,
    filler_seed: u64,
    filler: ChaCha8Rng,
}

impl AdviceTape {
    pub fn new() -> Self {
        Self::with_filler_seed(0)
    }

    /// A tape whose out-of-prefix bits come from the given seed.
    pub fn with_filler_seed(seed: u64) -> Self {
        AdviceTape {
            bits: Vec::new(),
            cursor: 0,
            filler_seed: seed,
            filler: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Rebuilds a tape around an existing written prefix.
    pub fn from_bits(bits: Vec<bool>, filler_seed: u64) -> Self {
        AdviceTape {
            bits,
            cursor: 0,
            filler_seed,
            filler: ChaCha8Rng::seed_from_u64(filler_seed),
        }
    }

    pub fn written_bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bits_written(&self) -> usize {
        self.bits.len()
    }

    /// Total bits consumed so far, including any filler reads.
    pub fn bits_read(&self) -> usize {
        self.cursor
    }

    /// True once reads have gone past the written prefix.
    pub fn over_read(&self) -> bool {
        self.cursor > self.bits.len()
    }

    pub fn filler_seed(&self) -> u64 {
        self.filler_seed
    }

    pub fn write_bit(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    /// Writes `value` MSB-first into a fixed-width field.
    pub fn write_fixed(&mut self, value: u64, width: usize) -> Result<(), AdviceError> {
        if width < 64 && value >> width != 0 {
            return Err(AdviceError::FieldOverflow { value, width });
        }
        for i in (0..width).rev() {
            self.write_bit((value >> i) & 1 == 1);
        }
        Ok(())
    }

    /// Writes `v` self-delimited: `L` ones, a zero, then `v` in `L` bits,
    /// where `L = bit_length(v)`. Zero encodes as the single bit `0`.
    pub fn write_self_delimiting(&mut self, v: u64) {
        let len = bit_length(v);
        for _ in 0..len {
            self.write_bit(true);
        }
        self.write_bit(false);
        self.write_fixed(v, len).expect("value fits its own bit length");
    }

    pub fn read_bit(&mut self) -> bool {
        let bit = if self.cursor < self.bits.len() {
            self.bits[self.cursor]
        } else {
            self.filler.gen::<bool>()
        };
        self.cursor += 1;
        bit
    }

    /// Reads a fixed-width MSB-first field.
    pub fn read_fixed(&mut self, width: usize) -> u64 {
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | u64::from(self.read_bit());
        }
        v
    }

    /// Reads a self-delimited value; rejects prefixes longer than 63 ones.
    pub fn read_self_delimiting(&mut self) -> Result<u64, AdviceError> {
        let mut len = 0;
        while self.read_bit() {
            len += 1;
            if len > 63 {
                return Err(AdviceError::MalformedPrefix(len));
            }
        }
        Ok(self.read_fixed(len))
    }

    /// Compact literal: written bit count, a colon, then the bits packed
    /// MSB-first as hexadecimal (zero-padded to a nibble boundary).
    pub fn to_compact_string(&self) -> String {
        let mut hex = String::new();
        for chunk in self.bits.chunks(4) {
            let mut nibble = 0u8;
            for (i, &b) in chunk.iter().enumerate() {
                if b {
                    nibble |= 1 << (3 - i);
                }
            }
            hex.push(char::from_digit(u32::from(nibble), 16).unwrap());
        }
        format!("{}:{}", self.bits.len(), hex)
    }

    /// Parses the compact literal form.
    pub fn from_compact_string(s: &str, filler_seed: u64) -> Result<Self, AdviceError> {
        let bad = || AdviceError::MalformedLiteral(s.to_string());
        let (len_part, hex_part) = s.split_once(':').ok_or_else(bad)?;
        let len: usize = len_part.parse().map_err(|_| bad())?;
        if hex_part.len() != len.div_ceil(4) {
            return Err(bad());
        }
        let mut bits = Vec::with_capacity(len);
        for c in hex_part.chars() {
            let nibble = c.to_digit(16).ok_or_else(bad)? as u8;
            for i in (0..4).rev() {
                bits.push(nibble & (1 << i) != 0);
            }
        }
        for &pad in &bits[len..] {
            if pad {
                return Err(bad());
            }
        }
        bits.truncate(len);
        Ok(Self::from_bits(bits, filler_seed))
    }
}

impl Default for AdviceTape {
    fn default() -> Self {
        Self::new()
    }
}
