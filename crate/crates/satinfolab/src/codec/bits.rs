//! Bit strings and bit-level readers.
//!
//! [`BitString`] is the currency of the codec: an ordered sequence of bits
//! with two external forms, a human-readable ASCII `0`/`1` form and a packed
//! byte form that appends one trailer byte holding `length mod 8` so the
//! exact bit length survives the trip through whole bytes.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BitStringError {
    #[error("bit strings may only contain '0' and '1', found {0:?}")]
    BadCharacter(char),
    #[error("packed form must contain at least the trailer byte")]
    EmptyPacked,
    #[error("packed trailer byte must be 0..=7, found {0}")]
    BadTrailer(u8),
    #[error("packed payload has nonzero bits past the declared length")]
    DirtyTail,
}

/// An ordered bit sequence, packed eight bits per byte, first bit in the
/// high bit of the first byte. Unused trailing bits are kept zero so that
/// equality and hashing work on the raw bytes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bytes: Vec<u8>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitString {
            bytes: Vec::with_capacity(bits.div_ceil(8)),
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            let byte = self.len / 8;
            self.bytes[byte] |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    pub fn get(&self, index: usize) -> Option<bool> {
        if index >= self.len {
            return None;
        }
        Some(self.bytes[index / 8] & (0x80 >> (index % 8)) != 0)
    }

    /// Indexing form of [`BitString::get`]; panics out of range.
    pub fn bit(&self, index: usize) -> bool {
        self.get(index).expect("bit index out of range")
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.bit(i))
    }

    /// Append `width` bits of `value`, most significant first.
    /// `value` must fit in `width` bits.
    pub fn push_uint(&mut self, value: u64, width: u32) {
        assert!(width <= 64, "push_uint supports widths up to 64");
        assert!(
            width == 64 || value < (1u64 << width),
            "value {value} does not fit in {width} bits"
        );
        for shift in (0..width).rev() {
            self.push((value >> shift) & 1 == 1);
        }
    }

    /// A fresh bit string holding `value` in exactly `width` bits.
    pub fn from_uint(value: u64, width: u32) -> Self {
        let mut bs = Self::with_capacity(width as usize);
        bs.push_uint(value, width);
        bs
    }

    /// Append the Elias gamma code of `value ≥ 1`: for a value of bit width
    /// `w`, that is `w - 1` zeros followed by the `w` binary digits.
    /// gamma(1) = `1`, gamma(2) = `010`, gamma(4) = `00100`.
    pub fn push_gamma(&mut self, value: u64) {
        assert!(value >= 1, "gamma codes exist for values >= 1");
        let width = 64 - value.leading_zeros();
        for _ in 0..width - 1 {
            self.push(false);
        }
        self.push_uint(value, width);
    }

    pub fn extend_bits(&mut self, other: &BitString) {
        for bit in other.iter() {
            self.push(bit);
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        bits.iter().copied().collect()
    }

    /// Parse an ASCII `0`/`1` string.
    pub fn from_ascii(s: &str) -> Result<Self, BitStringError> {
        let mut bs = Self::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bs.push(false),
                '1' => bs.push(true),
                other => return Err(BitStringError::BadCharacter(other)),
            }
        }
        Ok(bs)
    }

    /// Packed byte form: the payload bytes followed by one trailer byte
    /// holding `len mod 8` (0 means the payload ends on a byte boundary).
    pub fn to_packed_bytes(&self) -> Vec<u8> {
        let mut out = self.bytes.clone();
        out.push((self.len % 8) as u8);
        out
    }

    /// Inverse of [`BitString::to_packed_bytes`]. Rejects payloads whose
    /// spare tail bits are nonzero, so the mapping is one-to-one.
    pub fn from_packed_bytes(data: &[u8]) -> Result<Self, BitStringError> {
        let (&trailer, payload) = data.split_last().ok_or(BitStringError::EmptyPacked)?;
        if trailer > 7 {
            return Err(BitStringError::BadTrailer(trailer));
        }
        let len = if trailer == 0 {
            payload.len() * 8
        } else {
            if payload.is_empty() {
                return Err(BitStringError::BadTrailer(trailer));
            }
            (payload.len() - 1) * 8 + trailer as usize
        };
        let bs = BitString {
            bytes: payload.to_vec(),
            len,
        };
        if let Some(&last) = payload.last() {
            let used = ((len + 7) % 8) + 1;
            if len % 8 != 0 && last & (0xffu8 >> used) != 0 {
                return Err(BitStringError::DirtyTail);
            }
        }
        Ok(bs)
    }

    /// Reader positioned at the first bit.
    pub fn reader(&self) -> BitReader<'_> {
        BitReader { bits: self, pos: 0 }
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<T: IntoIterator<Item = bool>>(iter: T) -> Self {
        let mut bs = BitString::new();
        for bit in iter {
            bs.push(bit);
        }
        bs
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            write!(f, "{}", if bit { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = BitStringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_ascii(s)
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Sequential reader over a [`BitString`].
pub struct BitReader<'a> {
    bits: &'a BitString,
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn read_bit(&mut self) -> Option<bool> {
        let bit = self.bits.get(self.pos)?;
        self.pos += 1;
        Some(bit)
    }

    /// Read `width ≤ 64` bits, most significant first. `None` if fewer than
    /// `width` bits remain (the position is left unchanged in that case).
    pub fn read_uint(&mut self, width: u32) -> Option<u64> {
        assert!(width <= 64, "read_uint supports widths up to 64");
        if self.remaining() < width as usize {
            return None;
        }
        let mut value = 0u64;
        for _ in 0..width {
            value = (value << 1) | u64::from(self.read_bit().unwrap());
        }
        Some(value)
    }

    /// Read an Elias gamma code. `None` on malformed or truncated input and
    /// for values that would overflow 63 bits.
    pub fn read_gamma(&mut self) -> Option<u64> {
        let mut zeros = 0u32;
        while !self.read_bit()? {
            zeros += 1;
            if zeros > 62 {
                return None;
            }
        }
        let rest = self.read_uint(zeros)?;
        Some((1u64 << zeros) | rest)
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }

    pub fn position(&self) -> usize {
        self.pos
    }
}
