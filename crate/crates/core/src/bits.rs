//! Packed bit strings with single-bit edit operations.

use std::fmt;

use crate::error::{Error, Result};

/// An ordered sequence of bits, packed most-significant-bit-first.
///
/// Bit `i` lives in byte `i / 8` at bit `7 - i % 8`, so building a string
/// from bytes preserves the usual reading order of a byte stream: the top
/// bit of the first byte is bit 0.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bytes: Vec<u8>,
    len: usize,
}

impl BitString {
    /// The empty string.
    pub fn new() -> Self {
        Self::default()
    }

    /// Every bit of `bytes`, in stream order.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        Self {
            bytes: bytes.to_vec(),
            len: bytes.len() * 8,
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut out = Self::new();
        for bit in bits {
            out.push(bit);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, index: usize) -> Option<bool> {
        (index < self.len).then(|| self.bit(index))
    }

    fn bit(&self, index: usize) -> bool {
        self.bytes[index / 8] >> (7 - index % 8) & 1 == 1
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            *self.bytes.last_mut().unwrap() |= 1 << (7 - self.len % 8);
        }
        self.len += 1;
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.bit(i))
    }

    fn check_position(&self, position: usize, bound: usize) -> Result<()> {
        if position >= bound {
            return Err(Error::BitPositionOutOfRange {
                position,
                len: self.len,
            });
        }
        Ok(())
    }

    /// A copy with the bit at `position` inverted.
    pub fn with_flipped(&self, position: usize) -> Result<Self> {
        self.check_position(position, self.len)?;
        let mut out = self.clone();
        out.bytes[position / 8] ^= 1 << (7 - position % 8);
        Ok(out)
    }

    /// A copy with `bit` inserted before `position` (`position == len`
    /// appends), lengthening the string by one.
    pub fn with_inserted(&self, position: usize, bit: bool) -> Result<Self> {
        self.check_position(position, self.len + 1)?;
        let head = self.iter().take(position);
        let tail = self.iter().skip(position);
        Ok(Self::from_bits(
            head.chain(std::iter::once(bit)).chain(tail),
        ))
    }

    /// A copy with the bit at `position` removed, shortening the string by
    /// one.
    pub fn with_deleted(&self, position: usize) -> Result<Self> {
        self.check_position(position, self.len)?;
        let head = self.iter().take(position);
        let tail = self.iter().skip(position + 1);
        Ok(Self::from_bits(head.chain(tail)))
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self::from_bits(iter)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(len={}, ", self.len)?;
        for bit in self.iter().take(64) {
            write!(f, "{}", u8::from(bit))?;
        }
        if self.len > 64 {
            write!(f, "...")?;
        }
        write!(f, ")")
    }
}
