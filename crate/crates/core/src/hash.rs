//! Message-to-digest pipeline.
//!
//! A message is read as a bit string (one walk step per bit), the final
//! node distribution is scaled by `10^l` and floored, and each node's value
//! is reduced mod `2^m` to an m-bit block. The digest is the concatenation
//! `B_0 || B_1 || ... || B_{n-1}`, each block written high bit first.
//!
//! The floor-of-scaled-probability map is deliberately defined over
//! binary64: `floor(p * scale)` with `scale = 10^l` rounded once from the
//! exact integer power. Any two IEEE-754-faithful implementations that
//! follow the stepper's evaluation order reproduce digests bit for bit.

use std::fmt;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::params::{pow10_u128, WalkParams, MAX_BITS_PER_NODE, MAX_SCALE_EXPONENT};
use crate::walk::evolve;

/// View a byte message as walk input: every byte contributes its bits most
/// significant first.
pub fn message_bits(message: &[u8]) -> BitString {
    BitString::from_bytes(message)
}

/// A digest: `n` blocks of `m` bits each.
#[derive(Clone, PartialEq, Eq)]
pub struct Digest {
    blocks: Vec<u64>,
    m: u32,
}

impl Digest {
    pub fn new(blocks: Vec<u64>, m: u32) -> Result<Self> {
        if m == 0 || m > MAX_BITS_PER_NODE {
            return Err(Error::BitsPerNodeOutOfRange(m));
        }
        for (index, &block) in blocks.iter().enumerate() {
            if block >> m != 0 {
                return Err(Error::BlockTooWide { index, block, m });
            }
        }
        Ok(Self { blocks, m })
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    /// Bits per block (`m`).
    pub fn block_bits(&self) -> u32 {
        self.m
    }

    /// Total length `n * m` in bits.
    pub fn bit_len(&self) -> usize {
        self.blocks.len() * self.m as usize
    }

    /// Digest bit `index`, counting from the high bit of block 0.
    pub fn bit(&self, index: usize) -> Option<bool> {
        if index >= self.bit_len() {
            return None;
        }
        let m = self.m as usize;
        let block = self.blocks[index / m];
        Some(block >> (m - 1 - index % m) & 1 == 1)
    }

    /// All digest bits, block 0's high bit first.
    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        let m = self.m;
        self.blocks
            .iter()
            .flat_map(move |&block| (0..m).rev().map(move |k| block >> k & 1 == 1))
    }

    /// Reassemble a digest from its bit serialization. The length must
    /// divide evenly into `m`-bit blocks.
    pub fn from_bits(bits: &BitString, m: u32) -> Result<Self> {
        if m == 0 || m > MAX_BITS_PER_NODE {
            return Err(Error::BitsPerNodeOutOfRange(m));
        }
        if !bits.len().is_multiple_of(m as usize) {
            return Err(Error::BitCountNotBlockMultiple {
                bits: bits.len(),
                m,
            });
        }
        let mut blocks = Vec::with_capacity(bits.len() / m as usize);
        let mut acc = 0u64;
        for (i, bit) in bits.iter().enumerate() {
            acc = acc << 1 | u64::from(bit);
            if (i + 1) % m as usize == 0 {
                blocks.push(acc);
                acc = 0;
            }
        }
        Ok(Self { blocks, m })
    }

    /// Hex form: `ceil(bit_len / 4)` uppercase digits. When the bit length
    /// is not a multiple of four, the leading digit encodes only
    /// `bit_len mod 4` bits.
    pub fn to_hex(&self) -> String {
        let len = self.bit_len();
        if len == 0 {
            return String::new();
        }
        let mut digits = String::with_capacity(len.div_ceil(4));
        let mut nibble = 0u8;
        let mut filled = if len.is_multiple_of(4) {
            0
        } else {
            4 - len % 4
        };
        for bit in self.bits() {
            nibble = nibble << 1 | u8::from(bit);
            filled += 1;
            if filled == 4 {
                digits.push(
                    char::from_digit(nibble as u32, 16)
                        .unwrap()
                        .to_ascii_uppercase(),
                );
                nibble = 0;
                filled = 0;
            }
        }
        digits
    }

    /// Byte form used for whole-byte comparisons: `ceil(bit_len / 8)`
    /// bytes, zero-padded at the front so the digest occupies the low
    /// `bit_len` bits of the array.
    pub fn collision_bytes(&self) -> Vec<u8> {
        let len = self.bit_len();
        let pad = (8 - len % 8) % 8;
        let mut out = vec![0u8; len.div_ceil(8)];
        for (i, bit) in self.bits().enumerate() {
            if bit {
                let pos = pad + i;
                out[pos / 8] |= 1 << (7 - pos % 8);
            }
        }
        out
    }

    /// Number of differing bits. Lengths must match.
    pub fn hamming_distance(&self, other: &Self) -> Result<u32> {
        if self.bit_len() != other.bit_len() {
            return Err(Error::DigestLengthMismatch {
                left: self.bit_len(),
                right: other.bit_len(),
            });
        }
        let distance = self
            .collision_bytes()
            .iter()
            .zip(other.collision_bytes())
            .map(|(a, b)| (a ^ b).count_ones())
            .sum();
        Ok(distance)
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digest(m={}, {})", self.m, self.to_hex())
    }
}

/// Quantize a node distribution into digest blocks:
/// `B_x = floor(p_x * 10^l) mod 2^m`.
pub fn digest_from_distribution(probs: &[f64], m: u32, l: u32) -> Result<Digest> {
    if m == 0 || m > MAX_BITS_PER_NODE {
        return Err(Error::BitsPerNodeOutOfRange(m));
    }
    if l == 0 || l > MAX_SCALE_EXPONENT {
        return Err(Error::ScaleExponentOutOfRange(l));
    }
    let scale = pow10_u128(l) as f64;
    let modulus = 1u128 << m;
    let blocks = probs
        .iter()
        .map(|&p| {
            let scaled = (p * scale).floor();
            ((scaled as u128) % modulus) as u64
        })
        .collect();
    Ok(Digest { blocks, m })
}

/// Hash a byte message under `params`.
pub fn qhfm_hash(message: &[u8], params: &WalkParams) -> Digest {
    qhfm_hash_bits(&message_bits(message), params)
}

/// Hash an explicit bit string under `params`.
pub fn qhfm_hash_bits(message: &BitString, params: &WalkParams) -> Digest {
    let state = evolve(params, message);
    let probs = state.position_distribution();
    digest_from_distribution(&probs, params.m(), params.l())
        .expect("block and scale ranges validated by WalkParams")
}
