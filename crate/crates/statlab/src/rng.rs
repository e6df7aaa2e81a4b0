//! Seedable generator for reproducible corpora.
//!
//! This is SplitMix64. It is spelled out constant by constant so a corpus
//! can be regenerated exactly from the seed in any language:
//!
//! ```text
//! state <- state + 0x9E3779B97F4A7C15              (mod 2^64)
//! z <- state
//! z <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9      (mod 2^64)
//! z <- (z xor (z >> 27)) * 0x94D049BB133111EB      (mod 2^64)
//! output  z xor (z >> 31)
//! ```
//!
//! Statistical quality is far beyond what corpus sampling needs, state is
//! one word, and every seed (including 0) is fine.

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Value in `0..bound` by plain modulo reduction. The modulo bias is
    /// below `bound / 2^64` - irrelevant at the bounds used here (< 2^13)
    /// - and the reduction stays trivial to port.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        self.next_u64() % bound
    }

    /// Low bit of the next output.
    pub fn next_bit(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    /// Low byte of the next output.
    pub fn next_byte(&mut self) -> u8 {
        (self.next_u64() & 0xFF) as u8
    }
}
