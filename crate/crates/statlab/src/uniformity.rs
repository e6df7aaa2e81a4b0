//! Per-bit-position flip statistics.
//!
//! Where the avalanche view collapses each draw to one number, this view
//! collapses each digest bit position to one number: `T_j` counts the
//! draws whose flip changed bit `j`. Both views sum the same underlying
//! 0/1 table, so the total flips - and therefore the mean percentages -
//! coincide exactly. A uniform hash wants every `T_j / N` near 1/2 with
//! small spread across positions.

use serde::Serialize;

use qhfm_core::{Digest, WalkParams};

use crate::avalanche::flip_percent;
use crate::battery::digest_pairs;
use crate::corpus::DrawPair;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct UniformityReport {
    pub draws: usize,
    pub digest_bits: usize,
    /// `T_j`: how many draws flipped digest bit `j`.
    pub flip_counts: Vec<u64>,
    /// Mean of `T_j` over positions.
    pub mean_flip_count: f64,
    /// The mean as a percentage of the draw count; ideal is 50. Computed
    /// from the same totals as the avalanche mean percentage, so the two
    /// are bit-identical on a shared corpus.
    pub mean_flip_percent: f64,
    /// Sample standard deviation of the `T_j` (the `1/(nm-1)` flavor).
    pub flip_count_stddev: f64,
    /// The standard deviation as a percentage of the draw count.
    pub flip_percent_stddev: f64,
}

pub fn uniformity_test(corpus: &[DrawPair], params: &WalkParams) -> Result<UniformityReport> {
    uniformity_from_pairs(&digest_pairs(corpus, params), params.digest_bits())
}

pub fn uniformity_from_pairs(
    pairs: &[(Digest, Digest)],
    digest_bits: usize,
) -> Result<UniformityReport> {
    let draws = pairs.len();
    if draws == 0 {
        return Err(Error::TooFewDraws { min: 1, got: 0 });
    }
    let mut flip_counts = vec![0u64; digest_bits];
    for (original, modified) in pairs {
        if original.bit_len() != digest_bits || modified.bit_len() != digest_bits {
            return Err(Error::Core(qhfm_core::Error::DigestLengthMismatch {
                left: original.bit_len(),
                right: digest_bits,
            }));
        }
        for (j, (a, b)) in original.bits().zip(modified.bits()).enumerate() {
            if a != b {
                flip_counts[j] += 1;
            }
        }
    }
    let total: u64 = flip_counts.iter().sum();
    let mean_flip_count = total as f64 / digest_bits as f64;
    let mean_flip_percent = flip_percent(total, draws, digest_bits);
    let sum_sq: f64 = flip_counts
        .iter()
        .map(|&t| {
            let dev = t as f64 - mean_flip_count;
            dev * dev
        })
        .sum();
    let flip_count_stddev = (sum_sq / (digest_bits - 1) as f64).sqrt();
    let flip_percent_stddev = flip_count_stddev / draws as f64 * 100.0;
    Ok(UniformityReport {
        draws,
        digest_bits,
        flip_counts,
        mean_flip_count,
        mean_flip_percent,
        flip_count_stddev,
        flip_percent_stddev,
    })
}
