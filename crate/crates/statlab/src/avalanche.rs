//! Diffusion and confusion indicators over single-bit-flip digest pairs.
//!
//! For draw `i`, `B_i` counts the digest bits changed by the flip. The
//! report carries the sample mean of `B`, its percentage of the digest
//! length, the sample standard deviation of both, and the combined
//! diffusion-confusion index `(stddev% + |mean% - 50|) / 2` - a single
//! figure that is small exactly when flips change half the digest, tightly
//! concentrated.

use serde::Serialize;

use qhfm_core::{Digest, WalkParams};

use crate::battery::digest_pairs;
use crate::corpus::DrawPair;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct AvalancheReport {
    pub draws: usize,
    pub digest_bits: usize,
    /// Mean changed-bit count per flip.
    pub mean_changed_bits: f64,
    /// The mean as a percentage of the digest length; ideal is 50.
    pub mean_changed_percent: f64,
    /// Sample standard deviation (the `1/(N-1)` flavor) of the counts.
    pub changed_bits_stddev: f64,
    /// The standard deviation as a percentage of the digest length.
    pub changed_percent_stddev: f64,
    /// `(changed_percent_stddev + |mean_changed_percent - 50|) / 2`, in
    /// percentage points.
    pub diffusion_confusion_index: f64,
}

/// Percentage of digest bits flipped, computed from integer totals. The
/// uniformity report calls this with the same arguments, which is what
/// makes the two mean percentages identical down to the last bit.
pub(crate) fn flip_percent(total_flips: u64, draws: usize, digest_bits: usize) -> f64 {
    total_flips as f64 / (draws as f64 * digest_bits as f64) * 100.0
}

pub fn avalanche_test(corpus: &[DrawPair], params: &WalkParams) -> Result<AvalancheReport> {
    avalanche_from_pairs(&digest_pairs(corpus, params), params.digest_bits())
}

pub fn avalanche_from_pairs(
    pairs: &[(Digest, Digest)],
    digest_bits: usize,
) -> Result<AvalancheReport> {
    let draws = pairs.len();
    if draws < 2 {
        return Err(Error::TooFewDraws { min: 2, got: draws });
    }
    let mut distances = Vec::with_capacity(draws);
    let mut total: u64 = 0;
    for (original, modified) in pairs {
        let d = original.hamming_distance(modified)?;
        distances.push(d);
        total += u64::from(d);
    }
    let mean_changed_bits = total as f64 / draws as f64;
    let mean_changed_percent = flip_percent(total, draws, digest_bits);
    let sum_sq: f64 = distances
        .iter()
        .map(|&d| {
            let dev = f64::from(d) - mean_changed_bits;
            dev * dev
        })
        .sum();
    let changed_bits_stddev = (sum_sq / (draws - 1) as f64).sqrt();
    let changed_percent_stddev = changed_bits_stddev / digest_bits as f64 * 100.0;
    let diffusion_confusion_index =
        (changed_percent_stddev + (mean_changed_percent - 50.0).abs()) / 2.0;
    Ok(AvalancheReport {
        draws,
        digest_bits,
        mean_changed_bits,
        mean_changed_percent,
        changed_bits_stddev,
        changed_percent_stddev,
        diffusion_confusion_index,
    })
}
