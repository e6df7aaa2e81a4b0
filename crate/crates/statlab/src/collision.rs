//! Collision indicators: whole-byte hit counts against the binomial
//! reference, a KL similarity figure, and per-byte digest distance.
//!
//! Digests are compared in their padded byte form (`g = ceil(nm/8)` bytes).
//! For an ideal hash, independent inputs match in `omega` of `g` byte
//! positions with probability `C(g, omega) (1/256)^omega (255/256)^(g-omega)`;
//! the observed hit histogram over a flip-pair corpus is scored against
//! that reference with a base-2 Kullback-Leibler divergence. The absolute
//! per-byte distance has reference mean `(256^2 - 1) / (3 * 256)`, quoted
//! to two decimals below as the conventional comparison constant.

use serde::Serialize;

use qhfm_core::{Digest, WalkParams};

use crate::battery::digest_pairs;
use crate::corpus::DrawPair;
use crate::error::{Error, Result};

/// Reference mean of `|x - y|` for independent uniform bytes, as the
/// two-decimal constant used in comparison tables. The exact value is
/// 65535/768 = 85.33203125.
pub const THEORETICAL_BYTE_DISTANCE: f64 = 85.33;

/// Observed histograms merge hit counts of 4 and above into one bucket
/// for display; this is where the tail starts.
pub const DISPLAY_TAIL_START: usize = 4;

/// Number of byte positions at which the two digests agree.
pub fn hits(a: &Digest, b: &Digest) -> Result<u32> {
    if a.bit_len() != b.bit_len() {
        return Err(Error::Core(qhfm_core::Error::DigestLengthMismatch {
            left: a.bit_len(),
            right: b.bit_len(),
        }));
    }
    Ok(a.collision_bytes()
        .iter()
        .zip(b.collision_bytes())
        .filter(|&(&x, y)| x == y)
        .count() as u32)
}

/// Mean absolute difference of corresponding bytes.
pub fn byte_distance(a: &Digest, b: &Digest) -> Result<f64> {
    if a.bit_len() != b.bit_len() {
        return Err(Error::Core(qhfm_core::Error::DigestLengthMismatch {
            left: a.bit_len(),
            right: b.bit_len(),
        }));
    }
    let bytes = a.collision_bytes();
    let total: u64 = bytes
        .iter()
        .zip(b.collision_bytes())
        .map(|(&x, y)| u64::from(x.abs_diff(y)))
        .sum();
    Ok(total as f64 / bytes.len() as f64)
}

/// Binomial reference `P(omega hits)` for `omega = 0..=g`, computed in log
/// space so large `g` stays accurate.
pub fn theoretical_hit_probabilities(bytes_per_digest: usize) -> Vec<f64> {
    let g = bytes_per_digest;
    let ln_p = (1.0f64 / 256.0).ln();
    let ln_q = (255.0f64 / 256.0).ln();
    let mut probs = Vec::with_capacity(g + 1);
    let mut ln_choose = 0.0f64;
    for omega in 0..=g {
        if omega > 0 {
            ln_choose += ((g - omega + 1) as f64 / omega as f64).ln();
        }
        probs.push((ln_choose + omega as f64 * ln_p + (g - omega) as f64 * ln_q).exp());
    }
    probs
}

/// Expected draw counts `W_t(omega)`: the reference probabilities scaled
/// by the draw count and rounded to the nearest integer. Rounding means
/// the row can sum to one less than the draw count; that is expected.
pub fn theoretical_hit_distribution(bytes_per_digest: usize, draws: usize) -> Vec<u64> {
    theoretical_hit_probabilities(bytes_per_digest)
        .into_iter()
        .map(|p| (draws as f64 * p).round() as u64)
        .collect()
}

/// Base-2 KL divergence of the observed histogram from the reference
/// probabilities, over the full support. Zero-count buckets contribute
/// zero (the `0 log 0 = 0` convention); observed mass on a zero-probability
/// bucket is an error rather than infinity, since the binomial reference
/// never vanishes where counts can land.
pub fn kl_divergence(observed: &[u64], reference: &[f64], draws: usize) -> Result<f64> {
    if observed.len() != reference.len() {
        return Err(Error::HistogramLengthMismatch {
            left: observed.len(),
            right: reference.len(),
        });
    }
    let total: u64 = observed.iter().sum();
    if total != draws as u64 {
        return Err(Error::HistogramSumMismatch {
            expected: draws as u64,
            got: total,
        });
    }
    let mut divergence = 0.0f64;
    for (hits, (&count, &p)) in observed.iter().zip(reference).enumerate() {
        if count == 0 {
            continue;
        }
        if p <= 0.0 {
            return Err(Error::DegenerateReference { hits });
        }
        let pe = count as f64 / draws as f64;
        divergence += pe * (pe / p).log2();
    }
    Ok(divergence)
}

fn merge_tail_counts(row: &[u64], tail_start: usize) -> Vec<u64> {
    if row.len() <= tail_start + 1 {
        return row.to_vec();
    }
    let mut out = row[..tail_start].to_vec();
    out.push(row[tail_start..].iter().sum());
    out
}

fn merge_tail_probs(row: &[f64], tail_start: usize) -> Vec<f64> {
    if row.len() <= tail_start + 1 {
        return row.to_vec();
    }
    let mut out = row[..tail_start].to_vec();
    out.push(row[tail_start..].iter().sum());
    out
}

/// Observed and reference hit histograms over the full support.
#[derive(Debug, Clone, Serialize)]
pub struct HitHistogram {
    pub draws: usize,
    pub bytes_per_digest: usize,
    /// `W_e(omega)` for `omega = 0..=g`.
    pub observed: Vec<u64>,
    /// `W_t(omega)`, nearest-integer scaled reference.
    pub theoretical: Vec<u64>,
}

impl HitHistogram {
    /// Observed row with the `4+` tail merged, for table display.
    pub fn display_observed(&self) -> Vec<u64> {
        merge_tail_counts(&self.observed, DISPLAY_TAIL_START)
    }

    /// Reference row with the `4+` tail merged.
    pub fn display_theoretical(&self) -> Vec<u64> {
        merge_tail_counts(&self.theoretical, DISPLAY_TAIL_START)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CollisionReport {
    pub histogram: HitHistogram,
    /// Full-support KL divergence, in bits.
    pub kl_divergence_bits: f64,
    /// KL divergence with the `4+` tail merged on both sides, matching the
    /// display bucketing.
    pub kl_divergence_display_bits: f64,
    /// Mean `|x - y|` over all byte positions and draws.
    pub mean_byte_distance: f64,
    /// The comparison constant [`THEORETICAL_BYTE_DISTANCE`].
    pub theoretical_byte_distance: f64,
    /// `|mean_byte_distance - theoretical_byte_distance|`.
    pub byte_distance_delta: f64,
}

pub fn collision_test(corpus: &[DrawPair], params: &WalkParams) -> Result<CollisionReport> {
    collision_from_pairs(&digest_pairs(corpus, params), params.digest_bits())
}

pub fn collision_from_pairs(
    pairs: &[(Digest, Digest)],
    digest_bits: usize,
) -> Result<CollisionReport> {
    let draws = pairs.len();
    if draws == 0 {
        return Err(Error::TooFewDraws { min: 1, got: 0 });
    }
    let g = digest_bits.div_ceil(8);
    let mut observed = vec![0u64; g + 1];
    let mut distance_total: u64 = 0;
    for (original, modified) in pairs {
        if original.bit_len() != digest_bits {
            return Err(Error::Core(qhfm_core::Error::DigestLengthMismatch {
                left: original.bit_len(),
                right: digest_bits,
            }));
        }
        let a = original.collision_bytes();
        let b = modified.collision_bytes();
        let mut matching = 0usize;
        for (&x, &y) in a.iter().zip(&b) {
            if x == y {
                matching += 1;
            }
            distance_total += u64::from(x.abs_diff(y));
        }
        observed[matching] += 1;
    }
    let reference = theoretical_hit_probabilities(g);
    let kl_divergence_bits = kl_divergence(&observed, &reference, draws)?;
    let kl_divergence_display_bits = kl_divergence(
        &merge_tail_counts(&observed, DISPLAY_TAIL_START),
        &merge_tail_probs(&reference, DISPLAY_TAIL_START),
        draws,
    )?;
    let mean_byte_distance = distance_total as f64 / (draws as f64 * g as f64);
    let byte_distance_delta = (mean_byte_distance - THEORETICAL_BYTE_DISTANCE).abs();
    Ok(CollisionReport {
        histogram: HitHistogram {
            draws,
            bytes_per_digest: g,
            observed,
            theoretical: theoretical_hit_distribution(g, draws),
        },
        kl_divergence_bits,
        kl_divergence_display_bits,
        mean_byte_distance,
        theoretical_byte_distance: THEORETICAL_BYTE_DISTANCE,
        byte_distance_delta,
    })
}
