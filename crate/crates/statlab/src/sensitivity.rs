//! Qualitative single-edit demonstration.
//!
//! One message, three minimal edits - a bit flip, a bit insertion, and a
//! bit deletion - and the digest each produces, together with the exact
//! digest bit positions that changed. This is the showpiece counterpart of
//! the aggregate indicators: it makes the scrambling visible on a single
//! concrete input rather than asserting a statistic.

use serde::Serialize;

use qhfm_core::{qhfm_hash_bits, BitString, WalkParams};

use crate::corpus::{perturb, Mutation};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Serialize)]
pub struct SensitivityVariant {
    /// "flip", "insert", or "delete".
    pub mutation: String,
    /// Message bit position the edit was applied at.
    pub position: usize,
    pub digest_hex: String,
    /// Digest bit positions that differ from the original digest.
    pub changed_bit_positions: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SensitivityReport {
    pub message_bits: usize,
    pub digest_hex: String,
    pub variants: Vec<SensitivityVariant>,
}

/// Hash `message` and its three one-bit edits. Edit positions come from a
/// dedicated `SplitMix64(seed)` stream, drawn in this order: flip position
/// (below the length), insert position (below length + 1), inserted bit,
/// delete position (below the length).
pub fn sensitivity_demo(
    message: &BitString,
    params: &WalkParams,
    seed: u64,
) -> Result<SensitivityReport> {
    if message.is_empty() {
        return Err(Error::EmptySource(
            "sensitivity demo needs a non-empty message".to_string(),
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let len = message.len() as u64;
    let edits = [
        (Mutation::Flip, rng.next_below(len) as usize),
        {
            let position = rng.next_below(len + 1) as usize;
            (Mutation::Insert(rng.next_bit()), position)
        },
        (Mutation::Delete, rng.next_below(len) as usize),
    ];
    let baseline = qhfm_hash_bits(message, params);
    let variants = edits
        .into_iter()
        .map(|(mutation, position)| {
            let digest = qhfm_hash_bits(&perturb(message, mutation, position)?, params);
            let changed_bit_positions = baseline
                .bits()
                .zip(digest.bits())
                .enumerate()
                .filter_map(|(j, (a, b))| (a != b).then_some(j))
                .collect();
            Ok(SensitivityVariant {
                mutation: mutation.label().to_string(),
                position,
                digest_hex: digest.to_hex(),
                changed_bit_positions,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SensitivityReport {
        message_bits: message.len(),
        digest_hex: baseline.to_hex(),
        variants,
    })
}

#[cfg(test)]
mod tests {
    use qhfm_core::message_bits;

    use super::*;

    #[test]
    fn demo_produces_three_scrambled_variants() {
        let params = qhfm_core::InstanceId::Bits136.params();
        let message = message_bits(b"the quick brown fox jumps over the lazy dog");
        let report = sensitivity_demo(&message, &params, 12345).unwrap();
        assert_eq!(report.message_bits, message.len());
        assert_eq!(report.variants.len(), 3);
        let labels: Vec<&str> = report
            .variants
            .iter()
            .map(|v| v.mutation.as_str())
            .collect();
        assert_eq!(labels, ["flip", "insert", "delete"]);
        for variant in &report.variants {
            assert_ne!(variant.digest_hex, report.digest_hex);
            assert!(!variant.changed_bit_positions.is_empty());
            // Roughly half of 136 bits should move; demand at least a
            // quarter to catch wiring mistakes without statistical flake.
            assert!(variant.changed_bit_positions.len() >= 34);
            assert!(variant.changed_bit_positions.iter().all(|&j| j < 136));
        }
    }

    #[test]
    fn demo_is_deterministic() {
        let params = qhfm_core::InstanceId::Bits120.params();
        let message = message_bits(b"determinism");
        let a = sensitivity_demo(&message, &params, 7).unwrap();
        let b = sensitivity_demo(&message, &params, 7).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn empty_message_is_rejected() {
        let params = qhfm_core::InstanceId::Bits120.params();
        assert!(matches!(
            sensitivity_demo(&BitString::new(), &params, 1).unwrap_err(),
            Error::EmptySource(_)
        ));
    }
}
