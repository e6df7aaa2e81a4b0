//! Property tests for the divergence scoring.

use proptest::prelude::*;
use qhfm_statlab::{kl_divergence, theoretical_hit_probabilities};

proptest! {
    /// Gibbs' inequality: the divergence from any observed histogram to
    /// the binomial reference is non-negative (zero only when they match).
    #[test]
    fn kl_is_non_negative(
        g in 1usize..30,
        raw in proptest::collection::vec(0u64..200, 1..31),
    ) {
        let mut observed = raw;
        observed.resize(g + 1, 0);
        observed.truncate(g + 1);
        let draws: u64 = observed.iter().sum();
        prop_assume!(draws > 0);
        let reference = theoretical_hit_probabilities(g);
        let kl = kl_divergence(&observed, &reference, draws as usize).unwrap();
        prop_assert!(kl > -1e-12, "kl = {kl}");
    }

    /// Scaling the observed histogram by a constant leaves the divergence
    /// unchanged: it only sees relative frequencies.
    #[test]
    fn kl_ignores_histogram_scale(
        g in 1usize..20,
        raw in proptest::collection::vec(1u64..50, 1..21),
        factor in 2u64..5,
    ) {
        let mut observed = raw;
        observed.resize(g + 1, 1);
        observed.truncate(g + 1);
        let draws: u64 = observed.iter().sum();
        let scaled: Vec<u64> = observed.iter().map(|&c| c * factor).collect();
        let reference = theoretical_hit_probabilities(g);
        let a = kl_divergence(&observed, &reference, draws as usize).unwrap();
        let b = kl_divergence(&scaled, &reference, (draws * factor) as usize).unwrap();
        prop_assert!((a - b).abs() < 1e-9, "a = {a}, b = {b}");
    }
}
