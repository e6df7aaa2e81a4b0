//! Statistical test battery for the QHFM hash.
//!
//! The battery mirrors the standard evaluation of chaos-based hashes:
//!
//! * [`avalanche`] - per-draw changed-bit statistics from single-bit-flip
//!   message pairs (diffusion and confusion);
//! * [`uniformity`] - per-digest-position flip counts over the same pairs;
//! * [`collision`] - whole-byte hit counts scored against the binomial
//!   reference with a KL divergence, plus per-byte distance;
//! * [`sensitivity`] - a qualitative one-message, three-edits demo;
//! * [`corpus`] / [`rng`] - reproducible draw-pair corpora from a seeded
//!   SplitMix64 stream or from file lines;
//! * [`battery`] / [`report`] - one-pass evaluation of all indicators and
//!   canonical JSON/CSV serialization.
//!
//! Determinism is load-bearing throughout: a corpus is a pure function of
//! its seed, hashing is distributed over a thread pool but collected in
//! draw order, and reports serialize to identical bytes across runs and
//! worker counts.

pub mod avalanche;
pub mod battery;
pub mod collision;
pub mod corpus;
pub mod error;
pub mod report;
pub mod rng;
pub mod sensitivity;
pub mod uniformity;

pub use avalanche::{avalanche_from_pairs, avalanche_test, AvalancheReport};
pub use battery::{digest_pairs, run_battery, with_workers, BatterySummary};
pub use collision::{
    byte_distance, collision_from_pairs, collision_test, hits, kl_divergence,
    theoretical_hit_distribution, theoretical_hit_probabilities, CollisionReport, HitHistogram,
    THEORETICAL_BYTE_DISTANCE,
};
pub use corpus::{
    file_corpus, generate_corpus, perturb, seeded_corpus, CorpusSource, DrawPair, Mutation,
    MAX_RANDOM_MESSAGE_BITS, MIN_RANDOM_MESSAGE_BITS,
};
pub use error::{Error, Result};
pub use report::{
    to_canonical_json, write_avalanche_csv, write_collision_csv, write_flip_count_csv,
    write_hit_histogram_csv, write_sensitivity_csv, write_uniformity_csv, InstanceRecord,
    TestReport, SCHEMA_VERSION,
};
pub use rng::SplitMix64;
pub use sensitivity::{sensitivity_demo, SensitivityReport, SensitivityVariant};
pub use uniformity::{uniformity_from_pairs, uniformity_test, UniformityReport};
