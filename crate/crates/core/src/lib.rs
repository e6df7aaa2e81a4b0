//! QHFM: a hash function driven by a controlled alternate quantum walk
//! with memory on a cycle.
//!
//! Message bits steer the walk - each 0-bit applies a step keyed on the
//! walker's last direction, each 1-bit a step keyed on the direction
//! before that - and the digest is carved out of the decimal expansion of
//! the final node probabilities. The crate provides:
//!
//! * [`walk`] - the O(n)-per-step amplitude stepper with a pinned-down
//!   floating-point evaluation order, so digests are reproducible bit for
//!   bit across platforms;
//! * [`oracle`] - independently built dense step operators and an
//!   equivalence checker that certifies the stepper against them;
//! * [`hash`] - the message-to-digest pipeline and digest encodings;
//! * [`instance`] - the registry of published digest lengths;
//! * [`bits`] / [`params`] - bit-string plumbing and validated parameters.

pub mod bits;
pub mod error;
pub mod hash;
pub mod instance;
pub mod oracle;
pub mod params;
pub mod walk;

pub use bits::BitString;
pub use error::{Error, Result};
pub use hash::{digest_from_distribution, message_bits, qhfm_hash, qhfm_hash_bits, Digest};
pub use instance::InstanceId;
pub use params::{CoinCoefficients, WalkParams};
pub use walk::{evolve, evolve_with_stats, AmplitudeState, EvolveStats};
