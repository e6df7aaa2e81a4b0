//! Shared plumbing: hashing a corpus into digest pairs (in parallel, with
//! a deterministic result) and running the whole indicator battery off one
//! set of pairs.

use qhfm_core::{qhfm_hash_bits, Digest, WalkParams};
use rayon::prelude::*;

use crate::avalanche::{avalanche_from_pairs, AvalancheReport};
use crate::collision::{collision_from_pairs, CollisionReport};
use crate::corpus::DrawPair;
use crate::error::{Error, Result};
use crate::uniformity::{uniformity_from_pairs, UniformityReport};

/// Hash every draw pair. Work is distributed across the rayon pool but
/// collected back in draw order, so the output (and everything computed
/// from it) is independent of scheduling and worker count.
pub fn digest_pairs(corpus: &[DrawPair], params: &WalkParams) -> Vec<(Digest, Digest)> {
    corpus
        .par_iter()
        .map(|pair| {
            (
                qhfm_hash_bits(&pair.original, params),
                qhfm_hash_bits(&pair.modified, params),
            )
        })
        .collect()
}

/// Run `f` on a dedicated pool with `workers` threads, or on the global
/// pool when `workers` is `None`. Results are identical either way; the
/// knob only controls parallelism.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(count) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(count)
                .build()
                .map_err(|e| Error::WorkerPool(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// All three indicator reports computed from one shared set of pairs.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BatterySummary {
    pub avalanche: AvalancheReport,
    pub uniformity: UniformityReport,
    pub collision: CollisionReport,
}

/// Hash the corpus once and evaluate every indicator on the same digests.
/// Because the avalanche and uniformity means divide the same flip total
/// by the same denominator, their percentages agree exactly, not just
/// statistically.
pub fn run_battery(corpus: &[DrawPair], params: &WalkParams) -> Result<BatterySummary> {
    let pairs = digest_pairs(corpus, params);
    let bits = params.digest_bits();
    Ok(BatterySummary {
        avalanche: avalanche_from_pairs(&pairs, bits)?,
        uniformity: uniformity_from_pairs(&pairs, bits)?,
        collision: collision_from_pairs(&pairs, bits)?,
    })
}
