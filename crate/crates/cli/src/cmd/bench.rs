use std::fs;
use std::hint::black_box;
use std::time::{Duration, Instant};

use qhfm_core::{evolve_with_stats, qhfm_hash_bits, BitString, WalkParams};
use qhfm_statlab::{to_canonical_json, InstanceRecord, SplitMix64, SCHEMA_VERSION};
use serde::Serialize;

use crate::args::{resolve_seed, BenchArgs};
use crate::error::{CliError, Result};

/// Message lengths (in bits) timed at a fixed cycle size: 4096 to 131072,
/// doubling each point.
pub const MESSAGE_SIZES: [usize; 6] = [1 << 12, 1 << 13, 1 << 14, 1 << 15, 1 << 16, 1 << 17];

/// Cycle sizes timed at a fixed message length (the registered shapes with
/// 8-bit blocks, plus the 13-bit-block node counts, in increasing order).
pub const NODE_COUNTS: [usize; 5] = [15, 17, 25, 33, 37];

/// Message length used while sweeping the cycle size.
pub const NODE_SWEEP_MESSAGE_BITS: usize = 1 << 14;

/// One timed hash at a given message length.
#[derive(Debug, Clone, Serialize)]
pub struct MessagePoint {
    pub message_bits: usize,
    pub best_nanos: u64,
    pub nanos_per_step: f64,
    /// Live complex slots in the stepper (two `8n` buffers), recorded to
    /// show the footprint does not grow with the message.
    pub amplitude_slots: usize,
    /// Time divided by the previous (half-length) point's time.
    pub ratio_to_previous: Option<f64>,
}

/// One timed hash at a given cycle size.
#[derive(Debug, Clone, Serialize)]
pub struct NodePoint {
    pub node_count: usize,
    pub digest_bits: usize,
    pub best_nanos: u64,
    pub nanos_per_step: f64,
    pub amplitude_slots: usize,
    pub ratio_to_previous: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub schema_version: u32,
    pub instance: InstanceRecord,
    pub seed: u64,
    pub reps: usize,
    pub message_scaling: Vec<MessagePoint>,
    /// Least-squares slope of log(time) against log(message bits);
    /// linear cost shows up as a value near 1.
    pub message_fit_exponent: f64,
    pub node_sweep_message_bits: usize,
    pub node_scaling: Vec<NodePoint>,
    /// Least-squares slope of log(time) against log(node count).
    pub node_fit_exponent: f64,
}

pub fn run(args: &BenchArgs) -> Result<()> {
    if args.reps == 0 {
        return Err(CliError::Usage("--reps must be at least 1".to_string()));
    }
    let (params, id) = args.params.resolve()?;
    let seed = resolve_seed(args.seed)?;

    println!(
        "timing full hashes, best of {} runs per point (seed {seed})",
        args.reps
    );
    println!();
    println!("message scaling at n = {}:", params.n());
    println!(
        "{:>12} {:>12} {:>10} {:>7} {:>6}",
        "bits", "time", "ns/step", "ratio", "slots"
    );
    let message_scaling = measure_message_scaling(&params, seed, args.reps, &MESSAGE_SIZES);
    for point in &message_scaling {
        println!(
            "{:>12} {:>12} {:>10.1} {:>7} {:>6}",
            point.message_bits,
            format_nanos(point.best_nanos),
            point.nanos_per_step,
            point
                .ratio_to_previous
                .map(|r| format!("{r:.2}x"))
                .unwrap_or_else(|| "-".to_string()),
            point.amplitude_slots
        );
    }
    let message_fit_exponent = fit_exponent(
        message_scaling
            .iter()
            .map(|p| (p.message_bits as f64, p.best_nanos as f64)),
    );
    println!("log-log fit: time ~ bits^{message_fit_exponent:.3}");
    println!();

    println!("cycle-size scaling at M = {NODE_SWEEP_MESSAGE_BITS} bits:");
    println!(
        "{:>12} {:>12} {:>10} {:>7} {:>6}",
        "n", "time", "ns/step", "ratio", "slots"
    );
    let node_scaling = measure_node_scaling(seed, args.reps, &NODE_COUNTS)?;
    for point in &node_scaling {
        println!(
            "{:>12} {:>12} {:>10.1} {:>7} {:>6}",
            point.node_count,
            format_nanos(point.best_nanos),
            point.nanos_per_step,
            point
                .ratio_to_previous
                .map(|r| format!("{r:.2}x"))
                .unwrap_or_else(|| "-".to_string()),
            point.amplitude_slots
        );
    }
    let node_fit_exponent = fit_exponent(
        node_scaling
            .iter()
            .map(|p| (p.node_count as f64, p.best_nanos as f64)),
    );
    println!("log-log fit: time ~ n^{node_fit_exponent:.3}");

    if let Some(path) = &args.out {
        let report = BenchReport {
            schema_version: SCHEMA_VERSION,
            instance: InstanceRecord::new(&params, id.map(|i| i.name())),
            seed,
            reps: args.reps,
            message_scaling,
            message_fit_exponent,
            node_sweep_message_bits: NODE_SWEEP_MESSAGE_BITS,
            node_scaling,
            node_fit_exponent,
        };
        fs::write(path, to_canonical_json(&report)).map_err(CliError::io(path))?;
        println!();
        println!("wrote {}", path.display());
    }
    Ok(())
}

/// Times full hashes of random messages of each length, at fixed parameters.
pub fn measure_message_scaling(
    params: &WalkParams,
    seed: u64,
    reps: usize,
    sizes: &[usize],
) -> Vec<MessagePoint> {
    let mut rng = SplitMix64::new(seed);
    let mut previous: Option<u64> = None;
    sizes
        .iter()
        .map(|&bits| {
            let message = random_message(&mut rng, bits);
            let best = best_nanos(reps, || qhfm_hash_bits(&message, params));
            let (_, stats) = evolve_with_stats(params, &message);
            let point = MessagePoint {
                message_bits: bits,
                best_nanos: best,
                nanos_per_step: best as f64 / bits as f64,
                amplitude_slots: stats.amplitude_slots,
                ratio_to_previous: previous.map(|prev| best as f64 / prev as f64),
            };
            previous = Some(best);
            point
        })
        .collect()
}

/// Times full hashes of one fixed-length message across cycle sizes, using
/// 8-bit blocks and the standard angles throughout.
pub fn measure_node_scaling(
    seed: u64,
    reps: usize,
    node_counts: &[usize],
) -> Result<Vec<NodePoint>> {
    let mut rng = SplitMix64::new(seed);
    let message = random_message(&mut rng, NODE_SWEEP_MESSAGE_BITS);
    let mut previous: Option<u64> = None;
    let mut points = Vec::with_capacity(node_counts.len());
    for &n in node_counts {
        let params = WalkParams::new(
            n,
            8,
            8,
            std::f64::consts::FRAC_PI_4,
            std::f64::consts::FRAC_PI_3,
            std::f64::consts::FRAC_PI_4,
        )?;
        let best = best_nanos(reps, || qhfm_hash_bits(&message, &params));
        let (_, stats) = evolve_with_stats(&params, &message);
        points.push(NodePoint {
            node_count: n,
            digest_bits: params.digest_bits(),
            best_nanos: best,
            nanos_per_step: best as f64 / NODE_SWEEP_MESSAGE_BITS as f64,
            amplitude_slots: stats.amplitude_slots,
            ratio_to_previous: previous.map(|prev| best as f64 / prev as f64),
        });
        previous = Some(best);
    }
    Ok(points)
}

fn random_message(rng: &mut SplitMix64, bits: usize) -> BitString {
    (0..bits).map(|_| rng.next_bit()).collect()
}

/// Minimum wall time over `reps` runs, in nanoseconds. The minimum is the
/// stablest summary on a shared machine: noise only ever adds time.
fn best_nanos<T>(reps: usize, mut work: impl FnMut() -> T) -> u64 {
    let mut best = Duration::MAX;
    for _ in 0..reps {
        let start = Instant::now();
        black_box(work());
        best = best.min(start.elapsed());
    }
    u64::try_from(best.as_nanos()).unwrap_or(u64::MAX)
}

/// Least-squares slope of `ln(y)` against `ln(x)`.
pub fn fit_exponent(points: impl Iterator<Item = (f64, f64)>) -> f64 {
    let mut count = 0.0f64;
    let (mut sum_x, mut sum_y, mut sum_xx, mut sum_xy) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (x, y) in points {
        let lx = x.ln();
        let ly = y.ln();
        count += 1.0;
        sum_x += lx;
        sum_y += ly;
        sum_xx += lx * lx;
        sum_xy += lx * ly;
    }
    (count * sum_xy - sum_x * sum_y) / (count * sum_xx - sum_x * sum_x)
}

fn format_nanos(nanos: u64) -> String {
    if nanos >= 1_000_000_000 {
        format!("{:.2}s", nanos as f64 / 1e9)
    } else if nanos >= 1_000_000 {
        format!("{:.2}ms", nanos as f64 / 1e6)
    } else if nanos >= 1_000 {
        format!("{:.2}us", nanos as f64 / 1e3)
    } else {
        format!("{nanos}ns")
    }
}
