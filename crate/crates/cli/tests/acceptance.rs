//! Go/no-go gate for the whole workspace: nine numbered checks covering
//! oracle agreement, operator health, reference statistics, desk-scale
//! indicator bands, scaling behavior, determinism and digest encoding.
//! Each check prints one `acceptance <k> (<name>): PASS/FAIL` line (visible
//! with `--nocapture`, or on failure) and asserts the same verdict.

use std::collections::{BTreeSet, HashMap};
use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};
use std::fs;
use std::sync::{Mutex, MutexGuard, OnceLock, PoisonError};

use clap::Parser as _;
use qhfm_cli::cmd::bench::{measure_message_scaling, MessagePoint};
use qhfm_cli::cmd::oracle::random_messages;
use qhfm_cli::Cli;
use qhfm_core::oracle::{build_step_unitary, check_equivalence, direction_matrix};
use qhfm_core::{evolve_with_stats, qhfm_hash, BitString, InstanceId, WalkParams};
use qhfm_statlab::{
    run_battery, seeded_corpus, theoretical_hit_distribution, BatterySummary, SplitMix64,
};

/// Seed every randomized check derives from.
const DESK_SEED: u64 = 7;

/// Draw count for the statistical checks; the bands below are sized for it.
const DESK_DRAWS: usize = 2048;

/// The digest lengths the statistical bands are checked on.
const DESK_INSTANCES: [InstanceId; 3] = [
    InstanceId::Bits296,
    InstanceId::Bits200,
    InstanceId::Bits136,
];

/// The checks share one core and one battery cache; running them one at a
/// time keeps the timing check quiet and the log readable.
fn serial() -> MutexGuard<'static, ()> {
    static GATE: Mutex<()> = Mutex::new(());
    GATE.lock().unwrap_or_else(PoisonError::into_inner)
}

/// One full battery per instance, computed on first use and shared by the
/// avalanche, uniformity and collision checks.
fn desk_battery(id: InstanceId) -> BatterySummary {
    static CACHE: OnceLock<Mutex<HashMap<u32, BatterySummary>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(PoisonError::into_inner);
    guard
        .entry(id.bits())
        .or_insert_with(|| {
            let corpus = seeded_corpus(DESK_DRAWS, DESK_SEED).expect("seeded corpus");
            run_battery(&corpus, &id.params()).expect("battery run")
        })
        .clone()
}

fn standard_params(n: usize) -> WalkParams {
    WalkParams::new(n, 8, 8, FRAC_PI_4, FRAC_PI_3, FRAC_PI_4).expect("valid shape")
}

/// Prints the verdict line and asserts it.
fn report(number: u32, name: &str, failures: &[String], pass_details: &str) {
    if failures.is_empty() {
        println!("acceptance {number} ({name}): PASS ({pass_details})");
    } else {
        let joined = failures.join("; ");
        println!("acceptance {number} ({name}): FAIL ({joined})");
        panic!("acceptance {number} ({name}) failed: {joined}");
    }
}

#[test]
fn criterion_1_stencil_agrees_with_the_dense_oracle() {
    let _guard = serial();
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let mut replays = 0usize;
    for n in [3, 5, 7] {
        let params = standard_params(n);
        let messages = random_messages(DESK_SEED + n as u64, 200, 64);
        let outcome = check_equivalence(&params, &messages);
        replays += outcome.messages;
        worst = worst.max(outcome.max_abs_diff);
        if outcome.max_abs_diff >= 1e-12 {
            failures.push(format!(
                "n={n}: max |stencil - dense| = {:.3e}",
                outcome.max_abs_diff
            ));
        }
    }
    report(
        1,
        "dense-oracle equivalence",
        &failures,
        &format!("max |diff| {worst:.3e} over {replays} replayed messages, bound 1e-12"),
    );
}

#[test]
fn criterion_2_operators_are_orthogonal_and_norms_hold() {
    let _guard = serial();
    let mut failures = Vec::new();
    let mut worst_defect = 0.0f64;
    for n in [3, 5, 7, 9] {
        let params = standard_params(n);
        for (two_step, label) in [(false, "one-step"), (true, "two-step")] {
            let direction = direction_matrix(two_step).orthogonality_defect();
            let step = build_step_unitary(two_step, &params).orthogonality_defect();
            worst_defect = worst_defect.max(direction).max(step);
            if direction >= 1e-12 || step >= 1e-12 {
                failures.push(format!(
                    "n={n} {label}: direction defect {direction:.3e}, step defect {step:.3e}"
                ));
            }
        }
    }

    let mut rng = SplitMix64::new(DESK_SEED);
    let message: BitString = (0..10_000).map(|_| rng.next_bit()).collect();
    let mut worst_drift = 0.0f64;
    for id in InstanceId::ALL {
        let (_, stats) = evolve_with_stats(&id.params(), &message);
        worst_drift = worst_drift.max(stats.norm_error);
        if stats.norm_error >= 1e-10 {
            failures.push(format!("{id}: norm drift {:.3e}", stats.norm_error));
        }
    }
    report(
        2,
        "operator orthogonality and norm conservation",
        &failures,
        &format!(
            "max orthogonality defect {worst_defect:.3e} (bound 1e-12), \
             max norm drift {worst_drift:.3e} after 10000 steps (bound 1e-10)"
        ),
    );
}

#[test]
fn criterion_3_reference_hit_rows_are_exact() {
    let _guard = serial();
    // Expected zero-collision histograms for 10000 draws of independent
    // uniform digest bytes, per digest length: counts of pairs whose
    // byte-aligned forms collide in 0, 1, 2, ... positions.
    let expected: [(InstanceId, [u64; 5]); 7] = [
        (InstanceId::Bits296, [8652, 1255, 89, 4, 0]),
        (InstanceId::Bits264, [8788, 1137, 71, 3, 0]),
        (InstanceId::Bits221, [8962, 984, 52, 2, 0]),
        (InstanceId::Bits200, [9068, 889, 42, 1, 0]),
        (InstanceId::Bits195, [9068, 889, 42, 1, 0]),
        (InstanceId::Bits136, [9356, 624, 20, 0, 0]),
        (InstanceId::Bits120, [9430, 555, 15, 0, 0]),
    ];
    let mut failures = Vec::new();
    for (id, head) in expected {
        let bytes = (id.bits() as usize).div_ceil(8);
        let row = theoretical_hit_distribution(bytes, 10_000);
        let row_head: Vec<u64> = row.iter().copied().take(5).collect();
        if row_head != head {
            failures.push(format!("{id}: head {row_head:?}, expected {head:?}"));
        }
        if row.iter().skip(5).any(|&count| count != 0) {
            failures.push(format!("{id}: nonzero counts beyond 4 hits"));
        }
    }
    report(
        3,
        "reference hit rows",
        &failures,
        "all seven digest lengths reproduce the expected integer rows exactly",
    );
}

#[test]
fn criterion_4_avalanche_bands_at_desk_scale() {
    let _guard = serial();
    let mut failures = Vec::new();
    let mut summaries = Vec::new();
    for id in DESK_INSTANCES {
        let avalanche = desk_battery(id).avalanche;
        let p = avalanche.mean_changed_percent;
        let dp = avalanche.changed_percent_stddev;
        let idc = avalanche.diffusion_confusion_index;
        summaries.push(format!("{id}: P={p:.3}% dP={dp:.3}% I_DC={idc:.3}"));
        if !(48.5..=51.5).contains(&p) {
            failures.push(format!("{id}: P = {p:.4}% outside [48.5, 51.5]"));
        }
        if !(2.0..=5.5).contains(&dp) {
            failures.push(format!("{id}: dP = {dp:.4}% outside [2.0, 5.5]"));
        }
        if idc >= 3.5 {
            failures.push(format!("{id}: I_DC = {idc:.4} not below 3.5"));
        }
    }
    report(
        4,
        "avalanche bands at desk scale",
        &failures,
        &format!("N={DESK_DRAWS}, seed={DESK_SEED}: {}", summaries.join(", ")),
    );
}

#[test]
fn criterion_5_uniformity_ties_avalanche_exactly() {
    let _guard = serial();
    let mut failures = Vec::new();
    let mut summaries = Vec::new();
    for id in DESK_INSTANCES {
        let battery = desk_battery(id);
        let p = battery.avalanche.mean_changed_percent;
        let q = battery.uniformity.mean_flip_percent;
        let dq = battery.uniformity.flip_percent_stddev;
        summaries.push(format!("{id}: Q={q:.3}% dQ={dq:.3}%"));
        if p.to_bits() != q.to_bits() {
            failures.push(format!("{id}: Q = {q:.17} differs from P = {p:.17}"));
        }
        if dq >= 1.5 {
            failures.push(format!("{id}: dQ = {dq:.4}% not below 1.5"));
        }
    }
    report(
        5,
        "uniformity ties avalanche",
        &failures,
        &format!(
            "Q identical to P bit-for-bit on all three instances; {}",
            summaries.join(", ")
        ),
    );
}

#[test]
fn criterion_6_collision_statistics_at_desk_scale() {
    let _guard = serial();
    let mut failures = Vec::new();
    let mut summaries = Vec::new();
    for id in DESK_INSTANCES {
        let collision = desk_battery(id).collision;
        let kl = collision.kl_divergence_bits;
        let delta = collision.byte_distance_delta;
        summaries.push(format!("{id}: D_KL={kl:.5} |d-85.33|={delta:.3}"));
        if kl >= 0.02 {
            failures.push(format!("{id}: D_KL = {kl:.5} bits not below 0.02"));
        }
        if delta >= 3.0 {
            failures.push(format!(
                "{id}: byte distance off ideal by {delta:.3}, bound 3.0"
            ));
        }
    }
    report(
        6,
        "collision statistics at desk scale",
        &failures,
        &format!("N={DESK_DRAWS}, seed={DESK_SEED}: {}", summaries.join(", ")),
    );
}

#[test]
fn criterion_7_time_scales_linearly_and_space_stays_flat() {
    let _guard = serial();
    let params = InstanceId::Bits200.params();
    let sizes = [1 << 13, 1 << 14, 1 << 15, 1 << 16, 1 << 17];

    let evaluate = |points: &[MessagePoint]| {
        let mut failures = Vec::new();
        for pair in points.windows(2) {
            let ratio = pair[1].best_nanos as f64 / pair[0].best_nanos as f64;
            if !(1.6..=2.6).contains(&ratio) {
                failures.push(format!(
                    "doubling {} -> {} bits took {ratio:.2}x, outside [1.6, 2.6]",
                    pair[0].message_bits, pair[1].message_bits
                ));
            }
        }
        let footprints: BTreeSet<usize> = points.iter().map(|p| p.amplitude_slots).collect();
        if footprints != BTreeSet::from([16 * params.n()]) {
            failures.push(format!(
                "amplitude footprint {footprints:?} is not a constant 16n = {}",
                16 * params.n()
            ));
        }
        failures
    };

    let mut points = measure_message_scaling(&params, DESK_SEED, 5, &sizes);
    let mut failures = evaluate(&points);
    if !failures.is_empty() {
        // One remeasure with more repetitions guards the band against a
        // scheduling hiccup; a real nonlinearity fails both rounds.
        points = measure_message_scaling(&params, DESK_SEED, 9, &sizes);
        failures = evaluate(&points);
    }
    let ratios: Vec<String> = points
        .windows(2)
        .map(|pair| {
            format!(
                "{:.2}x",
                pair[1].best_nanos as f64 / pair[0].best_nanos as f64
            )
        })
        .collect();
    report(
        7,
        "linear time, constant space",
        &failures,
        &format!(
            "doubling ratios [{}] within [1.6, 2.6], footprint {} slots at every size",
            ratios.join(", "),
            16 * params.n()
        ),
    );
}

#[test]
fn criterion_8_runs_are_bit_identical() {
    let _guard = serial();
    let mut failures = Vec::new();

    let digest_once = || {
        let params = InstanceId::Bits296.params();
        qhfm_hash(b"determinism probe", &params).to_hex()
    };
    let first = digest_once();
    let second = digest_once();
    if first != second {
        failures.push(format!("digests differ across runs: {first} vs {second}"));
    }

    let battery_files = |dir: &std::path::Path| -> Vec<(String, Vec<u8>)> {
        let cli = Cli::try_parse_from([
            "qhfm",
            "battery",
            "--instance",
            "120",
            "--N",
            "96",
            "--seed",
            "7",
            "--out",
            dir.to_str().expect("utf-8 temp path"),
        ])
        .expect("battery invocation parses");
        qhfm_cli::run(cli).expect("battery run succeeds");
        let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
            .expect("read output dir")
            .map(|entry| {
                let entry = entry.expect("dir entry");
                let name = entry.file_name().to_string_lossy().into_owned();
                let bytes = fs::read(entry.path()).expect("read report file");
                (name, bytes)
            })
            .collect();
        files.sort();
        files
    };
    let dir_a = tempfile::tempdir().expect("tempdir");
    let dir_b = tempfile::tempdir().expect("tempdir");
    let run_a = battery_files(dir_a.path());
    let run_b = battery_files(dir_b.path());
    if run_a.len() != 7 {
        failures.push(format!("expected 7 report files, found {}", run_a.len()));
    }
    for ((name_a, bytes_a), (name_b, bytes_b)) in run_a.iter().zip(run_b.iter()) {
        if name_a != name_b || bytes_a != bytes_b {
            failures.push(format!("report file {name_a} differs between runs"));
        }
    }
    report(
        8,
        "bit-identical reruns",
        &failures,
        &format!(
            "digest stable and all {} report files byte-identical across two runs",
            run_a.len()
        ),
    );
}

#[test]
fn criterion_9_digest_encoding_edge_shapes() {
    let _guard = serial();
    let mut failures = Vec::new();

    let empty = qhfm_hash(b"", &InstanceId::Bits200.params());
    if empty.to_hex() != "0".repeat(50) || empty.blocks().iter().any(|&b| b != 0) {
        failures.push(format!(
            "empty 200-bit digest is {} rather than fifty zeros",
            empty.to_hex()
        ));
    }

    let probes: [&[u8]; 3] = [b"a", b"encoding probe", b"\xff\x00\xff"];
    for message in probes {
        let hex = qhfm_hash(message, &InstanceId::Bits195.params()).to_hex();
        if hex.len() != 49 {
            failures.push(format!(
                "195-bit hex has {} characters, expected 49",
                hex.len()
            ));
        }
        let leading = hex
            .chars()
            .next()
            .and_then(|c| c.to_digit(16))
            .unwrap_or(16);
        if leading > 7 {
            failures.push(format!(
                "195-bit hex leads with {leading:X}, expected a 3-bit digit"
            ));
        }

        let bytes = qhfm_hash(message, &InstanceId::Bits221.params()).collision_bytes();
        if bytes.len() != 28 {
            failures.push(format!(
                "221-bit collision form has {} bytes, expected 28",
                bytes.len()
            ));
        }
        if bytes[0] & 0b1110_0000 != 0 {
            failures.push(format!(
                "221-bit collision form leads with byte {:#010b}; top 3 bits must be padding",
                bytes[0]
            ));
        }
    }
    report(
        9,
        "digest encoding shapes",
        &failures,
        "empty 200-bit digest all zero; 195-bit hex 49 chars with 3-bit lead; \
         221-bit collision form 28 bytes with a 3-bit front pad",
    );
}
