use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

use qhfm_core::oracle::{build_step_unitary, check_equivalence, direction_matrix};
use qhfm_core::{BitString, WalkParams};
use qhfm_statlab::SplitMix64;

use crate::args::{resolve_seed, OracleCheckArgs};
use crate::error::{CliError, Result};

/// Largest cycle the dense cross-check accepts; beyond this the 8n x 8n
/// reference operators make the replay pointlessly slow.
pub const MAX_ORACLE_NODES: usize = 9;

/// Agreement threshold between the stencil stepper and the dense replay,
/// and the orthogonality budget for the reconstructed operators.
pub const ORACLE_TOLERANCE: f64 = 1e-12;

pub fn run(args: &OracleCheckArgs) -> Result<()> {
    if args.n > MAX_ORACLE_NODES {
        return Err(CliError::Usage(format!(
            "--n {} is too large for the dense cross-check: the reference \
             step operators are 8n x 8n matrices, so replay cost grows \
             quadratically with n; pick an odd n between 3 and {MAX_ORACLE_NODES}",
            args.n
        )));
    }
    if args.messages == 0 {
        return Err(CliError::Usage("--messages must be at least 1".to_string()));
    }
    if args.message_bits == 0 {
        return Err(CliError::Usage(
            "--message-bits must be at least 1".to_string(),
        ));
    }
    let params = WalkParams::new(args.n, 8, 8, FRAC_PI_4, FRAC_PI_3, FRAC_PI_4)?;
    let seed = resolve_seed(args.seed)?;

    let mut worst_defect = 0.0f64;
    for (two_step, label) in [(false, "one-step"), (true, "two-step")] {
        let direction = direction_matrix(two_step).orthogonality_defect();
        let step = build_step_unitary(two_step, &params).orthogonality_defect();
        println!("{label} direction operator: orthogonality defect {direction:.3e}");
        println!("{label} full step operator: orthogonality defect {step:.3e}");
        worst_defect = worst_defect.max(direction).max(step);
    }

    let messages = random_messages(seed, args.messages, args.message_bits);
    let report = check_equivalence(&params, &messages);
    println!(
        "replayed {} messages of {} bits on the {}-node cycle (seed {seed})",
        report.messages, args.message_bits, args.n
    );
    println!(
        "max |stencil - dense| amplitude difference: {:.3e}",
        report.max_abs_diff
    );

    let mut failures = Vec::new();
    if worst_defect > ORACLE_TOLERANCE {
        failures.push(format!(
            "operator orthogonality defect {worst_defect:.3e} exceeds {ORACLE_TOLERANCE:.0e}"
        ));
    }
    if report.max_abs_diff > ORACLE_TOLERANCE {
        let location = report
            .worst
            .map(|w| {
                format!(
                    " (worst at message {}, node {}, internal state {})",
                    w.message_index, w.node, w.internal
                )
            })
            .unwrap_or_default();
        failures.push(format!(
            "stencil/dense disagreement {:.3e} exceeds {ORACLE_TOLERANCE:.0e}{location}",
            report.max_abs_diff
        ));
    }
    if failures.is_empty() {
        println!("PASS: stepping kernel matches the dense operators within {ORACLE_TOLERANCE:.0e}");
        Ok(())
    } else {
        Err(CliError::Verification(failures.join("; ")))
    }
}

/// Deterministic message set: each message takes `bits` draws from the
/// generator, one bit per draw, so the set depends only on the seed.
pub fn random_messages(seed: u64, count: usize, bits: usize) -> Vec<BitString> {
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|_| (0..bits).map(|_| rng.next_bit()).collect())
        .collect()
}
