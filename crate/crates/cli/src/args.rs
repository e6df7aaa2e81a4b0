use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qhfm_core::{InstanceId, WalkParams};

use crate::error::{CliError, Result};

/// Seed used when neither `--seed` nor the environment override is present.
pub const DEFAULT_SEED: u64 = 1;

/// Environment variable consulted when `--seed` is omitted.
pub const SEED_ENV_VAR: &str = "QHFM_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "qhfm",
    version,
    about = "Hash messages with a controlled quantum walk and inspect its statistics",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hash a file (or standard input) and print the digest
    Hash(HashArgs),
    /// Flip one input bit per draw and report how many digest bits change
    Avalanche(StatArgs),
    /// Track per-digest-bit flip rates over the avalanche corpus
    Uniformity(StatArgs),
    /// Compare digest-byte collisions against the independent-uniform model
    Collision(StatArgs),
    /// Run every indicator over one shared corpus and write a report directory
    Battery(StatArgs),
    /// Replay random messages through the stepping kernel and a dense-matrix
    /// reconstruction of it, and compare the final states
    OracleCheck(OracleCheckArgs),
    /// Measure hashing time against message length and cycle size
    Bench(BenchArgs),
}

/// Walk-parameter flags shared by every subcommand that hashes.
///
/// Either pick a registered digest length with `--instance`, or give a custom
/// shape with `--n`/`--m` (optionally adjusting `--l` and the angles). With no
/// flags at all the 200-bit instance is used.
#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Registered digest length in bits (296, 264, 221, 200, 195, 136 or 120)
    #[arg(
        long,
        value_name = "BITS",
        conflicts_with_all = ["n", "m", "l", "theta0", "theta1", "alpha"]
    )]
    pub instance: Option<u32>,

    /// Number of cycle nodes (odd, at least 3)
    #[arg(long, requires = "m")]
    pub n: Option<usize>,

    /// Digest bits taken from each node (1..=63)
    #[arg(long, requires = "n")]
    pub m: Option<u32>,

    /// Decimal scale exponent used when quantizing probabilities [default: 8]
    #[arg(long, requires = "n")]
    pub l: Option<u32>,

    /// Coin angle for one-step-memory moves, in radians [default: pi/4]
    #[arg(long, requires = "n")]
    pub theta0: Option<f64>,

    /// Coin angle for two-step-memory moves, in radians [default: pi/3]
    #[arg(long, requires = "n")]
    pub theta1: Option<f64>,

    /// Initial amplitude split angle, in radians [default: pi/4]
    #[arg(long, requires = "n")]
    pub alpha: Option<f64>,
}

impl ParamArgs {
    /// Turns the flags into validated walk parameters. The second element
    /// names the registered instance when one was selected (or implied).
    pub fn resolve(&self) -> Result<(WalkParams, Option<InstanceId>)> {
        if let Some(bits) = self.instance {
            let id = InstanceId::from_bits(bits).map_err(|_| {
                CliError::Usage(format!(
                    "unknown instance QHFM-{bits}; registered lengths are \
                     296, 264, 221, 200, 195, 136 and 120"
                ))
            })?;
            return Ok((id.params(), Some(id)));
        }
        match (self.n, self.m) {
            (Some(n), Some(m)) => {
                let params = WalkParams::new(
                    n,
                    m,
                    self.l.unwrap_or(8),
                    self.theta0.unwrap_or(FRAC_PI_4),
                    self.theta1.unwrap_or(FRAC_PI_3),
                    self.alpha.unwrap_or(FRAC_PI_4),
                )?;
                Ok((params, None))
            }
            (None, None) => {
                let id = InstanceId::Bits200;
                Ok((id.params(), Some(id)))
            }
            // clap's `requires` links reject one of --n/--m on its own.
            _ => unreachable!("--n and --m are declared as requiring each other"),
        }
    }
}

#[derive(Debug, Args)]
pub struct HashArgs {
    #[command(flatten)]
    pub params: ParamArgs,

    /// File to hash; standard input is read when omitted
    #[arg(value_name = "FILE")]
    pub input: Option<PathBuf>,

    /// Digest encoding to print
    #[arg(long, value_enum, default_value_t = HashFormat::Hex)]
    pub format: HashFormat,

    /// Write the digest here instead of standard output
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HashFormat {
    /// Uppercase hexadecimal, one line
    Hex,
    /// JSON object with the digest and the parameters that produced it
    Json,
}

#[derive(Debug, Args)]
pub struct StatArgs {
    #[command(flatten)]
    pub params: ParamArgs,

    /// Number of (message, variant) pairs to draw
    #[arg(long = "N", value_name = "COUNT", default_value_t = 10_000)]
    pub draws: usize,

    /// Seed for the corpus generator [default: $QHFM_SEED, then 1]
    #[arg(long)]
    pub seed: Option<u64>,

    /// Draw base messages from the non-empty lines of this file instead of
    /// generating random bit strings
    #[arg(long, value_name = "FILE")]
    pub corpus: Option<PathBuf>,

    /// Output location: a file for json, a directory for csv and for battery
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// How to encode the results
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Hash the corpus on this many threads [default: all cores]
    #[arg(long, value_name = "COUNT")]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OracleCheckArgs {
    /// Cycle size to cross-check (odd, 3..=9; the dense side scales as n^2)
    #[arg(long, default_value_t = 5)]
    pub n: usize,

    /// Seed for the message generator [default: $QHFM_SEED, then 1]
    #[arg(long)]
    pub seed: Option<u64>,

    /// Number of random messages to replay through both implementations
    #[arg(long, default_value_t = 200)]
    pub messages: usize,

    /// Length of each random message in bits
    #[arg(long = "message-bits", default_value_t = 64)]
    pub message_bits: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub params: ParamArgs,

    /// Seed for the benchmark messages [default: $QHFM_SEED, then 1]
    #[arg(long)]
    pub seed: Option<u64>,

    /// Repetitions per measurement point; the fastest is kept
    #[arg(long, default_value_t = 5)]
    pub reps: usize,

    /// Write the measurements as JSON here
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

/// Applies the seed fallback chain: explicit flag, then the environment
/// variable, then [`DEFAULT_SEED`].
pub fn resolve_seed(explicit: Option<u64>) -> Result<u64> {
    if let Some(seed) = explicit {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV_VAR) {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "{SEED_ENV_VAR} must be an unsigned 64-bit integer, got {raw:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_SEED),
        Err(std::env::VarError::NotUnicode(_)) => Err(CliError::Usage(format!(
            "{SEED_ENV_VAR} is not valid unicode"
        ))),
    }
}

/// Rejects a zero-sized worker pool before it reaches the thread-pool builder.
pub fn validate_workers(workers: Option<usize>) -> Result<Option<usize>> {
    match workers {
        Some(0) => Err(CliError::Usage("--workers must be at least 1".to_string())),
        other => Ok(other),
    }
}
