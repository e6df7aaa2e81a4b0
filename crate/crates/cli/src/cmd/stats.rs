use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};

use qhfm_core::{BitString, InstanceId, WalkParams};
use qhfm_statlab::{
    generate_corpus, run_battery, sensitivity_demo, to_canonical_json, with_workers,
    write_avalanche_csv, write_collision_csv, write_flip_count_csv, write_hit_histogram_csv,
    write_sensitivity_csv, write_uniformity_csv, AvalancheReport, BatterySummary, CollisionReport,
    CorpusSource, InstanceRecord, SensitivityReport, TestReport, UniformityReport, SCHEMA_VERSION,
};

use crate::args::{resolve_seed, validate_workers, OutputFormat, StatArgs};
use crate::error::{CliError, Result};

/// Directory the battery writes into when `--out` is omitted.
pub const DEFAULT_BATTERY_DIR: &str = "qhfm-out";

/// The slice of the battery a single-indicator subcommand reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Indicator {
    Avalanche,
    Uniformity,
    Collision,
}

impl Indicator {
    fn key(self) -> &'static str {
        match self {
            Indicator::Avalanche => "avalanche",
            Indicator::Uniformity => "uniformity",
            Indicator::Collision => "collision",
        }
    }
}

/// Everything the corpus run produced, kept together so each renderer can
/// pick what it needs.
struct Prepared {
    params: WalkParams,
    instance: Option<InstanceId>,
    seed: u64,
    draws: usize,
    source: CorpusSource,
    summary: BatterySummary,
    first_message: BitString,
}

/// Resolves flags, draws the corpus and hashes it once. All indicators are
/// evaluated on the same digest pairs, so the avalanche and uniformity
/// percentages agree exactly no matter which subcommand asked.
fn prepare(args: &StatArgs) -> Result<Prepared> {
    let (params, instance) = args.params.resolve()?;
    let seed = resolve_seed(args.seed)?;
    let workers = validate_workers(args.workers)?;
    let source = match &args.corpus {
        Some(path) => CorpusSource::FileLines(path.clone()),
        None => CorpusSource::Seeded,
    };
    let corpus = generate_corpus(&source, args.draws, seed)?;
    let first_message = corpus[0].original.clone();
    let summary = with_workers(workers, || run_battery(&corpus, &params))??;
    Ok(Prepared {
        params,
        instance,
        seed,
        draws: args.draws,
        source,
        summary,
        first_message,
    })
}

pub fn run_indicator(indicator: Indicator, args: &StatArgs) -> Result<()> {
    let prep = prepare(args)?;
    match (args.format, &args.out) {
        (OutputFormat::Json, None) => {
            let json = indicator_json(indicator, &prep);
            io::stdout()
                .write_all(json.as_bytes())
                .map_err(CliError::io("<stdout>"))?;
        }
        (OutputFormat::Json, Some(path)) => {
            write_text(path, &indicator_json(indicator, &prep))?;
            print_summary(Some(indicator), &prep);
            println!("wrote {}", path.display());
        }
        (OutputFormat::Csv, None) => {
            let mut stdout = io::stdout().lock();
            write_indicator_csv(&mut stdout, indicator, &prep.summary)
                .map_err(CliError::io("<stdout>"))?;
        }
        (OutputFormat::Csv, Some(dir)) => {
            fs::create_dir_all(dir).map_err(CliError::io(dir))?;
            let written = write_indicator_csv_files(dir, indicator, &prep.summary)?;
            print_summary(Some(indicator), &prep);
            for path in written {
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

pub fn run_full_battery(args: &StatArgs) -> Result<()> {
    let prep = prepare(args)?;
    let sensitivity = sensitivity_demo(&prep.first_message, &prep.params, prep.seed)?;
    let report = TestReport::new(
        instance_record(&prep),
        prep.seed,
        prep.draws,
        prep.source.label(),
        prep.summary.clone(),
        Some(sensitivity.clone()),
    );

    let dir = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_BATTERY_DIR));
    fs::create_dir_all(&dir).map_err(CliError::io(&dir))?;

    let mut written = vec![dir.join("report.json")];
    write_text(&written[0], &report.to_canonical_json())?;
    written.extend(write_indicator_csv_files(
        &dir,
        Indicator::Avalanche,
        &prep.summary,
    )?);
    written.extend(write_indicator_csv_files(
        &dir,
        Indicator::Uniformity,
        &prep.summary,
    )?);
    written.extend(write_indicator_csv_files(
        &dir,
        Indicator::Collision,
        &prep.summary,
    )?);
    written.push(write_csv(&dir.join("sensitivity.csv"), |w| {
        write_sensitivity_csv(w, &sensitivity)
    })?);

    print_summary(None, &prep);
    print_sensitivity(&sensitivity);
    println!("wrote {} files to {}", written.len(), dir.display());
    Ok(())
}

fn instance_record(prep: &Prepared) -> InstanceRecord {
    InstanceRecord::new(&prep.params, prep.instance.map(|i| i.name()))
}

/// A single-indicator report shares the battery's envelope (schema version,
/// instance block, seed, draw count, source) but carries only one section.
fn indicator_json(indicator: Indicator, prep: &Prepared) -> String {
    let section = match indicator {
        Indicator::Avalanche => serde_json::to_value(&prep.summary.avalanche),
        Indicator::Uniformity => serde_json::to_value(&prep.summary.uniformity),
        Indicator::Collision => serde_json::to_value(&prep.summary.collision),
    }
    .expect("indicator reports hold only finite numbers");

    let mut root = serde_json::Map::new();
    root.insert("schema_version".into(), SCHEMA_VERSION.into());
    root.insert(
        "instance".into(),
        serde_json::to_value(instance_record(prep)).expect("instance record is plain data"),
    );
    root.insert("seed".into(), prep.seed.into());
    root.insert("draws".into(), (prep.draws as u64).into());
    root.insert("source".into(), prep.source.label().into());
    root.insert(indicator.key().into(), section);
    to_canonical_json(&serde_json::Value::Object(root))
}

fn write_indicator_csv<W: io::Write>(
    w: &mut W,
    indicator: Indicator,
    summary: &BatterySummary,
) -> io::Result<()> {
    match indicator {
        Indicator::Avalanche => write_avalanche_csv(w, &summary.avalanche),
        Indicator::Uniformity => write_uniformity_csv(w, &summary.uniformity),
        Indicator::Collision => write_collision_csv(w, &summary.collision),
    }
}

/// Writes the summary CSV for one indicator, plus its per-bit or per-bucket
/// companion file where one exists. Returns the paths written.
fn write_indicator_csv_files(
    dir: &Path,
    indicator: Indicator,
    summary: &BatterySummary,
) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    written.push(write_csv(
        &dir.join(format!("{}.csv", indicator.key())),
        |w| write_indicator_csv(w, indicator, summary),
    )?);
    match indicator {
        Indicator::Avalanche => {}
        Indicator::Uniformity => {
            written.push(write_csv(&dir.join("uniformity_flip_counts.csv"), |w| {
                write_flip_count_csv(w, &summary.uniformity)
            })?);
        }
        Indicator::Collision => {
            written.push(write_csv(&dir.join("collision_hit_histogram.csv"), |w| {
                write_hit_histogram_csv(w, &summary.collision)
            })?);
        }
    }
    Ok(written)
}

fn write_text(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(CliError::io(path))
}

fn write_csv<F>(path: &Path, fill: F) -> Result<PathBuf>
where
    F: FnOnce(&mut Vec<u8>) -> io::Result<()>,
{
    let mut buffer = Vec::new();
    fill(&mut buffer).map_err(CliError::io(path))?;
    fs::write(path, &buffer).map_err(CliError::io(path))?;
    Ok(path.to_path_buf())
}

/// Human-readable recap on stdout; `only` narrows it to one indicator.
fn print_summary(only: Option<Indicator>, prep: &Prepared) {
    let p = &prep.params;
    let label = prep
        .instance
        .map(|i| i.name())
        .unwrap_or_else(|| "custom".to_string());
    println!(
        "{label}  n={} m={} l={}  seed={}  N={}  source={}",
        p.n(),
        p.m(),
        p.l(),
        prep.seed,
        prep.draws,
        prep.source.label()
    );
    if only.is_none() || only == Some(Indicator::Avalanche) {
        print_avalanche(&prep.summary.avalanche);
    }
    if only.is_none() || only == Some(Indicator::Uniformity) {
        print_uniformity(&prep.summary.uniformity);
    }
    if only.is_none() || only == Some(Indicator::Collision) {
        print_collision(&prep.summary.collision);
    }
}

fn print_avalanche(r: &AvalancheReport) {
    println!(
        "avalanche    P = {:.4}%   dP = {:.4}%   I_DC = {:.4}",
        r.mean_changed_percent, r.changed_percent_stddev, r.diffusion_confusion_index
    );
    println!(
        "             mean changed bits = {:.3} of {}",
        r.mean_changed_bits, r.digest_bits
    );
}

fn print_uniformity(r: &UniformityReport) {
    println!(
        "uniformity   Q = {:.4}%   dQ = {:.4}%",
        r.mean_flip_percent, r.flip_percent_stddev
    );
}

fn print_collision(r: &CollisionReport) {
    println!(
        "collision    hits(0,1,2,3,4+) observed = {:?}",
        r.histogram.display_observed()
    );
    println!(
        "             hits(0,1,2,3,4+) uniform  = {:?}",
        r.histogram.display_theoretical()
    );
    println!(
        "             D_KL = {:.9} bits   mean byte distance = {:.2} (uniform {:.2})",
        r.kl_divergence_bits, r.mean_byte_distance, r.theoretical_byte_distance
    );
}

fn print_sensitivity(r: &SensitivityReport) {
    println!(
        "sensitivity  base message: {} bits, digest {}",
        r.message_bits,
        shorten(&r.digest_hex)
    );
    for variant in &r.variants {
        println!(
            "             {:>6} @ {:<5} changed {} digest bits, digest {}",
            variant.mutation,
            variant.position,
            variant.changed_bit_positions.len(),
            shorten(&variant.digest_hex)
        );
    }
}

/// Digests run to 74 hex characters; keep the recap lines readable.
fn shorten(hex: &str) -> String {
    if hex.len() <= 20 {
        hex.to_string()
    } else {
        format!("{}..{}", &hex[..10], &hex[hex.len() - 10..])
    }
}
