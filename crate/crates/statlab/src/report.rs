//! Serializable report bundle and the JSON/CSV writers.
//!
//! JSON output is canonical: object keys are sorted (the serializer's map
//! type is ordered) and floats print in shortest round-trip form, so equal
//! reports serialize to equal bytes. The CSV writers print floats the same
//! way. Byte-identical outputs across runs and worker counts are part of
//! the battery's contract.

use std::io;

use serde::Serialize;

use qhfm_core::WalkParams;

use crate::avalanche::AvalancheReport;
use crate::battery::BatterySummary;
use crate::collision::CollisionReport;
use crate::sensitivity::SensitivityReport;
use crate::uniformity::UniformityReport;

/// Version stamp carried by every serialized report.
pub const SCHEMA_VERSION: u32 = 1;

/// The parameter set a report was produced under.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceRecord {
    /// Registry name like "QHFM-296", or null for custom parameters.
    pub name: Option<String>,
    pub node_count: usize,
    pub block_bits: u32,
    pub scale_exponent: u32,
    pub theta0: f64,
    pub theta1: f64,
    pub alpha: f64,
    pub digest_bits: usize,
}

impl InstanceRecord {
    pub fn new(params: &WalkParams, name: Option<String>) -> Self {
        Self {
            name,
            node_count: params.n(),
            block_bits: params.m(),
            scale_exponent: params.l(),
            theta0: params.theta0(),
            theta1: params.theta1(),
            alpha: params.alpha(),
            digest_bits: params.digest_bits(),
        }
    }
}

/// Everything one battery run produces.
#[derive(Debug, Clone, Serialize)]
pub struct TestReport {
    pub schema_version: u32,
    pub instance: InstanceRecord,
    pub seed: u64,
    pub draws: usize,
    /// Corpus origin: "seeded" or "file:<path>".
    pub source: String,
    pub avalanche: AvalancheReport,
    pub uniformity: UniformityReport,
    pub collision: CollisionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sensitivity: Option<SensitivityReport>,
}

impl TestReport {
    pub fn new(
        instance: InstanceRecord,
        seed: u64,
        draws: usize,
        source: String,
        summary: BatterySummary,
        sensitivity: Option<SensitivityReport>,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            instance,
            seed,
            draws,
            source,
            avalanche: summary.avalanche,
            uniformity: summary.uniformity,
            collision: summary.collision,
            sensitivity,
        }
    }

    /// Canonical pretty JSON with a trailing newline.
    pub fn to_canonical_json(&self) -> String {
        to_canonical_json(self)
    }
}

/// Canonical pretty JSON for any serializable report piece.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let tree = serde_json::to_value(value).expect("reports hold only finite numbers");
    let mut out = serde_json::to_string_pretty(&tree).expect("serializing a Value cannot fail");
    out.push('\n');
    out
}

pub fn write_avalanche_csv<W: io::Write>(w: &mut W, r: &AvalancheReport) -> io::Result<()> {
    writeln!(w, "indicator,value")?;
    writeln!(w, "draws,{}", r.draws)?;
    writeln!(w, "digest_bits,{}", r.digest_bits)?;
    writeln!(w, "mean_changed_bits,{}", r.mean_changed_bits)?;
    writeln!(w, "mean_changed_percent,{}", r.mean_changed_percent)?;
    writeln!(w, "changed_bits_stddev,{}", r.changed_bits_stddev)?;
    writeln!(w, "changed_percent_stddev,{}", r.changed_percent_stddev)?;
    writeln!(
        w,
        "diffusion_confusion_index,{}",
        r.diffusion_confusion_index
    )
}

pub fn write_uniformity_csv<W: io::Write>(w: &mut W, r: &UniformityReport) -> io::Result<()> {
    writeln!(w, "indicator,value")?;
    writeln!(w, "draws,{}", r.draws)?;
    writeln!(w, "digest_bits,{}", r.digest_bits)?;
    writeln!(w, "mean_flip_count,{}", r.mean_flip_count)?;
    writeln!(w, "mean_flip_percent,{}", r.mean_flip_percent)?;
    writeln!(w, "flip_count_stddev,{}", r.flip_count_stddev)?;
    writeln!(w, "flip_percent_stddev,{}", r.flip_percent_stddev)
}

/// Per-position flip counts, one row per digest bit: plot-ready data for
/// the uniformity histogram.
pub fn write_flip_count_csv<W: io::Write>(w: &mut W, r: &UniformityReport) -> io::Result<()> {
    writeln!(w, "bit_position,flip_count")?;
    for (j, count) in r.flip_counts.iter().enumerate() {
        writeln!(w, "{j},{count}")?;
    }
    Ok(())
}

pub fn write_collision_csv<W: io::Write>(w: &mut W, r: &CollisionReport) -> io::Result<()> {
    writeln!(w, "indicator,value")?;
    writeln!(w, "draws,{}", r.histogram.draws)?;
    writeln!(w, "bytes_per_digest,{}", r.histogram.bytes_per_digest)?;
    writeln!(w, "kl_divergence_bits,{}", r.kl_divergence_bits)?;
    writeln!(
        w,
        "kl_divergence_display_bits,{}",
        r.kl_divergence_display_bits
    )?;
    writeln!(w, "mean_byte_distance,{}", r.mean_byte_distance)?;
    writeln!(
        w,
        "theoretical_byte_distance,{}",
        r.theoretical_byte_distance
    )?;
    writeln!(w, "byte_distance_delta,{}", r.byte_distance_delta)
}

/// Full-support hit histogram, one row per hit count.
pub fn write_hit_histogram_csv<W: io::Write>(w: &mut W, r: &CollisionReport) -> io::Result<()> {
    writeln!(w, "hits,observed,theoretical")?;
    for (hits, (obs, theo)) in r
        .histogram
        .observed
        .iter()
        .zip(&r.histogram.theoretical)
        .enumerate()
    {
        writeln!(w, "{hits},{obs},{theo}")?;
    }
    Ok(())
}

/// Changed digest bit positions per variant: plot-ready data for the
/// single-edit demonstration.
pub fn write_sensitivity_csv<W: io::Write>(w: &mut W, r: &SensitivityReport) -> io::Result<()> {
    writeln!(w, "mutation,message_position,changed_digest_bit")?;
    for variant in &r.variants {
        for &bit in &variant.changed_bit_positions {
            writeln!(w, "{},{},{}", variant.mutation, variant.position, bit)?;
        }
    }
    Ok(())
}
