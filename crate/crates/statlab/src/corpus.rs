//! Draw-pair corpora: original messages paired with single-bit mutations.

use std::fs;
use std::path::{Path, PathBuf};

use qhfm_core::{message_bits, BitString};

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Shortest message a seeded corpus will draw, in bits.
pub const MIN_RANDOM_MESSAGE_BITS: u64 = 256;
/// Longest message a seeded corpus will draw, in bits.
pub const MAX_RANDOM_MESSAGE_BITS: u64 = 4096;

/// A single-bit edit applied to a message.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Invert the bit at the position.
    Flip,
    /// Insert the carried bit before the position.
    Insert(bool),
    /// Remove the bit at the position.
    Delete,
}

impl Mutation {
    pub fn label(&self) -> &'static str {
        match self {
            Mutation::Flip => "flip",
            Mutation::Insert(_) => "insert",
            Mutation::Delete => "delete",
        }
    }
}

/// Apply `mutation` to `message` at `position`.
pub fn perturb(message: &BitString, mutation: Mutation, position: usize) -> Result<BitString> {
    let out = match mutation {
        Mutation::Flip => message.with_flipped(position),
        Mutation::Insert(bit) => message.with_inserted(position, bit),
        Mutation::Delete => message.with_deleted(position),
    }?;
    Ok(out)
}

/// One corpus entry: a message and its mutated twin.
#[derive(Debug, Clone)]
pub struct DrawPair {
    pub draw_index: usize,
    pub original: BitString,
    pub modified: BitString,
    pub mutation: Mutation,
    pub position: usize,
}

/// Where corpus messages come from.
#[derive(Debug, Clone)]
pub enum CorpusSource {
    /// Messages drawn from the seeded generator.
    Seeded,
    /// Messages sampled from the non-empty lines of a text file.
    FileLines(PathBuf),
}

impl CorpusSource {
    /// A short stable tag for reports ("seeded" or "file:<path>").
    pub fn label(&self) -> String {
        match self {
            CorpusSource::Seeded => "seeded".to_string(),
            CorpusSource::FileLines(path) => format!("file:{}", path.display()),
        }
    }
}

/// Draw `draws` flip pairs from `source` under `seed`.
pub fn generate_corpus(source: &CorpusSource, draws: usize, seed: u64) -> Result<Vec<DrawPair>> {
    match source {
        CorpusSource::Seeded => seeded_corpus(draws, seed),
        CorpusSource::FileLines(path) => file_corpus(path, draws, seed),
    }
}

/// Seeded random corpus. Draw `i` consumes the generator in this exact
/// order, which is part of the reproducibility contract:
///
/// 1. message length in bits: `256 + next_below(3841)`, uniform over
///    `[256, 4096]`;
/// 2. message content: one byte per `next_u64` (its low 8 bits), bytes in
///    stream order, bits within a byte most significant first, truncated
///    to the drawn length;
/// 3. flip position: `next_below(length)`.
pub fn seeded_corpus(draws: usize, seed: u64) -> Result<Vec<DrawPair>> {
    if draws == 0 {
        return Err(Error::TooFewDraws { min: 1, got: 0 });
    }
    let mut rng = SplitMix64::new(seed);
    let span = MAX_RANDOM_MESSAGE_BITS - MIN_RANDOM_MESSAGE_BITS + 1;
    (0..draws)
        .map(|draw_index| {
            let len = (MIN_RANDOM_MESSAGE_BITS + rng.next_below(span)) as usize;
            let bytes: Vec<u8> = (0..len.div_ceil(8)).map(|_| rng.next_byte()).collect();
            let original = BitString::from_bits(message_bits(&bytes).iter().take(len));
            let position = rng.next_below(len as u64) as usize;
            let modified = perturb(&original, Mutation::Flip, position)?;
            Ok(DrawPair {
                draw_index,
                original,
                modified,
                mutation: Mutation::Flip,
                position,
            })
        })
        .collect()
}

/// File-backed corpus: each draw picks a uniformly random non-empty line
/// (by `next_below(line_count)`), reads its UTF-8 bytes as the message,
/// then draws a flip position exactly like the seeded corpus.
pub fn file_corpus(path: &Path, draws: usize, seed: u64) -> Result<Vec<DrawPair>> {
    if draws == 0 {
        return Err(Error::TooFewDraws { min: 1, got: 0 });
    }
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let lines: Vec<&str> = text.lines().filter(|line| !line.is_empty()).collect();
    if lines.is_empty() {
        return Err(Error::EmptySource(format!(
            "{} has no non-empty lines",
            path.display()
        )));
    }
    let mut rng = SplitMix64::new(seed);
    (0..draws)
        .map(|draw_index| {
            let line = lines[rng.next_below(lines.len() as u64) as usize];
            let original = message_bits(line.as_bytes());
            let position = rng.next_below(original.len() as u64) as usize;
            let modified = perturb(&original, Mutation::Flip, position)?;
            Ok(DrawPair {
                draw_index,
                original,
                modified,
                mutation: Mutation::Flip,
                position,
            })
        })
        .collect()
}
