use std::fs;
use std::io::{self, Read as _, Write as _};
use std::path::Path;

use qhfm_core::qhfm_hash;
use qhfm_statlab::{to_canonical_json, InstanceRecord, SCHEMA_VERSION};
use serde::Serialize;

use crate::args::{HashArgs, HashFormat};
use crate::error::{CliError, Result};

#[derive(Serialize)]
struct HashRecord {
    schema_version: u32,
    instance: InstanceRecord,
    message_bytes: usize,
    digest_bits: usize,
    digest_hex: String,
}

pub fn run(args: &HashArgs) -> Result<()> {
    let (params, id) = args.params.resolve()?;
    let message = match &args.input {
        Some(path) => fs::read(path).map_err(CliError::io(path))?,
        None => {
            let mut buffer = Vec::new();
            io::stdin()
                .lock()
                .read_to_end(&mut buffer)
                .map_err(CliError::io("<stdin>"))?;
            buffer
        }
    };
    let digest = qhfm_hash(&message, &params);
    let rendered = match args.format {
        HashFormat::Hex => format!("{}\n", digest.to_hex()),
        HashFormat::Json => to_canonical_json(&HashRecord {
            schema_version: SCHEMA_VERSION,
            instance: InstanceRecord::new(&params, id.map(|i| i.name())),
            message_bytes: message.len(),
            digest_bits: digest.bit_len(),
            digest_hex: digest.to_hex(),
        }),
    };
    emit(&rendered, args.out.as_deref())
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(CliError::io(path)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(CliError::io("<stdout>")),
    }
}
