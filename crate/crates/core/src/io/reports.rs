//! Deterministic report writers: identical inputs produce byte-identical
//! files (no timestamps, shortest-roundtrip float formatting, fixed field
//! order).

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::util::fnv1a64_hex;

/// Provenance stamp embedded in every report: tool version plus a hash of
/// the run's inputs and parameters.
#[derive(Clone, Debug, Serialize)]
pub struct RunStamp {
    /// Tool version string.
    pub tool_version: String,
    /// FNV-1a-64 hash (hex) over the input file bytes and the canonical
    /// parameter string.
    pub config_hash: String,
}

/// Build a stamp from the raw input files and a canonical parameter
/// string. Output-location and worker-count options must not be part of
/// `params`: they do not affect results.
pub fn make_stamp(
    tool_version: &str,
    input_files: &[&Path],
    params: &str,
) -> Result<RunStamp> {
    let mut bytes = Vec::new();
    for p in input_files {
        bytes.extend_from_slice(&std::fs::read(p)?);
        bytes.push(0);
    }
    bytes.extend_from_slice(params.as_bytes());
    Ok(RunStamp {
        tool_version: tool_version.to_string(),
        config_hash: fnv1a64_hex(&bytes),
    })
}

/// Write a CSV file: `#`-prefixed stamp and context comments, then the
/// header line, then the rows.
pub fn write_csv(
    path: impl AsRef<Path>,
    stamp: &RunStamp,
    comments: &[String],
    header: &str,
    rows: &[String],
) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(f, "# tool: kleinian {}", stamp.tool_version)?;
    writeln!(f, "# config: {}", stamp.config_hash)?;
    for c in comments {
        writeln!(f, "# {c}")?;
    }
    writeln!(f, "{header}")?;
    for r in rows {
        writeln!(f, "{r}")?;
    }
    f.flush()?;
    Ok(())
}

/// Write a JSON report `{ "tool_version": …, "config_hash": …, "data": … }`.
pub fn write_json<T: Serialize>(
    path: impl AsRef<Path>,
    stamp: &RunStamp,
    payload: &T,
) -> Result<()> {
    #[derive(Serialize)]
    struct Doc<'a, T> {
        tool_version: &'a str,
        config_hash: &'a str,
        data: &'a T,
    }
    let doc = Doc {
        tool_version: &stamp.tool_version,
        config_hash: &stamp.config_hash,
        data: payload,
    };
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    serde_json::to_writer_pretty(&mut f, &doc)
        .map_err(|e| crate::error::Error::Parse(format!("serializing report: {e}")))?;
    writeln!(f)?;
    f.flush()?;
    Ok(())
}
