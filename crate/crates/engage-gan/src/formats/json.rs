use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use engage_core::data::{ClipManifest, ClipRecord};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{CoreContext, Error, Result};

/// Pretty-printed JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::write(path, std::io::Error::other(e)))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::write(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::read(path, e))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::parse(path, Some(e.line() as u64), e.to_string()))
}

/// One clip record per line; blank lines are skipped.
pub fn read_manifest(path: &Path) -> Result<ClipManifest> {
    let file = fs::File::open(path).map_err(|e| Error::read(path, e))?;
    let mut records = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::read(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: ClipRecord = serde_json::from_str(&line)
            .map_err(|e| Error::parse(path, Some(i as u64 + 1), e.to_string()))?;
        records.push(rec);
    }
    ClipManifest::new(records).data(|| path.display().to_string())
}

pub fn write_manifest(path: &Path, manifest: &ClipManifest) -> Result<()> {
    let mut out = Vec::new();
    for rec in manifest.records() {
        serde_json::to_writer(&mut out, rec)
            .map_err(|e| Error::write(path, std::io::Error::other(e)))?;
        out.write_all(b"\n").map_err(|e| Error::write(path, e))?;
    }
    fs::write(path, out).map_err(|e| Error::write(path, e))
}
