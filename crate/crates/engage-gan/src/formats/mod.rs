//! On-disk formats: CSV tables, JSON-lines manifests and JSON documents.
//!
//! Floats are written in Rust's shortest round-trip form, so every value
//! read back from a file written here is bit-identical to the original.

mod json;
mod labels;
mod reports;
mod tables;

use std::fs::File;
use std::path::Path;

pub use json::{read_json, read_manifest, write_json, write_manifest};
pub use labels::{
    read_annotation, read_external_scores, read_words, write_annotation, write_clip_labels,
    write_words,
};
pub use reports::{
    write_ablation, write_correlation, write_history, write_metrics, write_predictions,
    write_sessions, MetricRow, SessionRow,
};
pub use tables::{
    read_feature_cache, read_lexicon, read_samples, read_vector_table, read_video_store,
    write_feature_cache, write_frame_dump, write_samples, write_vector_table, SampleTable,
    VectorTable,
};

use crate::error::{Error, Result};

pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

fn parse_f64(path: &Path, line: Option<u64>, field: &str) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::parse(path, line, format!("not a number: {field:?}")))
}

fn csv_reader(path: &Path) -> Result<csv::Reader<File>> {
    let file = File::open(path).map_err(|e| Error::read(path, e))?;
    Ok(csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(file))
}

fn csv_writer(path: &Path) -> Result<csv::Writer<File>> {
    let file = File::create(path).map_err(|e| Error::write(path, e))?;
    Ok(csv::WriterBuilder::new().from_writer(file))
}

fn read_error(path: &Path, e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::read(path, io),
        other => Error::parse(path, line, format!("{other:?}")),
    }
}

fn write_error(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::write(path, io),
        other => Error::write(path, std::io::Error::other(format!("{other:?}"))),
    }
}

type Records = (Vec<String>, Vec<(u64, csv::StringRecord)>);

/// Header row plus records, each tagged with its 1-based line number.
fn read_records(path: &Path) -> Result<Records> {
    let mut reader = csv_reader(path)?;
    let header = reader
        .headers()
        .map_err(|e| read_error(path, e))?
        .iter()
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| read_error(path, e))?;
        let line = rec.position().map_or(0, |p| p.line());
        rows.push((line, rec));
    }
    Ok((header, rows))
}

fn write_rows<I, R>(path: &Path, header: &[String], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv_writer(path)?;
    w.write_record(header).map_err(|e| write_error(path, e))?;
    for row in rows {
        w.write_record(row.into_iter().collect::<Vec<_>>())
            .map_err(|e| write_error(path, e))?;
    }
    w.flush().map_err(|e| Error::write(path, e))
}

fn expect_header(path: &Path, header: &[String], expected: &[&str]) -> Result<()> {
    if header
        .iter()
        .map(String::as_str)
        .ne(expected.iter().copied())
    {
        return Err(Error::parse(
            path,
            Some(1),
            format!(
                "expected header {:?}, found {:?}",
                expected.join(","),
                header.join(",")
            ),
        ));
    }
    Ok(())
}
