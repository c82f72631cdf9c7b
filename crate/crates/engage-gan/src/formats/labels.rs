use std::collections::BTreeMap;
use std::path::Path;

use engage_core::data::{
    AffectDimension, AnnotationScale, AnnotationStream, WordTimestamp, ANNOTATION_RATE_HZ,
};

use super::{expect_header, fmt_f64, parse_f64, read_records, write_rows};
use crate::error::{CoreContext, Error, Result};

const TIME_TOLERANCE_S: f64 = 1e-6;

/// One annotator's `t_s,value` trace. Rows must sit on the 25 Hz grid from 0.
pub fn read_annotation(
    path: &Path,
    annotator_id: &str,
    dimension: AffectDimension,
    scale: AnnotationScale,
) -> Result<AnnotationStream> {
    let (header, records) = read_records(path)?;
    expect_header(path, &header, &["t_s", "value"])?;
    let step = 1.0 / ANNOTATION_RATE_HZ;
    let mut values = Vec::with_capacity(records.len());
    for (k, (line, rec)) in records.iter().enumerate() {
        let t = parse_f64(path, Some(*line), &rec[0])?;
        if (t - k as f64 * step).abs() > TIME_TOLERANCE_S {
            return Err(Error::parse(
                path,
                Some(*line),
                format!(
                    "t_s {t} is off the {step} s grid (expected {})",
                    k as f64 * step
                ),
            ));
        }
        values.push(parse_f64(path, Some(*line), &rec[1])?);
    }
    AnnotationStream::new(annotator_id, values, dimension, scale)
        .data(|| path.display().to_string())
}

pub fn write_annotation(path: &Path, stream: &AnnotationStream) -> Result<()> {
    let step = 1.0 / ANNOTATION_RATE_HZ;
    write_rows(
        path,
        &["t_s".into(), "value".into()],
        stream
            .values()
            .iter()
            .enumerate()
            .map(|(k, v)| [fmt_f64(k as f64 * step), fmt_f64(*v)]),
    )
}

/// `word,bin_s`; an empty `bin_s` marks a word without a timestamp.
pub fn read_words(path: &Path) -> Result<Vec<WordTimestamp>> {
    let (header, records) = read_records(path)?;
    expect_header(path, &header, &["word", "bin_s"])?;
    records
        .iter()
        .map(|(line, rec)| {
            let bin = match rec[1].trim() {
                "" => None,
                s => Some(s.parse::<u32>().map_err(|_| {
                    Error::parse(
                        path,
                        Some(*line),
                        format!("bin_s must be a whole second, got {s:?}"),
                    )
                })?),
            };
            Ok(WordTimestamp::new(&rec[0], bin))
        })
        .collect()
}

pub fn write_words(path: &Path, words: &[WordTimestamp]) -> Result<()> {
    write_rows(
        path,
        &["word".into(), "bin_s".into()],
        words.iter().map(|w| {
            [
                w.word.clone(),
                w.bin_s.map(|b| b.to_string()).unwrap_or_default(),
            ]
        }),
    )
}

/// `session_id,score` external ratings.
pub fn read_external_scores(path: &Path) -> Result<BTreeMap<String, f64>> {
    let (header, records) = read_records(path)?;
    expect_header(path, &header, &["session_id", "score"])?;
    let mut out = BTreeMap::new();
    for (line, rec) in records {
        let v = parse_f64(path, Some(line), &rec[1])?;
        if out.insert(rec[0].to_string(), v).is_some() {
            return Err(Error::parse(
                path,
                Some(line),
                format!("duplicate session `{}`", &rec[0]),
            ));
        }
    }
    Ok(out)
}

/// `clip_index,start_s,label` on the unit scale.
pub fn write_clip_labels(path: &Path, rows: &[(usize, f64, f64)]) -> Result<()> {
    write_rows(
        path,
        &["clip_index".into(), "start_s".into(), "label".into()],
        rows.iter()
            .map(|(k, t, v)| [k.to_string(), fmt_f64(*t), fmt_f64(*v)]),
    )
}
