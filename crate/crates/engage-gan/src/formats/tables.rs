use std::collections::BTreeSet;
use std::path::Path;

use engage_core::affect::{Lexicon, VectorStore};
use engage_core::cognitive::CognitiveVector;
use engage_core::fusion::{Sample, Task};

use super::{expect_header, fmt_f64, parse_f64, read_records, write_rows};
use crate::error::{CoreContext, Error, Result};

/// Rows keyed by a string column followed by numeric columns.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorTable {
    pub key: String,
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<f64>)>,
}

pub fn read_vector_table(path: &Path, key: &str) -> Result<VectorTable> {
    let (header, records) = read_records(path)?;
    if header.first().map(String::as_str) != Some(key) {
        return Err(Error::parse(
            path,
            Some(1),
            format!("first column must be `{key}`"),
        ));
    }
    let mut seen = BTreeSet::new();
    let mut rows = Vec::with_capacity(records.len());
    for (line, rec) in records {
        let id = rec[0].to_string();
        if !seen.insert(id.clone()) {
            return Err(Error::parse(
                path,
                Some(line),
                format!("duplicate key `{id}`"),
            ));
        }
        let values = rec
            .iter()
            .skip(1)
            .map(|f| parse_f64(path, Some(line), f))
            .collect::<Result<Vec<_>>>()?;
        rows.push((id, values));
    }
    Ok(VectorTable {
        key: key.to_string(),
        columns: header[1..].to_vec(),
        rows,
    })
}

pub fn write_vector_table(path: &Path, table: &VectorTable) -> Result<()> {
    let mut header = vec![table.key.clone()];
    header.extend(table.columns.iter().cloned());
    for (id, v) in &table.rows {
        if v.len() != table.columns.len() {
            return Err(Error::parse(
                path,
                None,
                format!(
                    "row `{id}` has {} values for {} columns",
                    v.len(),
                    table.columns.len()
                ),
            ));
        }
    }
    write_rows(
        path,
        &header,
        table
            .rows
            .iter()
            .map(|(id, v)| std::iter::once(id.clone()).chain(v.iter().map(|x| fmt_f64(*x)))),
    )
}

/// `word,v1..v_d`.
pub fn read_lexicon(path: &Path) -> Result<Lexicon> {
    let table = read_vector_table(path, "word")?;
    Lexicon::new(table.rows).data(|| path.display().to_string())
}

/// `clip_id,v1..v100`; widths are checked when a vector is looked up.
pub fn read_video_store(path: &Path) -> Result<VectorStore> {
    Ok(VectorStore::new(read_vector_table(path, "clip_id")?.rows))
}

/// `clip_id` followed by the named cognitive feature columns.
pub fn write_feature_cache(path: &Path, rows: &[(String, Vec<f64>)]) -> Result<()> {
    write_vector_table(
        path,
        &VectorTable {
            key: "clip_id".into(),
            columns: CognitiveVector::feature_names()
                .iter()
                .map(|s| s.to_string())
                .collect(),
            rows: rows.to_vec(),
        },
    )
}

pub fn read_feature_cache(path: &Path) -> Result<Vec<(String, Vec<f64>)>> {
    let table = read_vector_table(path, "clip_id")?;
    let names = CognitiveVector::feature_names();
    if table
        .columns
        .iter()
        .map(String::as_str)
        .ne(names.iter().copied())
    {
        return Err(Error::parse(
            path,
            Some(1),
            "feature columns do not match the cognitive layout",
        ));
    }
    Ok(table.rows)
}

/// Per-frame values: `frame_index,start_s,<columns>`.
pub fn write_frame_dump(
    path: &Path,
    start_times_s: &[f64],
    columns: &[&str],
    rows: &[Vec<f64>],
) -> Result<()> {
    let mut header = vec!["frame_index".to_string(), "start_s".to_string()];
    header.extend(columns.iter().map(|c| c.to_string()));
    write_rows(
        path,
        &header,
        start_times_s
            .iter()
            .zip(rows)
            .enumerate()
            .map(|(i, (t, r))| {
                [i.to_string(), fmt_f64(*t)]
                    .into_iter()
                    .chain(r.iter().map(|v| fmt_f64(*v)))
            }),
    )
}

/// Fused-feature samples with their task.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleTable {
    pub task: Task,
    pub samples: Vec<Sample>,
}

const ID_COLUMNS: [&str; 3] = ["clip_id", "session_id", "speaker_id"];

fn target_columns(task: Task) -> Vec<String> {
    task.target_names()
        .iter()
        .map(|n| format!("target_{n}"))
        .collect()
}

/// `clip_id,session_id,speaker_id,target_<name>..,h0..h<d-1>`; unlabeled
/// rows leave the target cells empty.
pub fn write_samples(path: &Path, table: &SampleTable) -> Result<()> {
    let k = table.task.output_dim();
    let dim = table.samples.first().map_or(0, |s| s.features.len());
    for s in &table.samples {
        if s.features.len() != dim {
            return Err(Error::Data {
                context: format!("sample `{}`", s.clip_id),
                source: engage_core::Error::InconsistentFeatureDim {
                    expected: dim,
                    found: s.features.len(),
                },
            });
        }
        if let Some(t) = &s.targets {
            if t.len() != k {
                return Err(Error::Data {
                    context: format!("sample `{}`", s.clip_id),
                    source: engage_core::Error::DimensionMismatch {
                        expected: k,
                        found: t.len(),
                    },
                });
            }
        }
    }
    let mut header: Vec<String> = ID_COLUMNS.iter().map(|s| s.to_string()).collect();
    header.extend(target_columns(table.task));
    header.extend((0..dim).map(|i| format!("h{i}")));
    write_rows(
        path,
        &header,
        table.samples.iter().map(|s| {
            let targets: Vec<String> = match &s.targets {
                Some(t) => t.iter().map(|v| fmt_f64(*v)).collect(),
                None => vec![String::new(); k],
            };
            [
                s.clip_id.clone(),
                s.session_id.clone(),
                s.speaker_id.clone(),
            ]
            .into_iter()
            .chain(targets)
            .chain(s.features.iter().map(|v| fmt_f64(*v)))
        }),
    )
}

pub fn read_samples(path: &Path) -> Result<SampleTable> {
    let (header, records) = read_records(path)?;
    if header.len() < 3 {
        return Err(Error::parse(path, Some(1), "missing id columns"));
    }
    expect_header(path, &header[..3], &ID_COLUMNS)?;
    let task = [Task::Engagement, Task::ValenceArousal]
        .into_iter()
        .find(|t| {
            let cols = target_columns(*t);
            header.len() >= 3 + cols.len()
                && header[3..3 + cols.len()] == cols[..]
                && !header
                    .get(3 + cols.len())
                    .is_some_and(|h| h.starts_with("target_"))
        })
        .ok_or_else(|| Error::parse(path, Some(1), "unrecognised target columns"))?;
    let first = 3 + task.output_dim();
    for (i, h) in header[first..].iter().enumerate() {
        if *h != format!("h{i}") {
            return Err(Error::parse(
                path,
                Some(1),
                format!("expected column h{i}, found `{h}`"),
            ));
        }
    }
    let mut ids = BTreeSet::new();
    let mut samples = Vec::with_capacity(records.len());
    for (line, rec) in records {
        let line = Some(line);
        if !ids.insert(rec[0].to_string()) {
            return Err(Error::parse(
                path,
                line,
                format!("duplicate clip_id `{}`", &rec[0]),
            ));
        }
        let cells: Vec<&str> = rec.iter().skip(3).take(task.output_dim()).collect();
        let targets = if cells.iter().all(|c| c.is_empty()) {
            None
        } else {
            let t = cells
                .iter()
                .map(|c| parse_f64(path, line, c))
                .collect::<Result<Vec<_>>>()?;
            if t.iter().any(|v| !(0.0..=1.0).contains(v)) {
                return Err(Error::parse(path, line, "targets must lie in [0, 1]"));
            }
            Some(t)
        };
        let features = rec
            .iter()
            .skip(first)
            .map(|c| parse_f64(path, line, c))
            .collect::<Result<Vec<_>>>()?;
        samples.push(Sample {
            features,
            targets,
            clip_id: rec[0].to_string(),
            session_id: rec[1].to_string(),
            speaker_id: rec[2].to_string(),
        });
    }
    Ok(SampleTable { task, samples })
}
