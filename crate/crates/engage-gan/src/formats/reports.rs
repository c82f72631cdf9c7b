use std::path::Path;

use engage_core::eval::AblationResult;
use engage_core::fusion::{Sample, Task};
use engage_core::nn::Matrix;
use engage_core::ssgan::EpochRecord;

use super::{fmt_f64, write_rows};
use crate::error::{Error, Result};

fn opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

/// `epoch,L_lab,L_un,L_fake,L_gen,L_grad,val_rmse`.
pub fn write_history(path: &Path, history: &[EpochRecord]) -> Result<()> {
    let header = [
        "epoch", "L_lab", "L_un", "L_fake", "L_gen", "L_grad", "val_rmse",
    ]
    .map(String::from);
    write_rows(
        path,
        &header,
        history.iter().map(|e| {
            let l = &e.losses;
            [
                e.epoch.to_string(),
                fmt_f64(l.lab),
                fmt_f64(l.un),
                fmt_f64(l.fake),
                fmt_f64(l.gen),
                fmt_f64(l.grad),
                opt(e.val_rmse),
            ]
        }),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricRow {
    pub metric: String,
    pub target: String,
    pub value: f64,
}

impl MetricRow {
    pub fn new(metric: &str, target: &str, value: f64) -> Self {
        Self {
            metric: metric.into(),
            target: target.into(),
            value,
        }
    }
}

/// `metric,target,value`.
pub fn write_metrics(path: &Path, rows: &[MetricRow]) -> Result<()> {
    write_rows(
        path,
        &["metric".into(), "target".into(), "value".into()],
        rows.iter()
            .map(|r| [r.metric.clone(), r.target.clone(), fmt_f64(r.value)]),
    )
}

/// `clip_id,session_id,<target names>`, one row per sample.
pub fn write_predictions(
    path: &Path,
    samples: &[Sample],
    predictions: &Matrix,
    task: Task,
) -> Result<()> {
    if predictions.shape() != (samples.len(), task.output_dim()) {
        return Err(Error::write(
            path,
            std::io::Error::other("prediction matrix does not match the samples"),
        ));
    }
    let mut header = vec!["clip_id".to_string(), "session_id".to_string()];
    header.extend(task.target_names().iter().map(|s| s.to_string()));
    write_rows(
        path,
        &header,
        samples.iter().zip(predictions.iter_rows()).map(|(s, row)| {
            [s.clip_id.clone(), s.session_id.clone()]
                .into_iter()
                .chain(row.iter().map(|v| fmt_f64(*v)))
        }),
    )
}

/// `mode,seed,val_rmse`.
pub fn write_ablation(path: &Path, results: &[AblationResult]) -> Result<()> {
    write_rows(
        path,
        &["mode".into(), "seed".into(), "val_rmse".into()],
        results.iter().map(|r| {
            [
                r.mode.name().to_string(),
                r.seed.to_string(),
                fmt_f64(r.val_rmse),
            ]
        }),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionRow {
    pub session_id: String,
    pub clips: usize,
    pub scores: Vec<f64>,
    pub external: Option<f64>,
}

/// `session_id,clips,<target names>,external`.
pub fn write_sessions(path: &Path, task: Task, rows: &[SessionRow]) -> Result<()> {
    let mut header = vec!["session_id".to_string(), "clips".to_string()];
    header.extend(task.target_names().iter().map(|s| s.to_string()));
    header.push("external".into());
    write_rows(
        path,
        &header,
        rows.iter().map(|r| {
            [r.session_id.clone(), r.clips.to_string()]
                .into_iter()
                .chain(r.scores.iter().map(|v| fmt_f64(*v)))
                .chain(std::iter::once(opt(r.external)))
        }),
    )
}

/// 2x2 matrix with a `series` label column.
pub fn write_correlation(path: &Path, names: [&str; 2], matrix: &[[f64; 2]; 2]) -> Result<()> {
    write_rows(
        path,
        &["series".into(), names[0].into(), names[1].into()],
        names
            .iter()
            .zip(matrix)
            .map(|(n, row)| [n.to_string(), fmt_f64(row[0]), fmt_f64(row[1])]),
    )
}
