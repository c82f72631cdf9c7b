//! Run directories.
//!
//! Every command writes into the directory given by `--out`:
//!
//! ```text
//! run.json                 command, seed, inputs and produced files
//! config.toml              resolved configuration (train, ablate)
//! history.csv              per-epoch losses and validation RMSE (train)
//! metrics.csv              metric,target,value (train, evaluate)
//! checkpoints/final.json   last-epoch model (train)
//! checkpoints/best.json    lowest validation RMSE model (train)
//! features.csv             cognitive feature cache (extract)
//! samples.csv              fused samples (extract)
//! frames/<clip>.csv        per-frame dumps (extract --dump-frames)
//! split.json               partition ids and seed (split)
//! {labeled,unlabeled,val,test}.csv   partitioned samples (split, synth)
//! predictions.csv          per-clip outputs (predict, evaluate)
//! sessions.csv             session aggregates (evaluate)
//! correlation.{csv,svg}    predicted vs external (evaluate --external)
//! ablation.csv             mode,seed,val_rmse (ablate)
//! histories/<mode>-<seed>.csv  (ablate)
//! aligned.csv              filled word bins (align-text)
//! consensus.csv, clip_labels.csv  (labels)
//! ```
//!
//! The layout is versioned through `run.json`'s `layout` field.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::write_json;

pub const LAYOUT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub layout: u32,
    pub command: String,
    pub seed: Option<u64>,
    pub inputs: BTreeMap<String, String>,
    pub outputs: Vec<String>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
}

#[derive(Debug)]
pub struct RunDir {
    root: PathBuf,
    manifest: RunManifest,
}

impl RunDir {
    /// Creates `root`, refusing any directory that holds one of `inputs`.
    pub fn create(
        root: &Path,
        command: &str,
        seed: Option<u64>,
        inputs: &[(&str, &Path)],
    ) -> Result<Self> {
        fs::create_dir_all(root).map_err(|e| Error::write(root, e))?;
        let canonical = root.canonicalize().map_err(|e| Error::write(root, e))?;
        for (name, p) in inputs {
            let input = p.canonicalize().map_err(|e| Error::read(p, e))?;
            if input.parent() == Some(canonical.as_path()) || input == canonical {
                return Err(Error::Usage(format!(
                    "--out {} would write next to the {name} input; choose a separate run directory",
                    root.display()
                )));
            }
        }
        Ok(Self {
            root: root.to_path_buf(),
            manifest: RunManifest {
                layout: LAYOUT_VERSION,
                command: command.to_string(),
                seed,
                inputs: inputs
                    .iter()
                    .map(|(k, p)| (k.to_string(), p.display().to_string()))
                    .collect(),
                outputs: Vec::new(),
                details: serde_json::Value::Null,
            },
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Path for an artifact, registering it and creating parent directories.
    pub fn file(&mut self, relative: &str) -> Result<PathBuf> {
        let path = self.root.join(relative);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| Error::write(parent, e))?;
        }
        self.manifest.outputs.push(relative.to_string());
        Ok(path)
    }

    pub fn set_details(&mut self, details: serde_json::Value) {
        self.manifest.details = details;
    }

    pub fn finish(mut self) -> Result<RunManifest> {
        self.manifest.outputs.push("run.json".into());
        write_json(&self.root.join("run.json"), &self.manifest)?;
        Ok(self.manifest)
    }
}
