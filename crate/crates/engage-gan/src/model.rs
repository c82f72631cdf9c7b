//! JSON checkpoints.

use std::path::Path;

use engage_core::eval::AblationMode;
use engage_core::nn::Matrix;
use engage_core::ssgan::Regressor;
use serde::{Deserialize, Serialize};

use crate::error::{CoreContext, Error, Result};
use crate::formats::{read_json, write_json};

pub const CHECKPOINT_FORMAT: u32 = 1;

/// A trained regressor together with the feature mask it was trained under.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub format: u32,
    pub mode: AblationMode,
    /// 1-based epoch the weights come from.
    pub epoch: usize,
    pub model: Regressor,
}

impl Checkpoint {
    pub fn new(model: Regressor, mode: AblationMode, epoch: usize) -> Self {
        Self {
            format: CHECKPOINT_FORMAT,
            mode,
            epoch,
            model,
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_json(path, self)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let ck: Checkpoint = read_json(path)?;
        if ck.format != CHECKPOINT_FORMAT {
            return Err(Error::parse(
                path,
                None,
                format!("checkpoint format {} is not {CHECKPOINT_FORMAT}", ck.format),
            ));
        }
        Ok(ck)
    }

    /// Masks raw features with the checkpoint's mode, then predicts.
    pub fn predict(&self, features: &Matrix) -> Result<Matrix> {
        let mut masked = features.clone();
        for r in 0..masked.rows() {
            self.mode.mask(masked.row_mut(r));
        }
        self.model
            .predict(&masked)
            .data(|| "prediction".to_string())
    }
}
