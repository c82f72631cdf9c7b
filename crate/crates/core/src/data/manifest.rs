use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::annotation::{likert_to_unit, rescale_unit};
use crate::error::{Error, Result};

/// Scale of a raw clip label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum LabelScale {
    /// Likert score in `[-3, 3]`.
    #[cfg_attr(feature = "serde", serde(rename = "likert_m3_3"))]
    LikertM3To3,
    /// Already in `[0, 1]`.
    #[cfg_attr(feature = "serde", serde(rename = "unit"))]
    Unit,
    /// Continuous rating in `[-1, 1]`.
    #[cfg_attr(feature = "serde", serde(rename = "recola_raw"))]
    RecolaRaw,
}

impl LabelScale {
    pub fn to_unit(self, v: f64) -> Result<f64> {
        match self {
            LabelScale::LikertM3To3 => likert_to_unit(v),
            LabelScale::RecolaRaw => rescale_unit(v),
            LabelScale::Unit => {
                if (0.0..=1.0).contains(&v) {
                    Ok(v)
                } else {
                    Err(Error::OutOfRange {
                        value: v,
                        lo: 0.0,
                        hi: 1.0,
                    })
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClipRecord {
    pub clip_id: String,
    pub session_id: String,
    pub speaker_id: String,
    pub wav_path: String,
    #[cfg_attr(feature = "serde", serde(default))]
    pub transcript: Vec<String>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub video_affect_id: Option<String>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub raw_label: Option<Vec<f64>>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub scale: Option<LabelScale>,
}

impl ClipRecord {
    /// Targets mapped to `[0, 1]`, or None for unlabeled clips.
    pub fn unit_targets(&self) -> Result<Option<Vec<f64>>> {
        let Some(raw) = &self.raw_label else {
            return Ok(None);
        };
        let scale = self
            .scale
            .ok_or_else(|| Error::MissingScaleTag(self.clip_id.clone()))?;
        raw.iter()
            .map(|&v| scale.to_unit(v))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    /// Key used to look up precomputed video affect vectors.
    pub fn video_key(&self) -> &str {
        self.video_affect_id.as_deref().unwrap_or(&self.clip_id)
    }
}

/// Validated clip records: unique ids, scale tags on every labeled clip.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClipManifest {
    records: Vec<ClipRecord>,
}

impl ClipManifest {
    pub fn new(records: Vec<ClipRecord>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for r in &records {
            if !seen.insert(r.clip_id.as_str()) {
                return Err(Error::DuplicateClipId(r.clip_id.clone()));
            }
            if r.raw_label.is_some() && r.scale.is_none() {
                return Err(Error::MissingScaleTag(r.clip_id.clone()));
            }
        }
        Ok(Self { records })
    }

    pub fn records(&self) -> &[ClipRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, clip_id: &str) -> Option<&ClipRecord> {
        self.records.iter().find(|r| r.clip_id == clip_id)
    }
}
