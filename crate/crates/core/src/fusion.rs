//! The fused feature h_T = (h_C, h_A) and labelled/unlabelled samples built from it.

use alloc::string::String;
use alloc::vec::Vec;

use crate::affect::AffectiveVector;
use crate::cognitive::{CognitiveVector, COGNITIVE_DIM};
use crate::error::{Error, Result};
use crate::segments::SegmentMap;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FusedFeature {
    pub values: Vec<f64>,
    pub segments: SegmentMap,
}

/// Segment layout of h_T for a given text-affect width.
pub fn fused_segment_map(text_dim: usize) -> SegmentMap {
    CognitiveVector::segment_map().concat(
        &crate::affect::affective_segment_map(text_dim),
        "h_C.",
        "h_A.",
    )
}

pub fn fuse(cognitive: &CognitiveVector, affective: &AffectiveVector) -> Result<FusedFeature> {
    if cognitive.values.len() != COGNITIVE_DIM {
        return Err(Error::DimensionMismatch {
            expected: COGNITIVE_DIM,
            found: cognitive.values.len(),
        });
    }
    let mut values = cognitive.values.clone();
    values.extend_from_slice(&affective.values);
    let segments = CognitiveVector::segment_map().concat(&affective.segment_map, "h_C.", "h_A.");
    Ok(FusedFeature { values, segments })
}

/// Regression target family; fixes the discriminator head width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Task {
    #[default]
    Engagement,
    ValenceArousal,
}

impl Task {
    pub fn output_dim(self) -> usize {
        match self {
            Task::Engagement => 1,
            Task::ValenceArousal => 2,
        }
    }

    pub fn target_names(self) -> &'static [&'static str] {
        match self {
            Task::Engagement => &["engagement"],
            Task::ValenceArousal => &["valence", "arousal"],
        }
    }
}

/// One clip's fused features with optional targets in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Sample {
    pub features: Vec<f64>,
    pub targets: Option<Vec<f64>>,
    pub clip_id: String,
    pub session_id: String,
    pub speaker_id: String,
}

impl Sample {
    pub fn is_labeled(&self) -> bool {
        self.targets.is_some()
    }

    pub fn unlabeled(mut self) -> Self {
        self.targets = None;
        self
    }
}
