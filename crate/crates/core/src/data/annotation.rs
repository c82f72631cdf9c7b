use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Annotation sampling rate (one value every 0.04 s).
pub const ANNOTATION_RATE_HZ: f64 = 25.0;
/// Annotation samples in one 3 s clip.
pub const CLIP_SAMPLES: usize = 75;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum AffectDimension {
    Valence,
    Arousal,
}

/// Value range of an annotation stream: raw `[-1, 1]` ratings or values
/// already mapped to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum AnnotationScale {
    #[default]
    Raw,
    Unit,
}

impl AnnotationScale {
    fn bounds(self) -> (f64, f64) {
        match self {
            AnnotationScale::Raw => (-1.0, 1.0),
            AnnotationScale::Unit => (0.0, 1.0),
        }
    }
}

/// One annotator's trace, sampled at 25 Hz from t = 0.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AnnotationStream {
    annotator_id: String,
    values: Vec<f64>,
    dimension: AffectDimension,
    scale: AnnotationScale,
}

impl AnnotationStream {
    pub fn new(
        annotator_id: impl Into<String>,
        values: Vec<f64>,
        dimension: AffectDimension,
        scale: AnnotationScale,
    ) -> Result<Self> {
        let (lo, hi) = scale.bounds();
        if let Some(&value) = values.iter().find(|v| !(**v >= lo && **v <= hi)) {
            return Err(Error::OutOfRange { value, lo, hi });
        }
        Ok(Self {
            annotator_id: annotator_id.into(),
            values,
            dimension,
            scale,
        })
    }

    pub fn annotator_id(&self) -> &str {
        &self.annotator_id
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dimension(&self) -> AffectDimension {
        self.dimension
    }

    pub fn scale(&self) -> AnnotationScale {
        self.scale
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.values.len() as f64 / ANNOTATION_RATE_HZ
    }

    /// The same trace mapped to `[0, 1]`.
    pub fn to_unit(&self) -> Result<Self> {
        let values = match self.scale {
            AnnotationScale::Unit => self.values.clone(),
            AnnotationScale::Raw => self
                .values
                .iter()
                .map(|&v| rescale_unit(v))
                .collect::<Result<_>>()?,
        };
        Ok(Self {
            values,
            scale: AnnotationScale::Unit,
            ..self.clone()
        })
    }
}

/// Maps `[-1, 1]` to `[0, 1]` as `(v + 1) / 2`.
pub fn rescale_unit(v: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&v) {
        return Err(Error::OutOfRange {
            value: v,
            lo: -1.0,
            hi: 1.0,
        });
    }
    Ok((v + 1.0) / 2.0)
}

/// Maps a `[-3, 3]` Likert score to `[0, 1]` as `(v + 3) / 6`.
pub fn likert_to_unit(v: f64) -> Result<f64> {
    if !(-3.0..=3.0).contains(&v) {
        return Err(Error::OutOfRange {
            value: v,
            lo: -3.0,
            hi: 3.0,
        });
    }
    Ok((v + 3.0) / 6.0)
}

/// Pointwise mean of equally long streams of one dimension and scale.
pub fn average_annotators(streams: &[AnnotationStream]) -> Result<AnnotationStream> {
    let first = streams.first().ok_or(Error::Empty)?;
    for s in &streams[1..] {
        if s.len() != first.len() {
            return Err(Error::LengthMismatch {
                left: first.len(),
                right: s.len(),
            });
        }
        if s.dimension != first.dimension || s.scale != first.scale {
            return Err(Error::InvalidParameter(
                "annotation streams differ in dimension or scale".into(),
            ));
        }
    }
    let mut column = Vec::with_capacity(streams.len());
    let values = (0..first.len())
        .map(|i| {
            column.clear();
            column.extend(streams.iter().map(|s| s.values[i]));
            math::sorted_mean(&mut column)
        })
        .collect();
    Ok(AnnotationStream {
        annotator_id: "consensus".into(),
        values,
        dimension: first.dimension,
        scale: first.scale,
    })
}

/// Mean unit-scale value of the samples in `[start, start + len)`; 75 samples
/// for a 3 s clip. Raw streams are rescaled first.
pub fn clip_label(consensus: &AnnotationStream, clip_start_s: f64, clip_len_s: f64) -> Result<f64> {
    let end_s = clip_start_s + clip_len_s;
    let out = Error::WindowOutOfStream {
        start_s: clip_start_s,
        end_s,
    };
    if !(clip_start_s >= 0.0 && clip_len_s > 0.0 && end_s.is_finite()) {
        return Err(out);
    }
    let first = math::round(clip_start_s * ANNOTATION_RATE_HZ) as usize;
    let count = math::round(clip_len_s * ANNOTATION_RATE_HZ) as usize;
    if count == 0 || first + count > consensus.len() {
        return Err(out);
    }
    let window = &consensus.values[first..first + count];
    let sum: f64 = match consensus.scale {
        AnnotationScale::Unit => window.iter().sum(),
        AnnotationScale::Raw => window
            .iter()
            .map(|&v| rescale_unit(v))
            .sum::<Result<f64>>()?,
    };
    Ok(sum / count as f64)
}
