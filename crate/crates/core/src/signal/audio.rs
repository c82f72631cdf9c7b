use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Mono PCM samples (nominally in `[-1, 1]`) with their sample rate.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioClip {
    samples: Vec<f64>,
    sample_rate_hz: u32,
    source_id: String,
}

impl AudioClip {
    pub fn new(
        samples: Vec<f64>,
        sample_rate_hz: u32,
        source_id: impl Into<String>,
    ) -> Result<Self> {
        if sample_rate_hz == 0 {
            return Err(Error::InvalidParameter(
                "sample rate must be positive".into(),
            ));
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidParameter("samples must be finite".into()));
        }
        Ok(Self {
            samples,
            sample_rate_hz,
            source_id: source_id.into(),
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate_hz(&self) -> u32 {
        self.sample_rate_hz
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz as f64
    }

    /// Copy of the clip with every sample multiplied by `gain`.
    pub fn scaled(&self, gain: f64) -> Self {
        Self {
            samples: self.samples.iter().map(|s| s * gain).collect(),
            sample_rate_hz: self.sample_rate_hz,
            source_id: self.source_id.clone(),
        }
    }

    /// Sub-clip `[start, end)` in samples, tagged with `source_id`.
    pub fn slice(&self, start: usize, end: usize, source_id: impl Into<String>) -> Self {
        Self {
            samples: self.samples[start..end].to_vec(),
            sample_rate_hz: self.sample_rate_hz,
            source_id: source_id.into(),
        }
    }

    /// Fails unless the clip lasts at least `min_s` seconds at a speech-capable rate.
    pub(crate) fn require_speech(&self, min_s: f64) -> Result<()> {
        if self.sample_rate_hz < 8000 {
            return Err(Error::SampleRateTooLow(self.sample_rate_hz));
        }
        let needed = crate::math::ceil(min_s * self.sample_rate_hz as f64) as usize;
        if self.samples.len() < needed {
            return Err(Error::ClipTooShort {
                needed,
                got: self.samples.len(),
            });
        }
        Ok(())
    }
}
