//! Speech-biomarker features: glottal, phonation, articulation and prosody
//! families, concatenated in that order into the cognitive-state vector.

mod analysis;
mod articulation;
mod glottal;
mod phonation;
pub(crate) mod prosody;

use alloc::vec::Vec;

pub use analysis::{detect_pulses, PulseRun, SpeechAnalysis, MIN_CLIP_S};
pub use articulation::ArticulationFeatures;
pub use glottal::GlottalFeatures;
pub use phonation::PhonationFeatures;
pub use prosody::ProsodyFeatures;

use crate::error::{Error, Result};
use crate::segments::SegmentMap;
use crate::signal::{AudioClip, SignalConfig};

pub const GLOTTAL_DIM: usize = 4;
pub const PHONATION_DIM: usize = 5;
pub const ARTICULATION_DIM: usize = 6;
pub const PROSODY_DIM: usize = 9;
/// Length of the cognitive-state vector.
pub const COGNITIVE_DIM: usize = GLOTTAL_DIM + PHONATION_DIM + ARTICULATION_DIM + PROSODY_DIM;

pub fn extract_phonation(clip: &AudioClip) -> Result<PhonationFeatures> {
    let cfg = SignalConfig::default();
    Ok(phonation::phonation(&SpeechAnalysis::new(clip, &cfg)?))
}

pub fn extract_prosody(clip: &AudioClip) -> Result<ProsodyFeatures> {
    let cfg = SignalConfig::default();
    Ok(prosody::prosody(&SpeechAnalysis::new(clip, &cfg)?))
}

/// Fails with [`Error::NoVoicedFrames`] when no voiced frame yields two formants.
pub fn extract_articulation(clip: &AudioClip) -> Result<ArticulationFeatures> {
    let cfg = SignalConfig::default();
    articulation::articulation(&SpeechAnalysis::new(clip, &cfg)?)
}

pub fn extract_glottal(clip: &AudioClip) -> Result<GlottalFeatures> {
    let cfg = SignalConfig::default();
    Ok(glottal::glottal(&SpeechAnalysis::new(clip, &cfg)?))
}

/// All four families computed from one shared analysis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CognitiveFeatures {
    pub glottal: GlottalFeatures,
    pub phonation: PhonationFeatures,
    /// `None` when no voiced frame produced two formants.
    pub articulation: Option<ArticulationFeatures>,
    pub prosody: ProsodyFeatures,
}

impl CognitiveFeatures {
    pub fn from_analysis(analysis: &SpeechAnalysis<'_>) -> Self {
        Self {
            glottal: glottal::glottal(analysis),
            phonation: phonation::phonation(analysis),
            articulation: match articulation::articulation(analysis) {
                Ok(a) => Some(a),
                Err(Error::NoVoicedFrames) => None,
                Err(e) => unreachable!("articulation only reports NoVoicedFrames: {e}"),
            },
            prosody: prosody::prosody(analysis),
        }
    }

    pub fn to_vector(&self) -> CognitiveVector {
        let mut values = Vec::with_capacity(COGNITIVE_DIM);
        values.extend(self.glottal.to_vec());
        values.extend(self.phonation.to_vec());
        values.extend(self.articulation.unwrap_or_default().to_vec());
        values.extend(self.prosody.to_vec());
        CognitiveVector { values }
    }
}

/// h_C = concat(f_g, f_ph, f_ar, f_pr).
#[derive(Debug, Clone, PartialEq)]
pub struct CognitiveVector {
    pub values: Vec<f64>,
}

impl CognitiveVector {
    pub fn segment_map() -> SegmentMap {
        SegmentMap::from_lengths(&[
            ("f_g", GLOTTAL_DIM),
            ("f_ph", PHONATION_DIM),
            ("f_ar", ARTICULATION_DIM),
            ("f_pr", PROSODY_DIM),
        ])
    }

    /// Column names in vector order.
    pub fn feature_names() -> Vec<&'static str> {
        let mut names = Vec::with_capacity(COGNITIVE_DIM);
        names.extend(GlottalFeatures::NAMES);
        names.extend(PhonationFeatures::NAMES);
        names.extend(ArticulationFeatures::NAMES);
        names.extend(ProsodyFeatures::NAMES);
        names
    }
}

pub fn cognitive_vector(clip: &AudioClip) -> Result<CognitiveVector> {
    cognitive_vector_with(clip, &SignalConfig::default())
}

pub fn cognitive_vector_with(clip: &AudioClip, config: &SignalConfig) -> Result<CognitiveVector> {
    let analysis = SpeechAnalysis::new(clip, config)?;
    Ok(CognitiveFeatures::from_analysis(&analysis).to_vector())
}
